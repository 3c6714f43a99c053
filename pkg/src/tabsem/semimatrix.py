"""Square matrices over a semiring carrier, path weights and closure by repeated squaring."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial, reduce
from typing import Any, Callable, NamedTuple, Optional, Sequence

from . import memorized
from .errors import (
    BrokenPathError,
    DimensionMismatchError,
    DuplicateLabelError,
    InvalidParameterError,
    NegativeWeightError,
    NoConvergenceError,
)
from .scalars import SemiringSpec
from .tables import check_letter


@dataclass(frozen=True)
class Carrier:
    """The operations a matrix needs from its entry type.

    ``weight`` optionally projects an entry onto a scalar cost; the closure
    uses it to tell tie growth along zero-weight cycles from divergence.
    """
    name: str
    plus: Callable[[Any, Any], Any] = field(compare=False)
    times: Callable[[Any, Any], Any] = field(compare=False)
    zero: Any = None
    one: Any = None
    idempotent: bool = False
    weight: Optional[Callable[[Any], float]] = field(default=None, compare=False)


def scalar_carrier(spec: SemiringSpec) -> Carrier:
    return Carrier(spec.name, spec.add, spec.mul, spec.zero, spec.one, spec.add.idempotent)


def memorized_carrier(tie_epsilon: float = 0.0, budget: Optional[int] = None) -> Carrier:
    return Carrier(
        "memorized",
        partial(memorized.mem_plus, tie_epsilon=tie_epsilon),
        partial(memorized.mem_times, budget=budget),
        memorized.ZERO,
        memorized.ONE,
        idempotent=True,
        weight=lambda m: m.cost,
    )


class SquareMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n < 1:
            raise DimensionMismatchError("matrix dimension must be >= 1")
        if any(len(r) != n for r in rows):
            raise DimensionMismatchError("matrix is not square")
        self.rows = rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, SquareMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SquareMatrix({[list(r) for r in self.rows]!r})"

    def map(self, f: Callable[[Any], Any]) -> "SquareMatrix":
        return SquareMatrix([[f(x) for x in r] for r in self.rows])


def identity(n: int, carrier: Carrier) -> SquareMatrix:
    if carrier.zero is None or carrier.one is None:
        raise InvalidParameterError(f"{carrier.name} needs both a zero and a one")
    return SquareMatrix([[carrier.one if i == j else carrier.zero for j in range(n)] for i in range(n)])


def mat_add(a: SquareMatrix, b: SquareMatrix, carrier: Carrier) -> SquareMatrix:
    if a.n != b.n:
        raise DimensionMismatchError(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    return SquareMatrix([[carrier.plus(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)])


def mat_mul(a: SquareMatrix, b: SquareMatrix, carrier: Carrier) -> SquareMatrix:
    if a.n != b.n:
        raise DimensionMismatchError(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    plus, times = carrier.plus, carrier.times
    cols = list(zip(*b.rows))
    return SquareMatrix([
        [reduce(plus, (times(x, y) for x, y in zip(row, col))) for col in cols]
        for row in a.rows
    ])


def squaring_bound(n: int) -> int:
    """Squarings after which (I + A)^(2^k) covers every path of at most n - 1 arrows."""
    return math.ceil(math.log2(max(n - 1, 1)))


class Closure(NamedTuple):
    matrix: SquareMatrix
    squarings: int
    stabilized: bool


def _power(b: SquareMatrix, e: int, carrier: Carrier) -> SquareMatrix:
    result = identity(b.n, carrier)
    while e:
        if e & 1:
            result = mat_mul(result, b, carrier)
        e >>= 1
        if e:
            b = mat_mul(b, b, carrier)
    return result


def closure_with_stats(a: SquareMatrix, carrier: Carrier, max_squarings: int = 0) -> Closure:
    """Repeated squaring of I + A, reporting how many squarings were needed.

    ``squarings`` is the k for which B_k = B_{k+1}. When the entries keep
    changing but their ``carrier.weight`` projection is already stable (ties
    growing along zero-weight cycles), the result is (I + A)^(n-1): the sum over
    paths of at most n - 1 arrows, and ``stabilized`` is False.
    """
    if not carrier.idempotent:
        raise InvalidParameterError(f"closure by squaring needs an idempotent sum, {carrier.name} is not")
    b0 = mat_add(identity(a.n, carrier), a, carrier)
    cap = max(squaring_bound(a.n), max_squarings)
    b = b0
    for k in range(cap + 1):
        nxt = mat_mul(b, b, carrier)
        if nxt == b:
            return Closure(b, k, True)
        if k == cap:
            break
        b = nxt
    if carrier.weight is not None and nxt.map(carrier.weight) == b.map(carrier.weight):
        return Closure(_power(b0, a.n - 1, carrier), cap, False)
    raise NoConvergenceError(f"no fixed point after {cap} squarings")


def mat_closure(a: SquareMatrix, carrier: Carrier, max_squarings: int = 0) -> SquareMatrix:
    return closure_with_stats(a, carrier, max_squarings).matrix


# ---------------------------------------------------------------------------
# weighted graphs

@dataclass(frozen=True)
class Arrow:
    tail: str
    head: str
    weight: float
    label: str


@dataclass(frozen=True)
class WeightedGraph:
    states: tuple
    arrows: tuple

    def __post_init__(self):
        states = tuple(self.states)
        arrows = tuple(self.arrows)
        if len(set(states)) != len(states):
            raise InvalidParameterError("states must be distinct")
        known = set(states)
        labels = set()
        for arrow in arrows:
            if arrow.tail not in known or arrow.head not in known:
                raise InvalidParameterError(f"arrow {arrow.label} references an undeclared state")
            if math.isnan(arrow.weight) or arrow.weight < 0:
                raise NegativeWeightError(f"arrow {arrow.label} has weight {arrow.weight!r}")
            check_letter(arrow.label)
            if arrow.label in labels:
                raise DuplicateLabelError(f"label {arrow.label!r} used twice")
            labels.add(arrow.label)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "arrows", arrows)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.states)}


def path_weight(g: WeightedGraph, arrows: Sequence, spec: SemiringSpec) -> tuple:
    """(tail, head, product of weights) of a chain of arrows given by label or Arrow."""
    if not arrows:
        raise BrokenPathError("a path needs at least one arrow")
    chain = [a if isinstance(a, Arrow) else g.arrow(a) for a in arrows]
    for prev, nxt in zip(chain, chain[1:]):
        if prev.head != nxt.tail:
            raise BrokenPathError(f"{prev.label} ends at {prev.head} but {nxt.label} starts at {nxt.tail}")
    weight = reduce(spec.mul, (a.weight for a in chain))
    return chain[0].tail, chain[-1].head, weight


def address_matrix(g: WeightedGraph, carrier: Carrier) -> SquareMatrix:
    """One-arrow matrix: parallel arrows fold with the carrier's plus."""
    if not g.states:
        raise DimensionMismatchError("graph has no states")
    idx = g.index()
    n = len(g.states)
    cells = [[carrier.zero] * n for _ in range(n)]
    for a in g.arrows:
        i, j = idx[a.tail], idx[a.head]
        cells[i][j] = carrier.plus(cells[i][j], memorized.MemorizedValue(frozenset({(a.label,)}), a.weight))
    return SquareMatrix(cells)


def apsp_with_addresses(g: WeightedGraph, tie_epsilon: float = 0.0,
                        budget: Optional[int] = None) -> SquareMatrix:
    """All-pairs shortest distances together with the addresses of every shortest path.

    Entry (i, j) is [label words of all minimum-weight paths i -> j, distance];
    the empty path gives [{eps}, 0] on the diagonal.
    """
    carrier = memorized_carrier(tie_epsilon, budget)
    return mat_closure(address_matrix(g, carrier), carrier)
