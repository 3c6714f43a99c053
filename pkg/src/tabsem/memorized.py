"""The memorized semiring: pairs [argmin address set, minimal cost].

Its laws are the ones induced by ``phi`` from (min, +)-tables: ``mem_plus``
keeps the cheaper side and merges ties, ``mem_times`` concatenates address
sets and adds costs.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ParseError, ResourceError
from .scalars import INF, format_value, parse_value
from .tables import Table, as_word, column_budget, format_word, parse_word, word_key


@dataclass(frozen=True)
class MemorizedValue:
    addresses: frozenset
    cost: float

    def __post_init__(self):
        addresses = frozenset(as_word(w) for w in self.addresses)
        if math.isnan(self.cost) or self.cost < 0:
            raise DomainError(f"memorized cost must lie in [0, inf], got {self.cost!r}")
        if self.cost == INF:
            # [A, inf] carries no information: normalize to the neutral
            addresses = frozenset()
        elif not addresses:
            raise DomainError("a finite cost needs at least one address")
        object.__setattr__(self, "addresses", addresses)
        object.__setattr__(self, "cost", float(self.cost))

    def sorted_addresses(self) -> list:
        return sorted(self.addresses, key=word_key)

    def __str__(self):
        return format_memorized(self)


ZERO = MemorizedValue(frozenset(), INF)
ONE = MemorizedValue(frozenset({()}), 0.0)


def mem(addresses, cost) -> MemorizedValue:
    """Shorthand constructor; ``addresses`` may hold word strings like ``"a.b"``."""
    return MemorizedValue(frozenset(as_word(w) for w in addresses), cost)


def mem_plus(m1: MemorizedValue, m2: MemorizedValue, tie_epsilon: float = 0.0) -> MemorizedValue:
    """Cheaper side wins; costs within ``tie_epsilon`` tie and merge their addresses.

    With ``tie_epsilon > 0`` the merged cost is the smaller of the two.
    """
    if m1.cost == INF:
        return m2
    if m2.cost == INF:
        return m1
    if abs(m1.cost - m2.cost) <= tie_epsilon:
        return MemorizedValue(m1.addresses | m2.addresses, min(m1.cost, m2.cost))
    return m1 if m1.cost < m2.cost else m2


def mem_times(m1: MemorizedValue, m2: MemorizedValue, budget: Optional[int] = None) -> MemorizedValue:
    if m1.cost == INF or m2.cost == INF:
        return ZERO
    if budget is None:
        budget = column_budget()
    if len(m1.addresses) * len(m2.addresses) > budget:
        addresses = set()
        for u in m1.addresses:
            for v in m2.addresses:
                addresses.add(u + v)
                if len(addresses) > budget:
                    raise ResourceError(f"address set exceeds the column budget of {budget}")
    else:
        addresses = {u + v for u in m1.addresses for v in m2.addresses}
    return MemorizedValue(frozenset(addresses), m1.cost + m2.cost)


def phi(t: Table, tie_epsilon: float = 0.0) -> MemorizedValue:
    """Image of a (min, +)-table: the words where the minimum is reached, and that minimum."""
    if not t:
        return ZERO
    if any(v < 0 for v in t.values()):
        raise DomainError("phi needs coefficients in [0, inf]")
    low = min(t.values())
    if low == INF:
        return ZERO
    return MemorizedValue(frozenset(w for w in t.indices() if t[w] - low <= tie_epsilon), low)


def format_memorized(m: MemorizedValue) -> str:
    words = ",".join(format_word(w) for w in m.sorted_addresses())
    return f"[{{{words}}}, {format_value(m.cost)}]"


_MEM_RE = re.compile(r"^\s*\[\s*\{([^{}]*)\}\s*,\s*(\S+?)\s*\]\s*$")


def parse_memorized(text: str) -> MemorizedValue:
    match = _MEM_RE.match(text)
    if not match:
        raise ParseError(f"expected '[{{w1,w2,...}}, cost]', got {text!r}")
    body, cost = match.groups()
    words = [parse_word(tok) for tok in body.split(",")] if body.strip() else []
    try:
        return MemorizedValue(frozenset(words), parse_value(cost))
    except DomainError as exc:
        raise ParseError(str(exc)) from None
