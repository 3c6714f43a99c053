"""Tables: finite maps from free-monoid words to scalar coefficients.

A word is a tuple of letter tokens; ``()`` is the empty word. Columns that are
absent are really absent: a table never stores a filler zero.
"""
from __future__ import annotations

import math
import os
from collections.abc import Mapping
from typing import Iterable, Optional

from .errors import (
    DuplicateIndexError,
    InvalidLetterError,
    InvalidParameterError,
    MissingNeutralError,
    ParseError,
    ResourceError,
    UndefinedLetterError,
)
from .scalars import SUM, BinaryLaw, SemiringSpec, close, format_value, parse_value

Word = tuple

EPS = "@eps"
DEFAULT_COLUMN_BUDGET = 10**6
_RESERVED_CHARS = set(".,{}[]")


def column_budget() -> int:
    """Current column budget, overridable through TABSEM_COLUMN_BUDGET."""
    raw = os.environ.get("TABSEM_COLUMN_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_COLUMN_BUDGET
    try:
        budget = int(raw)
    except ValueError:
        raise InvalidParameterError(f"TABSEM_COLUMN_BUDGET must be an integer, got {raw!r}") from None
    if budget < 1:
        raise InvalidParameterError("TABSEM_COLUMN_BUDGET must be positive")
    return budget


# ---------------------------------------------------------------------------
# letters and words

def check_letter(token: str) -> str:
    if not isinstance(token, str) or not token:
        raise InvalidLetterError(f"letters are non-empty strings, got {token!r}")
    if token == EPS:
        raise InvalidLetterError(f"{EPS} is reserved for the empty word")
    if token.startswith("#"):
        raise InvalidLetterError(f"letters may not start with '#': {token!r}")
    for ch in token:
        if ch.isspace() or ch in _RESERVED_CHARS or not ch.isprintable():
            raise InvalidLetterError(f"bad character {ch!r} in letter {token!r}")
    return token


def word_key(w: Word):
    """Canonical order: by length, then lexicographically on letter tokens."""
    return (len(w), w)


def parse_word(text: str) -> Word:
    """``@eps`` is the empty word, ``a.b`` joins letters, ``ab`` means ``a.b``.

    A single multi-character letter is written with a trailing dot (``e0.``).
    """
    token = text.strip()
    if token == EPS:
        return ()
    if not token:
        raise ParseError("empty word token (write @eps for the empty word)")
    if "." in token:
        parts = token.split(".")
        if parts[-1] == "" and len(parts) == 2:
            parts = parts[:1]
        letters = tuple(parts)
    else:
        letters = tuple(token)
    try:
        for letter in letters:
            check_letter(letter)
    except InvalidLetterError as exc:
        raise ParseError(f"bad word {token!r}: {exc}") from None
    return letters


def format_word(w: Word) -> str:
    if not w:
        return EPS
    if len(w) == 1 and len(w[0]) > 1:
        return w[0] + "."
    return ".".join(w)


def as_word(w) -> Word:
    """Accept a tuple of letters or a string in the text syntax."""
    if isinstance(w, str):
        return parse_word(w)
    w = tuple(w)
    for letter in w:
        check_letter(letter)
    return w


# ---------------------------------------------------------------------------
# the table type

class Table(Mapping):
    """Immutable finite map Word -> float. Iteration follows canonical word order."""

    __slots__ = ("_cols",)

    def __init__(self, columns=None):
        cols = {}
        if columns:
            items = columns.items() if isinstance(columns, Mapping) else columns
            for w, v in items:
                w = as_word(w)
                if w in cols:
                    raise DuplicateIndexError(f"duplicate index {format_word(w)}")
                cols[w] = float(v)
        self._cols = cols

    @classmethod
    def _trusted(cls, cols: dict) -> "Table":
        t = cls.__new__(cls)
        t._cols = cols
        return t

    def __getitem__(self, w):
        if isinstance(w, str):
            w = parse_word(w)
        return self._cols[tuple(w)]

    def __contains__(self, w):
        if isinstance(w, str):
            w = parse_word(w)
        return tuple(w) in self._cols

    def __iter__(self):
        return iter(sorted(self._cols, key=word_key))

    def __len__(self):
        return len(self._cols)

    def __eq__(self, other):
        if isinstance(other, Table):
            return self._cols == other._cols
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._cols.items()))

    def __repr__(self):
        body = ", ".join(f"{format_word(w)}: {format_value(v)}" for w, v in self.items())
        return "Table{" + body + "}"

    def indices(self) -> frozenset:
        return frozenset(self._cols)


EMPTY = Table()


def table_from_columns(pairs: Iterable, merge: Optional[BinaryLaw] = None) -> Table:
    cols = {}
    for w, v in pairs:
        w = as_word(w)
        v = float(v)
        if w in cols:
            if merge is None:
                raise DuplicateIndexError(f"duplicate index {format_word(w)}")
            v = merge(cols[w], v)
        cols[w] = v
    return Table._trusted(cols)


def pointwise(t1: Table, t2: Table, law: BinaryLaw) -> Table:
    """Union of the index sets; shared words combine as ``law(t1[w], t2[w])``."""
    cols = dict(t1._cols)
    for w, v in t2._cols.items():
        cols[w] = law(cols[w], v) if w in cols else v
    return Table._trusted(cols)


def _require_semiring_add(law: BinaryLaw) -> None:
    if not (law.commutative and law.associative):
        raise InvalidParameterError(f"{law.name} must be commutative and associative here")


def convolution(t1: Table, t2: Table, spec: SemiringSpec, budget: Optional[int] = None) -> Table:
    """Cauchy product: result[w] is the sum over factorizations w = uv of t1[u] * t2[v]."""
    _require_semiring_add(spec.add)
    if budget is None:
        budget = column_budget()
    add, mul = spec.add, spec.mul
    cols = {}
    for u, p in t1._cols.items():
        for v, q in t2._cols.items():
            w = u + v
            val = mul(p, q)
            if w in cols:
                cols[w] = add(cols[w], val)
            else:
                cols[w] = val
                if len(cols) > budget:
                    raise ResourceError(f"convolution exceeds the column budget of {budget}")
    return Table._trusted(cols)


def mass(t: Table, add: BinaryLaw) -> float:
    _require_semiring_add(add)
    if not t:
        if add.neutral is None:
            raise MissingNeutralError(f"mass of an empty table needs a neutral for {add.name}")
        return add.neutral
    values = iter(t.values())
    total = next(values)
    for v in values:
        total = add(total, v)
    return total


def decompose(t: Table) -> list:
    return [Table._trusted({w: v}) for w, v in t.items()]


def map_indices(t: Table, h: Mapping, add: BinaryLaw) -> Table:
    """Push ``t`` through the monoid morphism extending the letter map ``h``.

    Words that land on the same image are merged with ``add``. Mapping every
    letter to the empty word collapses ``t`` to ``{eps: mass(t)}``.
    """
    _require_semiring_add(add)
    images = {letter: as_word(img) for letter, img in h.items()}
    cols = {}
    for w, v in t._cols.items():
        try:
            image = tuple(x for letter in w for x in images[letter])
        except KeyError as exc:
            raise UndefinedLetterError(f"morphism does not cover letter {exc.args[0]!r}") from None
        cols[image] = add(cols[image], v) if image in cols else v
    return Table._trusted(cols)


def erase_alphabet(t: Table) -> dict:
    """The letter map sending every letter of ``t`` to the empty word."""
    return {letter: () for w in t._cols for letter in w}


def prune(t: Table, zero: float) -> Table:
    return Table._trusted({w: v for w, v in t._cols.items() if v != zero})


def table_equal(t1: Table, t2: Table, tol: float = 0.0) -> bool:
    if tol < 0:
        raise InvalidParameterError("tol must be >= 0")
    if t1._cols.keys() != t2._cols.keys():
        return False
    return all(close(v, t2._cols[w], tol) for w, v in t1._cols.items())


# ---------------------------------------------------------------------------
# text format

def parse_table(text: str, merge: Optional[BinaryLaw] = None) -> Table:
    """One ``word<TAB>value`` column per line; ``#`` lines and blanks are skipped."""
    pairs = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'word value', got {stripped!r}", lineno)
        try:
            w = parse_word(fields[0])
            v = parse_value(fields[1])
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        if merge is None and w in seen:
            raise DuplicateIndexError(f"line {lineno}: duplicate index {format_word(w)}")
        seen.add(w)
        pairs.append((w, v))
    return table_from_columns(pairs, merge)


def render_table(t: Table) -> str:
    return "".join(f"{format_word(w)}\t{format_value(v)}\n" for w, v in t.items())


def is_stochastic(t: Table, tol: float = 1e-12) -> bool:
    """Nonnegative coefficients with total mass 1 under ordinary addition."""
    return all(v >= 0 for v in t.values()) and bool(t) and math.isclose(mass(t, SUM), 1.0, abs_tol=tol)
