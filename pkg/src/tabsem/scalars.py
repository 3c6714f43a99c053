"""Scalar laws on extended reals, named semiring instances and an axiom checker.

Coefficients are plain Python floats; ``math.inf`` and ``-math.inf`` are the
two infinity sentinels.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

from .errors import (
    DomainError,
    IndeterminateFormError,
    InvalidParameterError,
    MissingParameterError,
    ParseError,
    UnknownSemiringError,
)

INF = math.inf

ExtendedReal = float


# ---------------------------------------------------------------------------
# serialization

def format_value(x: float) -> str:
    """Integers print without a decimal point, others as shortest round-trip decimal."""
    if math.isnan(x):
        raise DomainError("nan is not an extended real")
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return repr(float(x))


def parse_value(text: str) -> float:
    token = text.strip()
    try:
        x = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}") from None
    if math.isnan(x):
        raise ParseError(f"nan is not an extended real: {token!r}")
    return x


# ---------------------------------------------------------------------------
# the laws

def law_min(x: float, y: float) -> float:
    return x if x <= y else y


def law_max(x: float, y: float) -> float:
    return x if x >= y else y


def law_sum(x: float, y: float) -> float:
    if math.isinf(x) and math.isinf(y) and x != y:
        raise IndeterminateFormError(f"{format_value(x)} + {format_value(y)}")
    return x + y


def law_prod(x: float, y: float) -> float:
    if (x == 0 and math.isinf(y)) or (y == 0 and math.isinf(x)):
        raise IndeterminateFormError(f"{format_value(x)} * {format_value(y)}")
    return x * y


def _check_base(a: float) -> None:
    if not a > 0 or a == 1 or math.isinf(a):
        raise InvalidParameterError(f"log-sum base must be positive, finite and != 1, got {a!r}")


def law_log_sum(x: float, y: float, a: float) -> float:
    """log_a(a**x + a**y), evaluated without overflow.

    The neutral is -inf for a > 1 and +inf for a < 1 (whichever sends a**x to 0).
    """
    _check_base(a)
    neutral = -INF if a > 1 else INF
    if x == neutral:
        return y
    if y == neutral:
        return x
    if math.isinf(x) or math.isinf(y):
        return -neutral
    d = abs(x - y)
    if a > 1:
        return max(x, y) + math.log1p(a ** -d) / math.log(a)
    return min(x, y) + math.log1p(a ** d) / math.log(a)


def law_holder(x: float, y: float, n: float) -> float:
    if not n >= 1:
        raise InvalidParameterError(f"Hölder exponent must be >= 1, got {n!r}")
    if x < 0 or y < 0:
        raise DomainError(f"Hölder law needs nonnegative arguments, got {x!r}, {y!r}")
    hi, lo = (x, y) if x >= y else (y, x)
    if hi == 0 or lo == 0 or math.isinf(hi):
        return hi
    return hi * (1.0 + (lo / hi) ** n) ** (1.0 / n)


def law_shifted_sum(x: float, y: float) -> float:
    # neutral handled up front: x + 1 - 1 is not always x in floating point
    if y == 1:
        return x
    if x == 1:
        return y
    return x + y - 1


def law_comp_prod(x: float, y: float) -> float:
    if x == 1 or y == 1:
        return 1.0
    return x + y - x * y


def law_or(x: float, y: float) -> float:
    return 1.0 if (x or y) else 0.0


def law_and(x: float, y: float) -> float:
    return 1.0 if (x and y) else 0.0


def law_mean(x: float, y: float) -> float:
    """Arithmetic mean: commutative but not associative."""
    return (x + y) / 2


@dataclass(frozen=True)
class BinaryLaw:
    name: str
    apply: Callable[[float, float], float] = field(compare=False)
    neutral: Optional[float] = None
    commutative: bool = True
    associative: bool = True
    idempotent: bool = False
    params: tuple = ()

    def __call__(self, x, y):
        return self.apply(x, y)

    def __repr__(self):
        return f"BinaryLaw({self.name})"


MIN = BinaryLaw("min", law_min, neutral=INF, idempotent=True)
MAX = BinaryLaw("max", law_max, neutral=0.0, idempotent=True)
SUM = BinaryLaw("sum", law_sum, neutral=0.0)
PROD = BinaryLaw("prod", law_prod, neutral=1.0)
SHIFTED_SUM = BinaryLaw("shifted_sum", law_shifted_sum, neutral=1.0)
COMP_PROD = BinaryLaw("comp_prod", law_comp_prod, neutral=0.0)
OR = BinaryLaw("or", law_or, neutral=0.0, idempotent=True)
AND = BinaryLaw("and", law_and, neutral=1.0, idempotent=True)
MEAN = BinaryLaw("mean", law_mean, neutral=None, associative=False, idempotent=True)


def log_sum_law(a: float) -> BinaryLaw:
    _check_base(a)
    return BinaryLaw(f"log_sum[a={format_value(a)}]", partial(law_log_sum, a=a),
                     neutral=-INF if a > 1 else INF, params=(a,))


def holder_law(n: float) -> BinaryLaw:
    if not n >= 1:
        raise InvalidParameterError(f"Hölder exponent must be >= 1, got {n!r}")
    return BinaryLaw(f"holder[n={format_value(n)}]", partial(law_holder, n=n),
                     neutral=0.0, params=(n,))


# ---------------------------------------------------------------------------
# semiring specs

@dataclass(frozen=True)
class Domain:
    """Interval [lo, hi] the spec's scalars live in.

    ``integral`` makes the sampler draw integers, so that laws built from
    ordinary + and * stay exact; ``points`` replaces the interval by a finite set.
    """
    lo: float
    hi: float
    integral: bool = False
    points: Optional[tuple] = None

    def __contains__(self, x):
        if self.points is not None:
            return x in self.points
        return self.lo <= x <= self.hi

    def sample(self, rng: random.Random) -> float:
        if self.points is not None:
            return rng.choice(self.points)
        lo = max(self.lo, 0.0) if math.isinf(self.lo) else self.lo
        hi = min(self.hi, 100.0) if math.isinf(self.hi) else self.hi
        if self.integral:
            return float(rng.randint(math.ceil(lo), math.floor(hi)))
        return rng.uniform(lo, hi)


UNIT = Domain(0.0, 1.0)
NONNEG = Domain(0.0, INF, integral=True)
REALS = Domain(-INF, INF)


@dataclass(frozen=True)
class SemiringSpec:
    name: str
    add: BinaryLaw
    mul: BinaryLaw
    zero: Optional[float] = None
    one: Optional[float] = None
    domain: Domain = REALS


def semiring_instance(name: str, a: Optional[float] = None, n: Optional[float] = None) -> SemiringSpec:
    if name == "tropical":
        return SemiringSpec("tropical", MIN, SUM, INF, 0.0, NONNEG)
    if name == "counting":
        return SemiringSpec("counting", SUM, PROD, 0.0, 1.0, Domain(0.0, INF, integral=True))
    if name == "fuzzy":
        return SemiringSpec("fuzzy", MAX, BinaryLaw("min", law_min, neutral=1.0, idempotent=True),
                            0.0, 1.0, UNIT)
    if name == "probcomp":
        return SemiringSpec("probcomp", SHIFTED_SUM, COMP_PROD, 1.0, 0.0, UNIT)
    if name == "boolean":
        return SemiringSpec("boolean", OR, AND, 0.0, 1.0, Domain(0.0, 1.0, points=(0.0, 1.0)))
    if name == "log_a":
        if a is None:
            raise MissingParameterError("log_a needs the base a")
        law = log_sum_law(a)
        return SemiringSpec(f"log:a={format_value(a)}", law, SUM, law.neutral, 0.0, REALS)
    if name == "holder_n":
        if n is None:
            raise MissingParameterError("holder_n needs the exponent n")
        return SemiringSpec(f"holder:n={format_value(n)}", holder_law(n), PROD, 0.0, 1.0,
                            Domain(0.0, INF))
    raise UnknownSemiringError(f"unknown semiring {name!r}")


def _split_token(token: str) -> tuple[str, dict]:
    head, _, rest = token.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise InvalidParameterError(f"malformed parameter {item!r} in {token!r}")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise InvalidParameterError(f"parameter {key!r} is not a number in {token!r}") from None
    return head, params


def parse_semiring(token: str) -> SemiringSpec:
    """``tropical``, ``counting``, ``fuzzy``, ``boolean``, ``probcomp``, ``log:a=<real>``, ``holder:n=<real>``."""
    head, params = _split_token(token)
    if head == "log":
        if set(params) - {"a"}:
            raise InvalidParameterError(f"log takes only a=, got {token!r}")
        return semiring_instance("log_a", a=params.get("a"))
    if head == "holder":
        if set(params) - {"n"}:
            raise InvalidParameterError(f"holder takes only n=, got {token!r}")
        return semiring_instance("holder_n", n=params.get("n"))
    if params:
        raise InvalidParameterError(f"{head} takes no parameters")
    if head in ("log_a", "holder_n"):
        raise UnknownSemiringError(f"write {head} as log:a=<real> / holder:n=<real>")
    return semiring_instance(head)


_NAMED_LAWS = {law.name: law for law in (MIN, MAX, SUM, PROD, SHIFTED_SUM, COMP_PROD, OR, AND, MEAN)}


def parse_law(token: str) -> BinaryLaw:
    head, params = _split_token(token)
    if head == "log":
        if "a" not in params:
            raise MissingParameterError("log law needs a=<real>")
        return log_sum_law(params["a"])
    if head == "holder":
        if "n" not in params:
            raise MissingParameterError("holder law needs n=<real>")
        return holder_law(params["n"])
    try:
        return _NAMED_LAWS[head]
    except KeyError:
        raise InvalidParameterError(f"unknown law {token!r}") from None


# ---------------------------------------------------------------------------
# axiom checking

@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    lhs: Optional[float] = None
    rhs: Optional[float] = None

    def __str__(self):
        if self.passed:
            return f"PASS  {self.name}"
        w = ", ".join(format_value(v) for v in self.witness)
        return (f"FAIL  {self.name}  witness=({w})  "
                f"lhs={format_value(self.lhs)}  rhs={format_value(self.rhs)}")


@dataclass
class AxiomReport:
    spec: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __str__(self):
        return "\n".join(str(r) for r in self.results)


def close(a: float, b: float, tol: float) -> bool:
    if a == b:
        return True
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= tol


def _sampler(domain: Domain, specials: tuple, rng: random.Random):
    def draw():
        if specials and rng.random() < 0.1:
            return rng.choice(specials)
        return domain.sample(rng)
    return draw


def check_semiring_axioms(spec: SemiringSpec, samples: int = 1000, seed: int = 0,
                          tol: float = 0.0) -> AxiomReport:
    """Evaluate the semiring identities on random triples from ``spec.domain``.

    Neutral elements are mixed into the draws so that absorbing and
    infinite values are exercised. Returns the first witness per failing axiom.
    """
    if samples < 1:
        raise InvalidParameterError("samples must be >= 1")
    add, mul = spec.add, spec.mul
    axioms = [
        ("associativity of +", lambda x, y, z: (add(x, add(y, z)), add(add(x, y), z))),
        ("commutativity of +", lambda x, y, z: (add(x, y), add(y, x))),
        ("associativity of x", lambda x, y, z: (mul(x, mul(y, z)), mul(mul(x, y), z))),
        ("right distributivity", lambda x, y, z: (mul(add(x, y), z), add(mul(x, z), mul(y, z)))),
        ("left distributivity", lambda x, y, z: (mul(x, add(y, z)), add(mul(x, y), mul(x, z)))),
    ]
    if mul.commutative:
        axioms.append(("commutativity of x", lambda x, y, z: (mul(x, y), mul(y, x))))

    specials = tuple(v for v in (spec.zero, spec.one) if v is not None)
    rng = random.Random(seed)
    draw = _sampler(spec.domain, specials, rng)
    triples = [(draw(), draw(), draw()) for _ in range(samples)]

    results = []
    for name, identity in axioms:
        result = AxiomResult(name, True)
        for t in triples:
            lhs, rhs = identity(*t)
            if not close(lhs, rhs, tol):
                result = AxiomResult(name, False, t, lhs, rhs)
                break
        results.append(result)
    return AxiomReport(spec.name, results)


def check_law(law: BinaryLaw, domain: Domain, samples: int = 1000, seed: int = 0,
              tol: float = 0.0) -> dict:
    """Check a law's declared neutral and flags against sampled behaviour.

    Returns ``{property: witness or None}``; only declared properties are checked.
    """
    rng = random.Random(seed)
    specials = () if law.neutral is None else (law.neutral,)
    draw = _sampler(domain, specials, rng)
    found = {}
    if law.neutral is not None:
        found["neutral"] = None
    if law.commutative:
        found["commutative"] = None
    if law.associative:
        found["associative"] = None
    if law.idempotent:
        found["idempotent"] = None
    for _ in range(samples):
        x, y, z = draw(), draw(), draw()
        checks = {
            "neutral": lambda: close(law(law.neutral, x), x, tol) and close(law(x, law.neutral), x, tol),
            "commutative": lambda: close(law(x, y), law(y, x), tol),
            "associative": lambda: close(law(x, law(y, z)), law(law(x, y), z), tol),
            "idempotent": lambda: close(law(x, x), x, tol),
        }
        for prop in found:
            if found[prop] is None and not checks[prop]():
                found[prop] = (x, y, z)
    return found
