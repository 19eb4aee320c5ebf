"""Closed-form color bounds and numeric checks of the factorial inequalities.

Factorials and tail probabilities are exact (``int``/``Fraction``).  Bounds
that involve logarithms are evaluated in double precision; ``log`` is
base 2 throughout.  Every function raises :class:`DomainError` when its
parameters fall outside the range where the inequality is stated.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError

LOG2_E = math.log2(math.e)
# exponent in the factorial growth bound: 1 - log(e)/e ~ 0.469262
GROWTH_EXPONENT = 1.0 - LOG2_E / math.e
GROWTH_EXPONENT_DISPLAY = 0.469
# smallest admissible constant in the random-order expectation bounds, ~4.26201
C_MIN = 2 * math.e / (math.e - LOG2_E)


def _require(cond, message):
    if not cond:
        raise DomainError(message)


def _int(name, value, lo):
    _require(isinstance(value, int) and not isinstance(value, bool), f"{name} must be an integer, got {value!r}")
    _require(value >= lo, f"{name} must be >= {lo}, got {value}")


def first_fit_tail(n: int, ell: int) -> Fraction:
    """Upper bound n^2 / ell! on P[some vertex gets color >= ell] (FirstFit, random order, trees)."""
    _int("n", n, 1)
    _int("ell", ell, 1)
    return Fraction(n * n, math.factorial(ell))


def parity_tail(k: int, ell: int) -> Fraction:
    """Upper bound k^2 / floor((ell-3)/4)! for ParityFirstFit in random order, ell >= 7."""
    _int("k", k, 0)
    _int("ell", ell, 7)
    return Fraction(k * k, math.factorial((ell - 3) // 4))


def first_fit_mean(n: int, c: float = C_MIN) -> float:
    """c log n / log log n + 3, the bound on E[colors] of FirstFit in random order."""
    _int("n", n, 3)
    _require(c >= C_MIN - 1e-9, f"c must be >= 2e/(e - log e) = {C_MIN:.6f}, got {c}")
    ln = math.log2(n)
    return c * ln / math.log2(ln) + 3


def parity_first_fit_mean(k: int, c: float = C_MIN) -> float:
    """4c log k / log log k + 71 for ParityFirstFit in random order (needs k >= 3)."""
    _int("k", k, 3)
    _require(c >= C_MIN - 1e-9, f"c must be >= 2e/(e - log e) = {C_MIN:.6f}, got {c}")
    lk = math.log2(k)
    return 4 * c * lk / math.log2(lk) + 71


def first_fit_any_order(n: int) -> float:
    """log n + 1 colors for FirstFit on any tree in any order."""
    _int("n", n, 1)
    return math.log2(n) + 1


def advice_first_fit_errors(k: int) -> float:
    _int("k", k, 1)
    return math.log2(k) + 3


def advice_first_fit_size(n: int) -> float:
    """log n + 3 - log 3; also the number of colors the adversary forces on n vertices."""
    _int("n", n, 1)
    return math.log2(n) + 3 - math.log2(3)


def advice_cbip_errors(k: int) -> float:
    _int("k", k, 1)
    return 2 * math.log2(k) + 4


def advice_cbip_size(n: int) -> float:
    _int("n", n, 1500)
    return 2 * math.log2(n) - 1.64


def advice_cbip_size_all(n: int) -> float:
    """2 log(n+2) + 3 - 2 log 5, valid for every n."""
    _int("n", n, 1)
    return 2 * math.log2(n + 2) + 3 - 2 * math.log2(5)


def cbip_size(n: int) -> float:
    _int("n", n, 5770)
    return 2 * math.log2(n) - 1.999


def cbip_size_all(n: int) -> float:
    """2 log(n+2) - 2, valid for every n."""
    _int("n", n, 1)
    return 2 * math.log2(n + 2) - 2


def adversary_tree_size(ell: int) -> int:
    _int("ell", ell, 3)
    return 3 * 2 ** (ell - 3)


# -- numeric checks -------------------------------------------------------------

@dataclass(frozen=True)
class TailSumCheck:
    s: int
    partial: Fraction  # sum_{s <= l <= last} 1/l!
    last: int
    tail: Fraction  # rigorous bound on sum_{l > last} 1/l!
    bound: Fraction  # 2 / s!

    @property
    def upper(self) -> Fraction:
        return self.partial + self.tail

    @property
    def holds(self) -> bool:
        return self.upper <= self.bound


def factorial_tail_sum(s: int, extra_terms: int = 40) -> TailSumCheck:
    """Check sum_{l >= s} 1/l! <= 2/s! with exact rationals.

    The terms past ``last = s + extra_terms`` are bounded by the geometric
    series 1/(last+1)! * (last+2)/(last+1).
    """
    _int("s", s, 1)
    last = s + extra_terms
    partial = Fraction(0)
    f = math.factorial(s)
    for ell in range(s, last + 1):
        partial += Fraction(1, f)
        f *= ell + 1
    # f == (last + 1)! here
    tail = Fraction(last + 2, f * (last + 1))
    return TailSumCheck(s, partial, last, tail, Fraction(2, math.factorial(s)))


@dataclass(frozen=True)
class GrowthCheck:
    c: float
    n: int
    ell: int
    log2_factorial: float
    exponent_exact: float  # c * (1 - log e / e) * log n
    exponent_display: float  # 0.469 * c * log n

    @property
    def holds(self) -> bool:
        return self.log2_factorial >= self.exponent_exact >= self.exponent_display

    def to_dict(self):
        return asdict(self) | {"holds": self.holds}


def min_growth_ell(c: float, n: int) -> int:
    ln = math.log2(n)
    return math.ceil(c * ln / math.log2(ln))


def factorial_growth(c: float, n: int, ell: int | None = None) -> GrowthCheck:
    """Compare ell! with n^(c (1 - log e / e)) and n^(0.469 c) at 50 digits.

    Requires c >= e and ell >= c log n / log log n; ``ell`` defaults to the
    smallest admissible value.
    """
    _require(c >= math.e, f"c must be >= e, got {c}")
    _int("n", n, 3)
    with mpmath.workdps(50):
        ln = mpmath.log(n, 2)
        threshold = c * ln / mpmath.log(ln, 2)
        if ell is None:
            ell = int(mpmath.ceil(threshold))
        _int("ell", ell, 1)
        _require(ell >= threshold, f"ell must be >= c log n / log log n = {float(threshold):.4f}, got {ell}")
        lf = mpmath.log(mpmath.mpf(math.factorial(ell)), 2)
        expo = c * (1 - mpmath.log(mpmath.e, 2) / mpmath.e) * ln
        disp = mpmath.mpf("0.469") * c * ln
        return GrowthCheck(c, n, ell, float(lf), float(expo), float(disp))


BOUNDS = {
    "first-fit-tail": (first_fit_tail, ("n", "ell")),
    "parity-tail": (parity_tail, ("k", "ell")),
    "first-fit-mean": (first_fit_mean, ("n",)),
    "parity-first-fit-mean": (parity_first_fit_mean, ("k",)),
    "first-fit-any-order": (first_fit_any_order, ("n",)),
    "advice-first-fit-errors": (advice_first_fit_errors, ("k",)),
    "advice-first-fit-size": (advice_first_fit_size, ("n",)),
    "advice-cbip-errors": (advice_cbip_errors, ("k",)),
    "advice-cbip-size": (advice_cbip_size, ("n",)),
    "advice-cbip-size-all": (advice_cbip_size_all, ("n",)),
    "cbip-size": (cbip_size, ("n",)),
    "cbip-size-all": (cbip_size_all, ("n",)),
    "adversary-tree-size": (adversary_tree_size, ("ell",)),
    "factorial-tail-sum": (factorial_tail_sum, ("s",)),
    "factorial-growth": (factorial_growth, ("c", "n")),
}


def evaluate(kind: str, **params):
    """Evaluate bound ``kind`` with the named parameters it takes."""
    try:
        fn, names = BOUNDS[kind]
    except KeyError:
        raise DomainError(f"unknown bound {kind!r}; choose from {', '.join(BOUNDS)}") from None
    missing = [p for p in names if params.get(p) is None]
    _require(not missing, f"bound {kind} needs parameter(s) {', '.join(missing)}")
    extra = {p: params[p] for p in ("ell", "c") if p in params and p not in names and params[p] is not None}
    if kind == "factorial-growth" and "ell" in extra:
        return fn(params["c"], params["n"], extra["ell"])
    kwargs = {p: params[p] for p in names}
    if "c" in params and params["c"] is not None and kind in ("first-fit-mean", "parity-first-fit-mean"):
        kwargs["c"] = params["c"]
    return fn(**kwargs)
