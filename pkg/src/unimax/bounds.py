"""Fair-binomial machinery and the probability bounds for the top score.

Scores in a random n-player tournament are (dependent) Binomial(n-1, 1/2)
variables.  Everything here is built from the point mass
b(m, j) = C(m, j) / 2^m and the upper tail B(m, k) = P(Bin(m, 1/2) > k),
each available in two modes:

* ``exact``    -- rationals with power-of-two denominators, no tolerance;
* ``logspace`` -- floats accurate to ~1e-12 relative error even for m in the
  millions, using a saddle-point log-pmf (Stirling-error form) and a
  mode-outward tail summation, so no special-function library is needed.

On top of that sit the threshold t just below the typical maximum score,
its standardized form x, the asymptotic shapes of b and B at t, the two
lower-tail bounds for P(max < t), the mean/variance of the number of
players scoring above t, the probability two given players tie at a height
h, the expected number of tied high pairs with its closed-form bound, the
union upper bound for P(max > t'), and the concentration center for the
maximum.  ``bounds_report`` evaluates all of them at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, NamedTuple

from .core import game_count

Mode = Literal["exact", "logspace"]

LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)
SQRT_4PI = math.sqrt(4.0 * math.pi)

__all__ = [
    "ThresholdParams",
    "Threshold",
    "AsymptoticForms",
    "LowerTailBounds",
    "PairSumBound",
    "UpperTailBound",
    "BoundsReport",
    "binom_pmf",
    "binom_tail",
    "threshold",
    "asym_b",
    "asym_B",
    "asym_forms",
    "huber_lower_bound",
    "ey",
    "var_y",
    "pair_prob",
    "ew",
    "upper_tail_bound",
    "concentration_center",
    "bounds_report",
]


# ---------------------------------------------------------------------------
# point mass and tail
# ---------------------------------------------------------------------------

def _stirlerr(z: float) -> float:
    """log(z!) minus its Stirling approximation (z log z - z + log sqrt(2 pi z))."""
    if z < 16:
        return math.lgamma(z + 1.0) - (z + 0.5) * math.log(z) + z - LN_SQRT_2PI
    w = 1.0 / (z * z)
    if z >= 500:
        poly = 1.0 / 12.0 - w / 360.0
    elif z >= 80:
        poly = 1.0 / 12.0 - (1.0 / 360.0 - w / 1260.0) * w
    elif z >= 35:
        poly = 1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - w / 1680.0) * w) * w
    else:
        poly = 1.0 / 12.0 - (
            1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - w / 1188.0) * w) * w
        ) * w
    return poly / z


def _log_pmf(m: int, j: int) -> float:
    """Natural log of C(m, j) / 2^m, accurate to a few ulps at any m."""
    if j == 0 or j == m:
        return -m * math.log(2.0)
    # split relative to the mean so the two log1p arguments stay small near
    # the center, where cancellation would otherwise eat the accuracy
    d = j - 0.5 * m
    dev = j * math.log1p(2.0 * d / m) + (m - j) * math.log1p(-2.0 * d / m)
    return (
        _stirlerr(m) - _stirlerr(j) - _stirlerr(m - j)
        + 0.5 * math.log(m / (2.0 * math.pi * j * (m - j)))
        - dev
    )


def _check_pmf_args(m: int, j: int) -> None:
    if m < 0:
        raise ValueError(f"trial count must be >= 0, got {m}")
    if not 0 <= j <= m:
        raise ValueError(f"j={j} out of range [0, {m}]")


def binom_pmf(m: int, j: int, mode: Mode = "exact") -> Fraction | float:
    """P(Bin(m, 1/2) = j): exact rational or a ~1e-12-accurate float."""
    _check_pmf_args(m, j)
    if mode == "exact":
        return Fraction(math.comb(m, j), 1 << m)
    if mode == "logspace":
        return math.exp(_log_pmf(m, j))
    raise ValueError(f"unknown mode {mode!r}")


def _tail_float(m: int, k: int) -> float:
    if k <= -1:
        return 1.0
    if k >= m:
        return 0.0
    first = k + 1
    if 2 * first <= m:
        # summing the big side loses accuracy and time; use symmetry
        return 1.0 - _tail_float(m, m - first)
    # terms decrease from j = first on (it is past the mode); fsum is exact
    term = math.exp(_log_pmf(m, first))
    terms = [term]
    total = term
    for j in range(first, m):
        term *= (m - j) / (j + 1.0)
        terms.append(term)
        total += term
        if term < total * 1e-19:
            break
    return math.fsum(terms)


@lru_cache(maxsize=16)
def _comb_suffix(m: int) -> tuple[int, ...]:
    """suffix[j] = sum of C(m, i) for i >= j, for j in 0..m+1."""
    suffix = [0] * (m + 2)
    coeff = 1  # C(m, m)
    for j in range(m, -1, -1):
        suffix[j] = suffix[j + 1] + coeff
        coeff = coeff * j // (m - j + 1)
    return tuple(suffix)


def binom_tail(m: int, k: int, mode: Mode = "exact") -> Fraction | float:
    """P(Bin(m, 1/2) > k) for -1 <= k <= m (k = -1 gives 1, k = m gives 0)."""
    if m < 0:
        raise ValueError(f"trial count must be >= 0, got {m}")
    if not -1 <= k <= m:
        raise ValueError(f"k={k} out of range [-1, {m}]")
    if mode == "exact":
        return Fraction(_comb_suffix(m)[k + 1], 1 << m)
    if mode == "logspace":
        return _tail_float(m, k)
    raise ValueError(f"unknown mode {mode!r}")


def _tail_clamped(m: int, k: int, mode: Mode) -> Fraction | float:
    """Tail extended by 0 above m and 1 below -1 (for derived formulas)."""
    k = max(-1, min(k, m))
    return binom_tail(m, k, mode)


def _pmf_clamped(m: int, j: int, mode: Mode) -> Fraction | float:
    zero = Fraction(0) if mode == "exact" else 0.0
    return binom_pmf(m, j, mode) if 0 <= j <= m else zero


# ---------------------------------------------------------------------------
# threshold for the top score
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdParams:
    """Inputs for the near-maximum score threshold.

    ``sign=+1`` gives the integer threshold t (standardized form uses
    +epsilon and the result is rounded up); ``sign=-1`` gives the real
    companion threshold t' (-epsilon, no rounding) used for the upper tail.
    """

    n: int
    epsilon: float = 0.5
    sign: int = +1

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"need n >= 3 so log(log(n-1)) is defined, got {self.n}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie strictly in (0, 1), got {self.epsilon}")
        if self.sign not in (+1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


class Threshold(NamedTuple):
    x: float
    t: int | float


def threshold(params: ThresholdParams) -> Threshold:
    """Standardized height x and threshold t for the given parameters.

    x = sqrt(2 log(n-1) - (1 +/- eps) log(log(n-1))) and
    t = (n-1)/2 + x sqrt((n-1)/4), rounded up only for sign=+1.  Raises a
    domain error when the expression under the root is negative.
    """
    n, eps, sign = params.n, params.epsilon, params.sign
    log_m = math.log(n - 1)
    x_sq = 2.0 * log_m - (1.0 + sign * eps) * math.log(log_m)
    if x_sq < 0.0:
        raise ValueError(
            f"threshold undefined: 2 log(n-1) - (1{'+' if sign > 0 else '-'}"
            f"{eps}) log(log(n-1)) = {x_sq:.6g} < 0 at n={n}"
        )
    x = math.sqrt(x_sq)
    center = (n - 1) / 2.0
    spread = math.sqrt((n - 1) / 4.0)
    raw = center + x * spread
    return Threshold(x, math.ceil(raw) if sign > 0 else raw)


# ---------------------------------------------------------------------------
# asymptotic shapes at the threshold
# ---------------------------------------------------------------------------

class AsymptoticForms(NamedTuple):
    """Both displayed shapes for b and B at the threshold.

    ``pmf_gauss``/``tail_mills`` keep the standardized height x explicit;
    ``pmf_closed``/``tail_closed`` substitute x's definition to leave only
    powers of log(n-1).  The pmf pair is an identity; the tail pair differs
    by a factor x / sqrt(2 log(n-1)) that only slowly approaches 1.
    """

    pmf_gauss: float
    pmf_closed: float
    tail_mills: float
    tail_closed: float


def asym_forms(n: int, epsilon: float = 0.5) -> AsymptoticForms:
    x, _ = threshold(ThresholdParams(n, epsilon, +1))
    m = n - 1
    log_m = math.log(m)
    peak = math.exp(-0.5 * x * x)
    return AsymptoticForms(
        pmf_gauss=math.sqrt(2.0 / (math.pi * m)) * peak,
        pmf_closed=math.sqrt(2.0) * log_m ** ((1.0 + epsilon) / 2.0)
        / math.sqrt(math.pi * m**3),
        tail_mills=peak / (SQRT_2PI * x),
        tail_closed=log_m ** (epsilon / 2.0) / (SQRT_4PI * m),
    )


def asym_b(n: int, epsilon: float = 0.5) -> float:
    """Asymptotic point mass at the threshold: sqrt(2) log(n-1)^((1+eps)/2) / sqrt(pi (n-1)^3)."""
    return asym_forms(n, epsilon).pmf_closed


def asym_B(n: int, epsilon: float = 0.5) -> float:
    """Asymptotic tail at the threshold: log(n-1)^(eps/2) / (sqrt(4 pi) (n-1))."""
    return asym_forms(n, epsilon).tail_closed


# ---------------------------------------------------------------------------
# bounds and moments
# ---------------------------------------------------------------------------

class LowerTailBounds(NamedTuple):
    """Two upper bounds for P(max score < t), tightest first."""

    product_bound: float
    exp_bound: float


def huber_lower_bound(n: int, epsilon: float = 0.5) -> LowerTailBounds:
    """P(max < t) <= (1 - B(n-1, t))^n <= exp(-n B(n-1, t)).

    The first step is the joint lower-tail product inequality applied to all
    n scores at the common threshold; the second is 1 - c <= e^(-c).
    """
    _, t = threshold(ThresholdParams(n, epsilon, +1))
    tail = _tail_float(n - 1, t)
    return LowerTailBounds((1.0 - tail) ** n, math.exp(-n * tail))


def ey(n: int, t: int, mode: Mode = "exact") -> Fraction | float:
    """Mean number of players with score above t: n * B(n-1, t)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 0 <= t <= n - 1:
        raise ValueError(f"t={t} out of range [0, {n - 1}]")
    return n * binom_tail(n - 1, t, mode)


def var_y(n: int, t: int, mode: Mode = "exact") -> Fraction | float:
    """Variance of the number of players with score above t.

    Two players' scores against the other n-2 are independent; conditioning
    on their head-to-head game gives
    P(s_u > t, s_v > t) = B(n-2, t) B(n-2, t-1), and with the tail halving
    identity B(n-1, t) = (B(n-2, t) + B(n-2, t-1)) / 2 the variance
    simplifies to E - n B(n-2, t) B(n-2, t-1) - n^2 b(n-2, t)^2 / 4, which
    never exceeds the mean E.
    """
    e = ey(n, t, mode)
    big = _tail_clamped(n - 2, t, mode) * _tail_clamped(n - 2, t - 1, mode)
    pmf = _pmf_clamped(n - 2, t, mode)
    quarter = Fraction(1, 4) if mode == "exact" else 0.25
    return e - n * big - quarter * n * n * pmf * pmf


def pair_prob(n: int, h: int, mode: Mode = "exact") -> Fraction | float:
    """P(two given players both score exactly h): C(n-2, h-1) C(n-2, h) / 4^(n-2).

    One of the two wins their head-to-head game, so their scores against the
    remaining n-2 players (independent variables) must land on h-1 and h.
    Always at most b(n-1, h)^2.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 <= h <= n - 1:
        raise ValueError(f"h={h} out of range [0, {n - 1}]")
    if mode == "exact":
        return Fraction(math.comb(n - 2, h - 1) * math.comb(n - 2, h), 1 << (2 * (n - 2)))
    if h == 0 or h == n - 1:
        return 0.0
    return math.exp(_log_pmf(n - 2, h - 1) + _log_pmf(n - 2, h))


class PairSumBound(NamedTuple):
    """Expected tied-above-threshold pairs: exact sum and closed-form bound."""

    exact_sum: float
    upper_bound: float


def ew(n: int, epsilon: float = 0.5) -> PairSumBound:
    """E(number of ordered pairs tied at a common height above t), bounded.

    exact_sum is n(n-1) times the sum of the pair-tie probabilities over
    heights h = t+1 .. n-1; upper_bound is the closed form
    n(n-1) b(n-1, t) B(n-1, t), which dominates it term by term.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    _, t = threshold(ThresholdParams(n, epsilon, +1))
    terms = []
    for h in range(t + 1, n):
        p = pair_prob(n, h, "logspace")
        terms.append(p)
        if p and p < terms[0] * 1e-19:
            break
    scale = n * (n - 1)
    total = scale * math.fsum(terms)
    bound = scale * math.exp(_log_pmf(n - 1, t)) * _tail_float(n - 1, t) if t <= n - 1 else 0.0
    return PairSumBound(total, bound)


class UpperTailBound(NamedTuple):
    """Union bound for P(max score > t') at the real-valued threshold t'.

    The tail of an integer score at a non-integer height is ambiguous by
    one, so both integer readings are reported.  ``bound_floor``
    (n * B(n-1, floor(t'))) is the safe one: max > t' is the same event as
    max > floor(t') when t' is not an integer.  ``asymptote`` is the
    log(n-1)^(-eps/2) scale this bound follows.
    """

    t_prime: float
    bound_floor: float
    bound_ceil: float
    asymptote: float


def upper_tail_bound(n: int, epsilon: float = 0.5) -> UpperTailBound:
    """P(max > t') <= n B(n-1, t') via the union bound, both integer readings."""
    _, t_prime = threshold(ThresholdParams(n, epsilon, -1))
    m = n - 1
    lo = min(math.floor(t_prime), m)
    hi = min(math.ceil(t_prime), m)
    return UpperTailBound(
        t_prime=t_prime,
        bound_floor=n * _tail_float(m, lo),
        bound_ceil=n * _tail_float(m, hi),
        asymptote=math.log(m) ** (-epsilon / 2.0) * n / (SQRT_4PI * m),
    )


def concentration_center(n: int) -> float:
    """Height the maximum score concentrates around: (n-1)/2 + sqrt((n-1)/4) sqrt(2 log(n-1))."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    m = n - 1
    return m / 2.0 + math.sqrt(m / 4.0) * math.sqrt(2.0 * math.log(m))


# ---------------------------------------------------------------------------
# the combined report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    """Every threshold-related quantity for one (n, epsilon), in float mode.

    ``b_exact``/``B_exact`` are the true finite-n values at the integer
    threshold t (as opposed to the ``*_asym`` shapes); ``ew_exact`` likewise
    is the true pair-tie sum next to its closed-form bound.
    """

    n: int
    epsilon: float
    x: float
    t: int
    b_exact: float
    B_exact: float
    b_asym: float
    B_asym: float
    huber_product_bound: float
    huber_exp_bound: float
    ey: float
    var_y: float
    ew_exact: float
    ew_bound: float
    upper_tail: UpperTailBound
    center: float

    def __post_init__(self) -> None:
        for name in ("b_exact", "B_exact", "huber_product_bound", "huber_exp_bound"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} = {value} is not a probability")
        if self.var_y > self.ey:
            raise ValueError("variance above mean for the over-threshold count")
        if self.huber_exp_bound < self.huber_product_bound:
            raise ValueError("exp bound below product bound")


def bounds_report(n: int, epsilon: float = 0.5) -> BoundsReport:
    """Evaluate all threshold quantities for one (n, epsilon)."""
    x, t = threshold(ThresholdParams(n, epsilon, +1))
    forms = asym_forms(n, epsilon)
    lower = huber_lower_bound(n, epsilon)
    pair_sum = ew(n, epsilon)
    t_for_moments = min(t, n - 1)
    return BoundsReport(
        n=n,
        epsilon=epsilon,
        x=x,
        t=t,
        b_exact=math.exp(_log_pmf(n - 1, t)) if t <= n - 1 else 0.0,
        B_exact=_tail_float(n - 1, min(t, n - 1)),
        b_asym=forms.pmf_closed,
        B_asym=forms.tail_closed,
        huber_product_bound=lower.product_bound,
        huber_exp_bound=lower.exp_bound,
        ey=ey(n, t_for_moments, "logspace"),
        var_y=var_y(n, t_for_moments, "logspace"),
        ew_exact=pair_sum.exact_sum,
        ew_bound=pair_sum.upper_bound,
        upper_tail=upper_tail_bound(n, epsilon),
        center=concentration_center(n),
    )
