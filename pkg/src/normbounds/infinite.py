"""Infinite discrete distributions with rigorously enclosed norms and entropies.

Two families are supported:

* ``Geometric(r)``: ``p_i = (1 - r) r**(i-1)``; norms and entropy in closed form.
* ``Zipf(s)``: ``p_i = i**-s / zeta(s)``; zeta-type series are summed directly
  up to ``N - 1`` and the tail ``sum_{i >= N} f(i)`` is enclosed by the
  trapezoid rule on ``[N, inf)``.

Tail enclosure: if ``f`` is decreasing, convex, with ``f''`` nonincreasing on
``[N, inf)``, the trapezoid error on ``[i, i+1]`` is ``f''(xi_i) / 12``, so::

    I(N) + f(N)/2  <=  sum_{i >= N} f(i)  <=  I(N) + f(N)/2 + (f''(N) - f'(N)) / 12

with ``I(N) = int_N^inf f``.  The width decays like ``N**(-a-1)`` rather than
``N**(1-a)`` for the plain integral test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .bounds import Bracket
from .core import LN2, SigmaLike, as_sigma, validate_distribution
from .exceptions import Divergent, DomainError, NoConvergence

EPS = np.finfo(float).eps
# float rounding in pow/log/exp is a few ulps per term; 8 covers it with margin
ROUNDING_ULPS = 8.0
N_START = 64
N_MAX = 1 << 24


@dataclass(frozen=True)
class TailBoundedValue:
    """``value`` with a guaranteed enclosure half-width ``error_bound``."""

    value: float
    error_bound: float

    @property
    def lo(self) -> float:
        return self.value - self.error_bound

    @property
    def hi(self) -> float:
        return self.value + self.error_bound

    @classmethod
    def from_interval(cls, lo: float, hi: float) -> "TailBoundedValue":
        lo, hi = float(lo), float(hi)
        mid = 0.5 * (lo + hi)
        # widen by an ulp so rounding of mid does not shrink the interval
        half = 0.5 * (hi - lo) + EPS * max(abs(lo), abs(hi))
        return cls(mid, float(half))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Geometric:
    ratio: float

    def __post_init__(self):
        if not (0.0 < self.ratio < 1.0):
            raise DomainError(f"geometric ratio must lie in (0, 1), got {self.ratio!r}")

    kind = "geometric"

    @property
    def parameter(self) -> float:
        return self.ratio

    def probabilities(self, n: int) -> np.ndarray:
        i = np.arange(n, dtype=float)
        return (1.0 - self.ratio) * self.ratio ** i


@dataclass(frozen=True)
class Zipf:
    exponent: float

    def __post_init__(self):
        if not (self.exponent > 1.0) or math.isinf(self.exponent):
            raise DomainError(f"zipf exponent must exceed 1, got {self.exponent!r}")

    kind = "zipf"

    @property
    def parameter(self) -> float:
        return self.exponent

    def probabilities(self, n: int) -> np.ndarray:
        z = _zeta(self.exponent, 1e-13)
        i = np.arange(1, n + 1, dtype=float)
        return i ** -self.exponent / z.value


ParametricFamily = Union[Geometric, Zipf]

FAMILIES = {"geometric": Geometric, "zipf": Zipf}


def make_family(kind: str, parameter: float) -> ParametricFamily:
    try:
        return FAMILIES[kind.lower()](float(parameter))
    except KeyError:
        raise DomainError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None


def is_in_ell_sigma(family: ParametricFamily, sigma: SigmaLike) -> bool:
    """Whether ``sum_i p_i**sigma`` converges."""
    sp = as_sigma(sigma)
    if isinstance(family, Geometric):
        return True
    return family.exponent * sp.sigma > 1.0


# -- series enclosures ------------------------------------------------------

def _series_interval(head_terms: Callable[[np.ndarray], np.ndarray],
                     f, df, d2f, integral, n: int) -> tuple[float, float]:
    """Enclose ``sum_{i >= 1} f(i)`` given the trapezoid-tail ingredients at ``n``."""
    i = np.arange(1, n, dtype=float)
    head = math.fsum(head_terms(i))
    base = integral(n) + 0.5 * f(n)
    width = (d2f(n) - df(n)) / 12.0
    slop = ROUNDING_ULPS * EPS * (abs(head) + abs(base) + abs(width))
    return head + base - slop, head + base + width + slop


def _power_sum_interval(a: float, n: int) -> tuple[float, float]:
    """Enclosure of ``zeta(a) = sum i**-a``, ``a > 1``."""
    return _series_interval(
        lambda i: i ** -a,
        lambda x: x ** -a,
        lambda x: -a * x ** (-a - 1.0),
        lambda x: a * (a + 1.0) * x ** (-a - 2.0),
        lambda x: x ** (1.0 - a) / (a - 1.0),
        n,
    )


def _log_power_sum_min_n(s: float) -> int:
    # f = x**-s ln x is decreasing, convex, with f''' <= 0 beyond this point
    t = max(1.0 / s,
            (2 * s + 1) / (s * (s + 1)),
            (3 * s * s + 6 * s + 2) / (s * (s + 1) * (s + 2)))
    return int(math.ceil(math.exp(t))) + 1


def _log_power_sum_interval(s: float, n: int) -> tuple[float, float]:
    """Enclosure of ``-zeta'(s) = sum i**-s ln i``, ``s > 1``."""
    n = max(n, _log_power_sum_min_n(s))
    return _series_interval(
        lambda i: i ** -s * np.log(i),
        lambda x: x ** -s * math.log(x),
        lambda x: x ** (-s - 1.0) * (1.0 - s * math.log(x)),
        lambda x: x ** (-s - 2.0) * (s * (s + 1.0) * math.log(x) - (2.0 * s + 1.0)),
        lambda x: x ** (1.0 - s) * (math.log(x) / (s - 1.0) + 1.0 / (s - 1.0) ** 2),
        n,
    )


def _refine(build: Callable[[int], tuple[float, float]], abs_tol: float) -> TailBoundedValue:
    """Grow the truncation point until the enclosure half-width meets ``abs_tol``."""
    if not abs_tol > 0:
        raise DomainError(f"abs_tol must be positive, got {abs_tol!r}")
    n = N_START
    while True:
        enc = TailBoundedValue.from_interval(*build(n))
        if enc.error_bound <= abs_tol:
            return enc
        if n >= N_MAX:
            raise NoConvergence(
                f"enclosure half-width {enc.error_bound:.3g} > {abs_tol:.3g} at N={n}")
        n *= 4


def _zeta(a: float, abs_tol: float) -> TailBoundedValue:
    return _refine(lambda n: _power_sum_interval(a, n), abs_tol)


# -- norms ------------------------------------------------------------------

def _norm_excess(family: ParametricFamily, q: float, abs_tol: float) -> TailBoundedValue:
    """Enclosure of ``||p||_q - 1``."""
    if isinstance(family, Geometric):
        r = family.ratio
        ex = math.expm1(math.log1p(-r) - math.log1p(-(r ** q)) / q)
        return TailBoundedValue(ex, float(ROUNDING_ULPS * EPS * (1.0 + abs(ex))))
    s = family.exponent
    a = s * q
    if a <= 1.0:
        raise Divergent(f"sum i**-{a:g} diverges: zipf({s:g}) is not in l^{q:g}")

    def build(n):
        za_lo, za_hi = _power_sum_interval(a, n)
        zs_lo, zs_hi = _power_sum_interval(s, n)
        return (za_lo ** (1.0 / q) / zs_hi - 1.0,
                za_hi ** (1.0 / q) / zs_lo - 1.0)

    return _refine(build, abs_tol)


def family_norm(family: ParametricFamily, q: float, abs_tol: float = 1e-10) -> TailBoundedValue:
    """Enclosure of the quasinorm ``||p||_q`` of an infinite family.

    Raises
    ------
    Divergent
        If the defining series diverges (zipf with ``s * q <= 1``).
    """
    q = float(q)
    if not q > 0:
        raise DomainError(f"q must be positive, got {q!r}")
    ex = _norm_excess(family, q, abs_tol)
    return TailBoundedValue(1.0 + ex.value, float(ex.error_bound + EPS * (1.0 + abs(ex.value))))


def family_entropy(family: ParametricFamily, abs_tol: float = 1e-10) -> TailBoundedValue:
    """Enclosure of the Shannon entropy (bits) of an infinite family."""
    if isinstance(family, Geometric):
        r = family.ratio
        h = (-math.log1p(-r) - r * math.log(r) / (1.0 - r)) / LN2
        return TailBoundedValue(h, float(ROUNDING_ULPS * EPS * (1.0 + abs(h))))
    s = family.exponent

    # S = log2 Z(s) + s * T(s) / (Z(s) ln 2), T(s) = sum i**-s ln i
    def build(n):
        z_lo, z_hi = _power_sum_interval(s, n)
        t_lo, t_hi = _log_power_sum_interval(s, n)
        return (math.log2(z_lo) + s * t_lo / (z_hi * LN2),
                math.log2(z_hi) + s * t_hi / (z_lo * LN2))

    return _refine(build, abs_tol)


def family_bracket(family: ParametricFamily, sigma: SigmaLike, abs_tol: float = 1e-10) -> Bracket:
    """Norm bracket for an infinite family, endpoints widened outward.

    Raises
    ------
    Divergent
        If ``p`` is not in ``l^sigma``; the upper bound would be infinite.
    """
    sp = as_sigma(sigma)
    if not is_in_ell_sigma(family, sp):
        raise Divergent(f"{family!r} is not in l^{sp.sigma:g}; the entropy bound diverges")
    norm_tol = abs_tol / sp.constant
    up = _norm_excess(family, sp.sigma, norm_tol)
    lo = _norm_excess(family, 2.0 - sp.sigma, norm_tol)
    upper = float(sp.constant * up.hi * (1.0 + 2 * EPS))
    lower = max(0.0, float(-sp.constant * lo.hi * (1.0 - 2 * EPS)))
    return Bracket(lower=min(lower, upper), upper=upper, sigma=sp)


def truncate(family: ParametricFamily, n: int):
    """First ``n`` probabilities renormalized into a finite ``Distribution``."""
    probs = family.probabilities(n)
    return validate_distribution(probs / math.fsum(probs))
