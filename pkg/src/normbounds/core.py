"""Scalar log inequalities, optimal constants, quasinorms and exact entropy.

All logarithms are base 2 except inside :func:`optimal_constant`.  Powers of
probabilities are evaluated as ``exp(q * ln x)`` with ``x == 0`` mapped to 0,
and sums go through :func:`math.fsum` so that invariant checks at the 1e-12
level are not polluted by accumulation error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .exceptions import (
    DomainError,
    EmptyDistribution,
    InvalidSigma,
    NegativeMass,
    NotNormalized,
)

SIGMA_MIN = 1e-6
SIGMA_MAX = 1.0 - 1e-6
SUM_TOL = 1e-9

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SigmaParam:
    """Inequality-family parameter ``sigma`` in (0, 1).

    ``constant`` is the optimal constant ``1 / (ln 2 * (1 - sigma))`` shared
    by both sides of the logarithm inequality.
    """

    sigma: float
    constant: float = field(init=False, repr=False)

    def __post_init__(self):
        s = float(self.sigma)
        if not (SIGMA_MIN <= s <= SIGMA_MAX):
            raise InvalidSigma(
                f"sigma={self.sigma!r} outside [{SIGMA_MIN}, {SIGMA_MAX}]")
        object.__setattr__(self, "sigma", s)
        object.__setattr__(self, "constant", 1.0 / (LN2 * (1.0 - s)))

    def __float__(self):
        return self.sigma


SigmaLike = Union[SigmaParam, float]


def as_sigma(sigma: SigmaLike) -> SigmaParam:
    if isinstance(sigma, SigmaParam):
        return sigma
    return SigmaParam(float(sigma))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Finite probability vector, validated and renormalized.

    Construct through :func:`validate_distribution`; the ``probs`` array is
    read-only.
    """

    probs: np.ndarray

    def __len__(self):
        return self.probs.shape[0]

    def __iter__(self):
        return iter(self.probs.tolist())

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash(self.probs.tobytes())

    def __repr__(self):
        return f"Distribution({np.array2string(self.probs, threshold=8)})"


DistributionLike = Union[Distribution, "np.typing.ArrayLike"]


def validate_distribution(raw, tol: float = SUM_TOL) -> Distribution:
    """Validate ``raw`` as a probability vector.

    Entries in ``[-tol, 0)`` are clamped to zero and the result is divided by
    its exactly rounded sum.

    Raises
    ------
    EmptyDistribution
        ``raw`` has no entries.
    NegativeMass
        Some entry is below ``-tol`` (or is not finite).
    NotNormalized
        The entries do not sum to 1 within ``tol``.
    """
    if isinstance(raw, Distribution):
        return raw
    arr = np.array(raw, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyDistribution("distribution has no entries")
    if not np.all(np.isfinite(arr)):
        raise NegativeMass("distribution has non-finite entries")
    if np.any(arr < -tol):
        i = int(np.argmin(arr))
        raise NegativeMass(f"entry {i} = {arr[i]!r} is negative")
    total = math.fsum(arr)
    if abs(total - 1.0) > tol:
        raise NotNormalized(f"entries sum to {total!r}, not 1")
    arr[arr < 0] = 0.0
    arr /= math.fsum(arr)
    arr.setflags(write=False)
    return Distribution(arr)


def as_distribution(p: DistributionLike) -> Distribution:
    return p if isinstance(p, Distribution) else validate_distribution(p)


def optimal_constant(sigma: SigmaLike) -> float:
    """Return ``1 / (ln 2 * (1 - sigma))``."""
    return as_sigma(sigma).constant


def _ln(x):
    """Natural log with ``ln 0 = -inf`` and no warnings."""
    with np.errstate(divide="ignore"):
        return np.log(x)


def _check_unit_interval(x, *, open_left=False):
    a = np.asarray(x, dtype=float)
    bad = (a < 0) | (a > 1) | np.isnan(a)
    if open_left:
        bad |= a == 0
    if np.any(bad):
        interval = "(0, 1]" if open_left else "[0, 1]"
        raise DomainError(f"x must lie in {interval}")
    return a


def _scalar_or_array(out, x):
    return float(out) if np.ndim(x) == 0 else out


def neg_log_lower(x, sigma: SigmaLike):
    """Lower bound ``C(sigma) * (1 - x**(1 - sigma))`` for ``-log2(x)``.

    Accepts scalars or arrays with entries in [0, 1].
    """
    sp = as_sigma(sigma)
    a = _check_unit_interval(x)
    with np.errstate(invalid="ignore"):
        out = -sp.constant * np.expm1((1.0 - sp.sigma) * _ln(a))
    return _scalar_or_array(out, x)


def neg_log_upper(x, sigma: SigmaLike):
    """Upper bound ``C(sigma) * (x**(sigma - 1) - 1)`` for ``-log2(x)``.

    ``x = 0`` is rejected since the bound is infinite there.
    """
    sp = as_sigma(sigma)
    a = _check_unit_interval(x, open_left=True)
    out = sp.constant * np.expm1((sp.sigma - 1.0) * np.log(a))
    return _scalar_or_array(out, x)


def xlog_lower(x, sigma: SigmaLike):
    """``C(sigma) * (x - x**(2 - sigma))``, a lower bound for ``-x log2 x``."""
    sp = as_sigma(sigma)
    a = _check_unit_interval(x)
    with np.errstate(invalid="ignore"):
        out = np.where(a > 0, -sp.constant * a * np.expm1((1.0 - sp.sigma) * _ln(a)), 0.0)
    return _scalar_or_array(out, x)


def xlog_upper(x, sigma: SigmaLike):
    """``C(sigma) * (x**sigma - x)``, an upper bound for ``-x log2 x``."""
    sp = as_sigma(sigma)
    a = _check_unit_interval(x)
    with np.errstate(invalid="ignore", over="ignore"):
        out = np.where(a > 0, sp.constant * a * np.expm1((sp.sigma - 1.0) * _ln(a)), 0.0)
    return _scalar_or_array(out, x)


def _nonnegative_vector(v) -> np.ndarray:
    arr = np.asarray(v.probs if isinstance(v, Distribution) else v, dtype=float).ravel()
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("quasinorm requires nonnegative entries")
    return arr


def log_power_sum(v, q: float) -> float:
    """Return ``ln sum_i v_i**q`` over the nonzero entries (``-inf`` if none)."""
    arr = _nonnegative_vector(v)
    nz = arr[arr > 0]
    if nz.size == 0:
        return -math.inf
    lv = np.log(nz)
    # factor out the largest term so exp() cannot overflow or flush to zero
    m = q * lv.max()
    return m + math.log(math.fsum(np.exp(q * lv - m)))


def log_power_sum_unit(p: Distribution, q: float) -> float:
    """``ln sum p_i**q`` for a normalized distribution, via log1p.

    Uses ``sum p**q - 1 = sum p * expm1((q-1) ln p)``, which keeps full
    relative accuracy when ``q`` is close to 1.
    """
    nz = p.probs[p.probs > 0]
    excess = math.fsum(nz * np.expm1((q - 1.0) * np.log(nz)))
    return math.log1p(excess)


def quasinorm(v, q: float) -> float:
    """Return ``(sum_i v_i**q) ** (1/q)`` for a nonnegative vector.

    Zero entries are skipped; the all-zero vector has norm 0.
    """
    q = float(q)
    if not (q > 0) or math.isinf(q):
        raise DomainError(f"quasinorm exponent must be in (0, inf), got {q!r}")
    lps = log_power_sum(v, q)
    if lps == -math.inf:
        return 0.0
    return math.exp(lps / q)


def shannon_entropy(p: DistributionLike) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    dist = as_distribution(p)
    nz = dist.probs[dist.probs > 0]
    h = -math.fsum(nz * np.log2(nz))
    return h if h > 0 else 0.0
