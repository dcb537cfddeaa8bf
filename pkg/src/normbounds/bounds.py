"""Entropy brackets, gap bounds and entropy-difference bounds.

For a distribution ``p`` and ``sigma`` in (0, 1), with ``C = C(sigma)``::

    C * (1 - ||p||_{2-sigma})  <=  S(p)  <=  C * (||p||_sigma - 1)

Both sides are evaluated as ``expm1`` of a scaled ``log1p`` power sum, which
avoids the cancellation in ``||p|| - 1`` as ``sigma -> 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (
    SigmaLike,
    SigmaParam,
    as_distribution,
    as_sigma,
    log_power_sum_unit,
)
from .exceptions import InvalidGrid, InvalidSigma


@dataclass(frozen=True)
class Bracket:
    """Interval ``[lower, upper]`` (bits) guaranteed to contain an entropy."""

    lower: float
    upper: float
    sigma: SigmaParam

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


@dataclass(frozen=True)
class DiffBound:
    upper: float
    lower: float
    sigma_upper: SigmaParam
    sigma_lower: Optional[SigmaParam] = None


def _norm_excess(p, q: float) -> float:
    """``||p||_q - 1`` for a distribution, accurate near ``q = 1``."""
    return math.expm1(log_power_sum_unit(p, q) / q)


def entropy_lower_bound(p, sigma: SigmaLike) -> float:
    """``C(sigma) * (1 - ||p||_{2-sigma})``."""
    sp = as_sigma(sigma)
    p = as_distribution(p)
    # + 0.0 turns -0.0 into 0.0 on degenerate input
    return -sp.constant * _norm_excess(p, 2.0 - sp.sigma) + 0.0


def entropy_upper_bound(p, sigma: SigmaLike) -> float:
    """``C(sigma) * (||p||_sigma - 1)``."""
    sp = as_sigma(sigma)
    p = as_distribution(p)
    return sp.constant * _norm_excess(p, sp.sigma)


def entropy_bracket(p, sigma: SigmaLike) -> Bracket:
    sp = as_sigma(sigma)
    p = as_distribution(p)
    lower = entropy_lower_bound(p, sp)
    upper = entropy_upper_bound(p, sp)
    # rounding can invert a bracket of width ~0
    return Bracket(lower=min(lower, upper), upper=upper, sigma=sp)


def bracket_gap(p, sigma: SigmaLike) -> float:
    """``C(sigma) * (||p||_sigma + ||p||_{2-sigma} - 2)``.

    Bounds the absolute error of either bracket endpoint used as an estimate.
    """
    sp = as_sigma(sigma)
    p = as_distribution(p)
    return sp.constant * (_norm_excess(p, sp.sigma) + _norm_excess(p, 2.0 - sp.sigma))


def estimate_entropy(p, sigma: SigmaLike) -> tuple[float, float]:
    """Return ``(midpoint, half_width)`` of the bracket."""
    b = entropy_bracket(p, sigma)
    return b.midpoint, 0.5 * b.gap


def diff_upper_bound(p, q, sigma: SigmaLike) -> float:
    """``C(sigma) * (||p||_sigma + ||q||_{2-sigma} - 2)``.

    An upper bound on ``S(p) - S(q)``; only meaningful when ``S(p) >= S(q)``
    but computed unconditionally.
    """
    return entropy_upper_bound(p, sigma) - entropy_lower_bound(q, sigma)


def diff_lower_bound(p, q, sigma: SigmaLike) -> float:
    """``C(sigma) * (2 - ||p||_{2-sigma} - ||q||_sigma)``, always ``<= S(p) - S(q)``."""
    return entropy_lower_bound(p, sigma) - entropy_upper_bound(q, sigma)


def diff_bound(p, q, sigma: SigmaLike) -> DiffBound:
    sp = as_sigma(sigma)
    p = as_distribution(p)
    q = as_distribution(q)
    return DiffBound(upper=diff_upper_bound(p, q, sp),
                     lower=diff_lower_bound(p, q, sp),
                     sigma_upper=sp, sigma_lower=sp)


def find_sigma_nontrivial(p, q, sigma_grid: Iterable[float]) -> Optional[SigmaParam]:
    """Smallest grid ``sigma`` at which ``diff_lower_bound`` is strictly positive.

    Returns ``None`` when no grid point qualifies.

    Raises
    ------
    InvalidGrid
        If the grid is empty, not strictly ascending, or leaves (0, 1).
    """
    grid = [float(s) for s in sigma_grid]
    if not grid:
        raise InvalidGrid("sigma grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidGrid("sigma grid must be strictly ascending")
    try:
        params = [SigmaParam(s) for s in grid]
    except InvalidSigma as exc:
        raise InvalidGrid(str(exc)) from None
    p = as_distribution(p)
    q = as_distribution(q)
    for sp in params:
        if diff_lower_bound(p, q, sp) > 0:
            return sp
    return None
