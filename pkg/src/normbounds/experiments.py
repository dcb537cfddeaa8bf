"""Batch evaluation of the entropy brackets on random distributions.

Every record draws from its own generator seeded by ``(seed, index)``, so a
run is reproducible regardless of how many worker threads evaluate it.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence, Union

import numpy as np

from .bounds import diff_upper_bound, entropy_bracket
from .core import Distribution, SigmaLike, SigmaParam, as_sigma, shannon_entropy, validate_distribution
from .exceptions import DomainError, EmptyInput

MODES = ("bounds", "difference")
SAMPLERS = ("flat", "spread")
# concentration range of the "spread" sampler, as log10(alpha)
SPREAD_LOG10_ALPHA = (-3.0, 1.0)
VIOLATION_SLACK = 1e-10


@dataclass(frozen=True)
class ExperimentConfig:
    num_distributions: int = 500
    support_size: int = 100
    sigma: SigmaParam = SigmaParam(0.9)
    seed: int = 42
    mode: str = "bounds"
    sampler: str = "flat"
    n_jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sigma", as_sigma(self.sigma))
        if self.num_distributions < 1:
            raise DomainError("num_distributions must be positive")
        if self.support_size < 1:
            raise DomainError("support_size must be positive")
        if not (0 <= self.seed < 2 ** 64):
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}")
        if self.sampler not in SAMPLERS:
            raise DomainError(f"sampler must be one of {SAMPLERS}")
        if self.n_jobs < 1:
            raise DomainError("n_jobs must be positive")


@dataclass(frozen=True)
class BoundRecord:
    index: int
    entropy: float
    lower: float
    upper: float
    abs_err_lower: float
    abs_err_upper: float
    rel_err_lower: Optional[float]
    rel_err_upper: Optional[float]

    def violates(self, slack: float = VIOLATION_SLACK) -> bool:
        tol = slack * max(1.0, self.entropy)
        return not (self.lower - tol <= self.entropy <= self.upper + tol)


@dataclass(frozen=True)
class DiffRecord:
    index: int
    true_diff: float
    upper_bound: float
    abs_err: float
    rel_err: Optional[float]

    def violates(self, slack: float = VIOLATION_SLACK) -> bool:
        return self.upper_bound < self.true_diff - slack * max(1.0, self.true_diff)


Record = Union[BoundRecord, DiffRecord]

BOUND_COLUMNS = tuple(f.name for f in fields(BoundRecord))
DIFF_COLUMNS = tuple(f.name for f in fields(DiffRecord))


def record_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def sample_simplex(n: int, rng: np.random.Generator) -> Distribution:
    """Uniform point on the probability simplex (flat Dirichlet).

    Normalizes ``n`` independent standard exponentials by their sum.
    """
    if n < 1:
        raise DomainError("n must be positive")
    x = rng.standard_exponential(n)
    return validate_distribution(x / math.fsum(x), tol=1e-12)


def sample_spread(n: int, rng: np.random.Generator) -> Distribution:
    """Dirichlet draw with a log-uniform random concentration.

    Small concentrations give nearly degenerate distributions, large ones
    nearly uniform, so entropies cover roughly ``[0, log2 n]``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    alpha = 10.0 ** rng.uniform(*SPREAD_LOG10_ALPHA)
    x = rng.dirichlet(np.full(n, alpha))
    return validate_distribution(x / math.fsum(x), tol=1e-12)


_SAMPLER_FUNCS = {"flat": sample_simplex, "spread": sample_spread}


def _rel(err: float, ref: float) -> Optional[float]:
    return err / ref if ref > 0 else None


def bound_record(index: int, p: Distribution, sigma: SigmaLike) -> BoundRecord:
    h = shannon_entropy(p)
    b = entropy_bracket(p, sigma)
    lo_err = h - b.lower
    up_err = b.upper - h
    return BoundRecord(index, h, b.lower, b.upper, lo_err, up_err,
                       _rel(lo_err, h), _rel(up_err, h))


def difference_record(index: int, p: Distribution, q: Distribution, sigma: SigmaLike) -> DiffRecord:
    """Record for one pair, reordered so that ``S(p) >= S(q)``."""
    hp, hq = shannon_entropy(p), shannon_entropy(q)
    if hp < hq:
        p, q, hp, hq = q, p, hq, hp
    diff = hp - hq
    ub = diff_upper_bound(p, q, sigma)
    err = ub - diff
    return DiffRecord(index, diff, ub, err, _rel(err, diff))


def _run(cfg: ExperimentConfig, one) -> list:
    idx = range(cfg.num_distributions)
    if cfg.n_jobs == 1:
        return [one(i) for i in idx]
    with ThreadPoolExecutor(max_workers=cfg.n_jobs) as pool:
        return list(pool.map(one, idx))


def run_bounds_experiment(cfg: ExperimentConfig) -> list[BoundRecord]:
    sample = _SAMPLER_FUNCS[cfg.sampler]

    def one(i):
        rng = record_rng(cfg.seed, i)
        return bound_record(i, sample(cfg.support_size, rng), cfg.sigma)

    return _run(cfg, one)


def run_difference_experiment(cfg: ExperimentConfig) -> list[DiffRecord]:
    sample = _SAMPLER_FUNCS[cfg.sampler]

    def one(i):
        rng = record_rng(cfg.seed, i)
        p = sample(cfg.support_size, rng)
        q = sample(cfg.support_size, rng)
        return difference_record(i, p, q, cfg.sigma)

    return _run(cfg, one)


def run_experiment(cfg: ExperimentConfig) -> list[Record]:
    if cfg.mode == "bounds":
        return run_bounds_experiment(cfg)
    return run_difference_experiment(cfg)


def _error_columns(rec: Record) -> tuple[str, ...]:
    if isinstance(rec, BoundRecord):
        return BOUND_COLUMNS[4:]
    return DIFF_COLUMNS[3:]


def summarize(records: Sequence[Record]) -> dict:
    """Min/mean/max of each error column and the invariant violation count.

    Relative errors that are absent (zero reference) are left out of their
    column's statistics.
    """
    if not records:
        raise EmptyInput("no records to summarize")
    out = {"count": len(records),
           "violations": sum(r.violates() for r in records)}
    for col in _error_columns(records[0]):
        vals = [getattr(r, col) for r in records if getattr(r, col) is not None]
        if vals:
            out[col] = {"min": min(vals), "mean": math.fsum(vals) / len(vals), "max": max(vals)}
        else:
            out[col] = {"min": None, "mean": None, "max": None}
    return out


def record_as_dict(rec: Record) -> dict:
    return asdict(rec)
