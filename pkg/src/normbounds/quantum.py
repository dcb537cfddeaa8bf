"""von Neumann entropy and its quasinorm bracket.

The spectrum of a complex Hermitian ``A = X + iY`` is recovered from the real
symmetric embedding ``[[X, -Y], [Y, X]]``, whose eigenvalues are those of
``A`` each repeated twice.  The embedding is diagonalized with cyclic Jacobi
rotations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import Bracket, entropy_bracket
from .core import SigmaLike, shannon_entropy, validate_distribution
from .exceptions import NoConvergence, NotHermitian, NotPSD, NotSquare, TraceNotOne

HERM_TOL = 1e-10
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
PAIR_TOL = 1e-8
JACOBI_RTOL = 1e-13
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix.  PSD is checked after diagonalization."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def validate_density_matrix(raw) -> DensityMatrix:
    """Check shape, Hermiticity and trace; return the Hermitized matrix.

    Raises
    ------
    NotSquare, NotHermitian, TraceNotOne
    """
    a = np.array(raw, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise NotSquare(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    asym = float(np.max(np.abs(a - a.conj().T)))
    if asym > HERM_TOL:
        raise NotHermitian(f"max |A - A^H| = {asym:.3g} exceeds {HERM_TOL:g}")
    a = 0.5 * (a + a.conj().T)
    tr = math.fsum(a.diagonal().real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr!r}, not 1")
    a.setflags(write=False)
    return DensityMatrix(a)


def jacobi_eigenvalues(sym: np.ndarray, rtol: float = JACOBI_RTOL,
                       max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius mass is at most
    ``rtol * ||A||_F``.  Works on a private copy.
    """
    a = np.array(sym, dtype=float)
    m = a.shape[0]
    scale = np.linalg.norm(a)
    if m < 2 or scale == 0.0:
        return np.sort(a.diagonal())[::-1]
    target = rtol * scale
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= target:
            return np.sort(a.diagonal())[::-1]
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(m: DensityMatrix) -> np.ndarray:
    """All ``dim`` eigenvalues of ``m``, in descending order."""
    a = m.matrix
    x, y = a.real, a.imag
    embed = np.block([[x, -y], [y, x]])
    doubled = jacobi_eigenvalues(embed)
    first, second = doubled[0::2], doubled[1::2]
    if np.any(np.abs(first - second) > PAIR_TOL):
        raise NoConvergence("embedded spectrum is not pairwise degenerate")
    return 0.5 * (first + second)


def spectrum_distribution(m: DensityMatrix):
    """Eigenvalues clamped at zero and renormalized into a Distribution.

    Raises
    ------
    NotPSD
        If some eigenvalue is below ``-PSD_TOL``.
    """
    ev = hermitian_eigenvalues(m)
    if ev[-1] < -PSD_TOL:
        raise NotPSD(f"eigenvalue {ev[-1]!r} is below -{PSD_TOL:g}")
    ev = np.clip(ev, 0.0, None)
    return validate_distribution(ev / math.fsum(ev))


def von_neumann_entropy(m: DensityMatrix) -> float:
    """``H(rho)`` in bits: Shannon entropy of the spectrum."""
    return shannon_entropy(spectrum_distribution(m))


def von_neumann_bracket(m: DensityMatrix, sigma: SigmaLike) -> Bracket:
    return entropy_bracket(spectrum_distribution(m), sigma)


def random_unitary(dim: int, rng: np.random.Generator, rotations: int | None = None) -> np.ndarray:
    """Product of random complex Givens rotations and a random diagonal phase."""
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, dim)))
    if dim < 2:
        return u
    for _ in range(rotations if rotations is not None else 3 * dim * dim):
        i, j = rng.choice(dim, size=2, replace=False)
        theta = rng.uniform(0, 2 * np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        c, s = math.cos(theta), math.sin(theta)
        ri, rj = u[i].copy(), u[j].copy()
        u[i] = c * ri - np.exp(1j * phi) * s * rj
        u[j] = np.exp(-1j * phi) * s * ri + c * rj
    return u


def density_from_spectrum(probs, unitary: np.ndarray) -> DensityMatrix:
    """``U diag(p) U^H`` as a validated DensityMatrix."""
    p = np.asarray(probs, dtype=float)
    rho = (unitary * p) @ unitary.conj().T
    return validate_density_matrix(rho)


def read_density_matrix(path) -> DensityMatrix:
    """Parse the text format: ``dim`` then ``dim**2`` lines ``row col re im``."""
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise NotSquare(f"{path}: empty density-matrix file")
    try:
        dim = int(lines[0])
    except ValueError:
        raise NotSquare(f"{path}: first line must be the dimension") from None
    if dim < 1 or len(lines) - 1 != dim * dim:
        raise NotSquare(f"{path}: expected {dim * dim} entries, got {len(lines) - 1}")
    a = np.zeros((dim, dim), dtype=complex)
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4:
            raise NotSquare(f"{path}: bad entry line {ln!r}")
        r, c = int(parts[0]), int(parts[1])
        if not (0 <= r < dim and 0 <= c < dim) or (r, c) in seen:
            raise NotSquare(f"{path}: bad or repeated index ({r}, {c})")
        seen.add((r, c))
        a[r, c] = complex(float(parts[2]), float(parts[3]))
    return validate_density_matrix(a)


def write_density_matrix(path, m) -> None:
    a = np.asarray(m.matrix if isinstance(m, DensityMatrix) else m, dtype=complex)
    with open(path, "w") as fh:
        fh.write(f"{a.shape[0]}\n")
        for (r, c), v in np.ndenumerate(a):
            fh.write(f"{r} {c} {float(v.real)!r} {float(v.imag)!r}\n")
