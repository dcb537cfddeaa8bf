"""Upper and lower brackets for Shannon and von Neumann entropy from p-quasinorms."""

__version__ = "0.1.0"

from .bounds import (
    Bracket,
    DiffBound,
    bracket_gap,
    diff_bound,
    diff_lower_bound,
    diff_upper_bound,
    entropy_bracket,
    entropy_lower_bound,
    entropy_upper_bound,
    estimate_entropy,
    find_sigma_nontrivial,
)
from .core import (
    SIGMA_MAX,
    SIGMA_MIN,
    SUM_TOL,
    Distribution,
    SigmaParam,
    neg_log_lower,
    neg_log_upper,
    optimal_constant,
    quasinorm,
    shannon_entropy,
    validate_distribution,
    xlog_lower,
    xlog_upper,
)
from .estimator import EntropyBracketTransformer
from .exceptions import *  # noqa: F401,F403
from .infinite import (
    Geometric,
    TailBoundedValue,
    Zipf,
    family_bracket,
    family_entropy,
    family_norm,
    is_in_ell_sigma,
)
from .quantum import (
    DensityMatrix,
    hermitian_eigenvalues,
    validate_density_matrix,
    von_neumann_bracket,
    von_neumann_entropy,
)
