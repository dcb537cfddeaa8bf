import numpy as np
import pytest
from hypothesis import strategies as st

from normbounds import validate_distribution

SIGMA_GRID = [0.1, 0.3, 0.5, 0.7, 0.9, 0.99]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_distribution(rng, n=None, alpha=None):
    """Dirichlet draw with random support and concentration, exact zeros allowed."""
    n = n or int(rng.integers(1, 200))
    alpha = alpha or 10.0 ** rng.uniform(-2, 1)
    x = rng.dirichlet(np.full(n, alpha))
    if n > 2 and rng.random() < 0.3:
        x[rng.random(n) < 0.3] = 0.0
        if x.sum() == 0:
            x[0] = 1.0
    return validate_distribution(x / x.sum())


@st.composite
def distributions(draw, min_size=1, max_size=60):
    w = draw(st.lists(st.floats(0.0, 1.0, allow_subnormal=False),
                      min_size=min_size, max_size=max_size))
    w = np.array(w)
    if w.sum() <= 0:
        w = np.zeros(len(w))
        w[0] = 1.0
    return validate_distribution(w / w.sum())


sigmas = st.floats(0.01, 0.999)
