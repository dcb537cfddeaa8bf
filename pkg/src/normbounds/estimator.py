"""scikit-learn compatible wrapper: one probability vector per row."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .bounds import entropy_bracket
from .core import SUM_TOL, SigmaParam, shannon_entropy, validate_distribution


class EntropyBracketTransformer(TransformerMixin, BaseEstimator):
    """Map each row of ``X`` (a probability vector) to its entropy bracket.

    Parameters
    ----------
    sigma : float, default=0.9
        Inequality-family parameter in (0, 1); larger values give tighter
        brackets.
    tol : float, default=1e-9
        Tolerance used when validating each row as a distribution.

    Attributes
    ----------
    n_features_in_ : int
        Support size seen during :meth:`fit`.

    Examples
    --------
    >>> import numpy as np
    >>> est = EntropyBracketTransformer(sigma=0.5).fit([[0.5, 0.5]])
    >>> np.round(est.transform([[0.5, 0.5]]), 6)
    array([[0.595254, 2.88539 ]])
    """

    def __init__(self, sigma=0.9, tol=SUM_TOL):
        self.sigma = sigma
        self.tol = tol

    def fit(self, X, y=None):
        """Validate parameters and record the support size.  No state is learned."""
        SigmaParam(self.sigma)
        X = check_array(X, dtype=float)
        self.n_features_in_ = X.shape[1]
        return self

    def _rows(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but {type(self).__name__} "
                f"is expecting {self.n_features_in_} features as input.")
        return [validate_distribution(row, tol=self.tol) for row in X]

    def brackets(self, X):
        """List of :class:`~normbounds.bounds.Bracket`, one per row."""
        return [entropy_bracket(p, self.sigma) for p in self._rows(X)]

    def transform(self, X):
        """Return an ``(n_samples, 2)`` array of ``[lower, upper]`` in bits."""
        return np.array([[b.lower, b.upper] for b in self.brackets(X)]).reshape(-1, 2)

    def predict(self, X):
        """Bracket midpoints; each is within half the gap of the true entropy."""
        return np.array([b.midpoint for b in self.brackets(X)])

    def score(self, X, y=None):
        """Negative mean absolute error of :meth:`predict` against exact entropy."""
        rows = self._rows(X)
        exact = np.array([shannon_entropy(p) for p in rows])
        pred = np.array([entropy_bracket(p, self.sigma).midpoint for p in rows])
        return -float(np.mean(np.abs(exact - pred)))

    def get_feature_names_out(self, input_features=None):
        return np.array(["lower", "upper"], dtype=object)
