"""Scikit-learn style wrapper around the concept decomposition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .concepts import concept_proximity_table, decomposition
from .matrix import ContextMatrix, verify_decomposition
from .proxet import discrete
from .validation import check_context
from .values import ONE, ZERO, residuate

# The projection and embedding clauses of the report compare against the
# largest connection partner and are informational only; see README.
CHECKED_CLAUSES = ("P;E = Φ", "P columns isometric", "E rows isometric")


class QuantitativeConceptAnalysis(TransformerMixin, BaseEstimator):
    """Extract the representable concepts of a graded context.

    ``fit`` takes an objects-by-attributes matrix with entries in [0, 1]
    (or integer star ratings when ``stars`` is set) over discrete carriers.
    ``transform`` maps rows over the same attributes to their proximity to
    every fitted concept, which for the training rows is exactly the
    projection matrix. ``inverse_transform`` pushes such coordinates back
    through the embedding.

    Parameters
    ----------
    stars : int or None
        Rating scale; cells are then integers ``0..stars``.
    check : bool
        Re-verify after fitting that ``P;E`` reproduces the context and that
        both factors are isometric, raising ``RuntimeError`` otherwise.

    Attributes
    ----------
    context_ : ContextMatrix
    concepts_ : tuple of Concept
        Deduplicated representable concepts, attribute-generated first.
    projection_, embedding_ : ContextMatrix
    proximity_table_ : ConceptTable
        Raw table with one row per generator.
    """

    def __init__(self, stars=None, check=True):
        self.stars = stars
        self.check = check

    def fit(self, X, y=None):
        values, rows, cols = check_context(X, self.stars)
        a, b = discrete(rows), discrete(cols)
        phi = ContextMatrix(a, b, tuple(tuple(r) for r in values))
        p, e = decomposition(phi)
        if self.check:
            report = verify_decomposition(p, e, phi)
            bad = [c for c in report.clauses if c.name in CHECKED_CLAUSES and not c.ok]
            if bad:
                raise RuntimeError("decomposition check failed:\n" + "\n".join(map(str, bad)))
        self.context_ = phi
        self.projection_ = p
        self.embedding_ = e
        self.proximity_table_ = concept_proximity_table(phi)
        self.concepts_ = concept_proximity_table(phi, dedup=True).concepts
        self.n_features_in_ = len(cols)
        self.feature_names_in_ = np.asarray(cols, dtype=object)
        return self

    def transform(self, X):
        check_is_fitted(self, "concepts_")
        values, _, _ = check_context(X, self.stars)
        if values.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {values.shape[1]} features, expected {self.n_features_in_}")
        uppers = [c.upper.values for c in self.concepts_]
        out = np.empty((values.shape[0], len(uppers)), dtype=object)
        for i, row in enumerate(values):
            for k, up in enumerate(uppers):
                out[i, k] = min((residuate(u, r) for u, r in zip(up, row)), default=ONE)
        return out

    def inverse_transform(self, T):
        check_is_fitted(self, "concepts_")
        T = np.asarray(T, dtype=object)
        if T.ndim != 2 or T.shape[1] != len(self.concepts_):
            raise ValueError(f"expected coordinates with {len(self.concepts_)} columns")
        e = self.embedding_.rows
        m = self.n_features_in_
        out = np.empty((T.shape[0], m), dtype=object)
        for i, t in enumerate(T):
            for j in range(m):
                out[i, j] = max((t[k] * e[k][j] for k in range(len(e))), default=ZERO)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "concepts_")
        return np.asarray([c.label for c in self.concepts_], dtype=object)
