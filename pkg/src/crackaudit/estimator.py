"""Estimator-style front end so the scorer drops into sklearn pipelines.

Samples are rows of ``2 * m`` binary request flags: the official build's
catalog bits followed by the cracked build's (``m`` is the catalog size,
16 by default). ``decision_function`` returns the intention score per
row and ``predict`` the class label, both computed by the exact scorer.
There is nothing to learn; ``fit`` validates parameters and input shape.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .permissions import GroupWeights, PermissionCatalog, PermissionVector, builtin_catalog
from .scoring import ClassThresholds, IntentionClass, classify, group_differences, intention_score


class PairIntentClassifier(ClassifierMixin, BaseEstimator):
    """Classify official/cracked permission-flag pairs into intent bands.

    Parameters
    ----------
    weights : tuple of three floats, default (0.6, 0.3, 0.1)
        Group weights; must be non-negative and sum to one.
    thresholds : tuple of two floats, default (-0.4, 0.4)
        Lower and upper class boundaries.
    catalog : PermissionCatalog or None
        Catalog defining the bit layout; None means the builtin table.
    """

    def __init__(
        self,
        weights: tuple[float, float, float] = (0.6, 0.3, 0.1),
        thresholds: tuple[float, float] = (-0.4, 0.4),
        catalog: PermissionCatalog | None = None,
    ):
        self.weights = weights
        self.thresholds = thresholds
        self.catalog = catalog

    def _resolved(self) -> tuple[GroupWeights, ClassThresholds, PermissionCatalog]:
        weights = GroupWeights.of(*self.weights)
        lower, upper = self.thresholds
        thresholds = ClassThresholds.parse(f"{lower},{upper}")
        return weights, thresholds, self.catalog or builtin_catalog()

    def _validate(self, X, *, reset: bool) -> np.ndarray:
        X = check_array(X, ensure_2d=True)
        expected = 2 * (self.catalog or builtin_catalog()).size
        if X.shape[1] != expected:
            raise ValueError(
                f"X has {X.shape[1]} columns, expected {expected} "
                "(official bits followed by cracked bits)"
            )
        X = np.asarray(X, dtype=float)
        if not np.isin(X, (0.0, 1.0)).all():
            raise ValueError("X must contain only binary request flags (0 or 1)")
        if reset:
            self.n_features_in_ = expected
        return X.astype(int)

    def fit(self, X, y=None):
        """Validate parameters and the input layout; nothing is learned."""
        self._resolved()
        self._validate(X, reset=True)
        self.classes_ = np.array(sorted(cls.value for cls in IntentionClass))
        return self

    def decision_function(self, X) -> np.ndarray:
        """Intention score per row, in [-1, 1]; lower means more suspect."""
        check_is_fitted(self, "classes_")
        weights, _, catalog = self._resolved()
        X = self._validate(X, reset=False)
        m = catalog.size
        scores = np.empty(len(X), dtype=float)
        for i, row in enumerate(X):
            official = PermissionVector(bits=tuple(int(v) for v in row[:m]), catalog=catalog)
            cracked = PermissionVector(bits=tuple(int(v) for v in row[m:]), catalog=catalog)
            scores[i] = float(intention_score(group_differences(official, cracked), weights).value)
        return scores

    def predict(self, X) -> np.ndarray:
        """Class label per row."""
        check_is_fitted(self, "classes_")
        weights, thresholds, catalog = self._resolved()
        X = self._validate(X, reset=False)
        m = catalog.size
        labels = []
        for row in X:
            official = PermissionVector(bits=tuple(int(v) for v in row[:m]), catalog=catalog)
            cracked = PermissionVector(bits=tuple(int(v) for v in row[m:]), catalog=catalog)
            score = intention_score(group_differences(official, cracked), weights)
            labels.append(classify(score, thresholds).value)
        return np.array(labels)
