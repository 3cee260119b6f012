"""scikit-learn style wrappers.

``BookRepClassifier`` is "fitted" by running the full classification once;
``predict`` then maps representations to class labels.  ``CensusTransformer``
turns representations into census count vectors.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .census import appendix_labels, census, census_signature
from .equivalence import classify_all
from .model import BookRep, ParseError, as_rep, validate

LABELS = ("appendix", "canonical", "index")


def check_reps(X, n: int = 6) -> list[BookRep]:
    """Coerce ``X`` to a list of valid representations.

    Accepts one sheet-string or BookRep, or an iterable of them (a 1-d numpy
    array of strings works too).  Raises ``ValueError`` naming the first bad
    sample.
    """
    if isinstance(X, (str, BookRep)):
        X = [X]
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        if X.ndim != 1:
            raise ValueError(f"expected a 1-d array of representations, got shape {X.shape}")
    try:
        items = list(X)
    except TypeError:
        raise ValueError(f"expected representations, got {type(X).__name__}") from None
    out = []
    for i, item in enumerate(items):
        try:
            rep = as_rep(str(item) if isinstance(item, np.str_) else item, n).normalized()
        except (ParseError, TypeError) as exc:
            raise ValueError(f"sample {i}: {exc}") from exc
        problem = validate(rep)
        if problem is not None:
            raise ValueError(f"sample {i}: {problem}")
        out.append(rep)
    return out


def check_label(label: str) -> str:
    if label not in LABELS:
        raise ValueError(f"label must be one of {LABELS}, got {label!r}")
    return label


class BookRepClassifier(ClassifierMixin, BaseEstimator):
    """Assigns each representation its ambient-isotopy class.

    ``label="appendix"`` names classes like ``"4s1"`` or ``"4s1*"`` (mirror);
    ``"canonical"`` uses the class's least sheet-string and ``"index"`` its
    position in the classification.
    """

    def __init__(self, label: str = "appendix", cache=None, jobs: int = 1):
        self.label = label
        self.cache = cache
        self.jobs = jobs

    def fit(self, X=None, y=None):
        check_label(self.label)
        self.classification_ = classify_all(jobs=self.jobs, cache=self.cache)
        orbits = self.classification_.orbits
        if self.label == "appendix":
            names = appendix_labels(self.classification_)
            labels = [names.get(i, orbits[i].canonical) for i in range(len(orbits))]
        elif self.label == "canonical":
            labels = [o.canonical for o in orbits]
        else:
            labels = list(range(len(orbits)))
        self.labels_ = np.array(labels, dtype=object)
        self.classes_ = np.array(sorted(labels, key=str), dtype=object)
        self.min_sheets_ = np.array([o.min_sheets for o in orbits])
        return self

    def _check_fitted(self):
        if not hasattr(self, "classification_"):
            raise NotFittedError("BookRepClassifier is not fitted yet; call fit first")

    def class_index(self, X) -> np.ndarray:
        self._check_fitted()
        return np.array([self.classification_.index_of(r) for r in check_reps(X)], dtype=int)

    def predict(self, X) -> np.ndarray:
        idx = self.class_index(X)
        return self.labels_[idx]

    def predict_min_sheets(self, X) -> np.ndarray:
        idx = self.class_index(X)
        return self.min_sheets_[idx]


class CensusTransformer(TransformerMixin, BaseEstimator):
    """Census counts per representation.

    Columns: hopf, solomon, left trefoils, right trefoils, figure-eights, and
    with ``with_links=True`` the total linked pairs and knotted cycles.
    """

    _base = ("hopf", "solomon", "trefoil_L", "trefoil_R", "fig8")

    def __init__(self, with_totals: bool = False):
        self.with_totals = with_totals

    def fit(self, X=None, y=None):
        self.n_features_out_ = len(self.get_feature_names_out())
        return self

    def get_feature_names_out(self, input_features=None):
        names = list(self._base)
        if self.with_totals:
            names += ["links", "knotted"]
        return np.array(names, dtype=object)

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "n_features_out_"):
            raise NotFittedError("CensusTransformer is not fitted yet; call fit first")
        rows = []
        for rep in check_reps(X):
            c = census(rep)
            row = list(c.counts().values())
            if self.with_totals:
                row += [c.links, c.knotted]
            rows.append(row)
        return np.array(rows, dtype=int).reshape(-1, self.n_features_out_)

    def signatures(self, X) -> list[tuple]:
        return [census_signature(census(rep)) for rep in check_reps(X)]
