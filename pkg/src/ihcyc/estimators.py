"""Transformer-style wrappers: a batch of spaces or algebras in, a rank table out.

Each ``transform`` returns an integer array of shape ``(n_samples, n_degrees)``
zero-padded on the right. ``fit`` only validates parameters; there is nothing
to learn, but the fit/transform split keeps the objects pipeline-compatible.
"""
from __future__ import annotations

from typing import Dict, List

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import cyclic, stratified
from .validation import check_algebra, check_batch, check_filtered_complex, check_perversity


def _table(rows: List[Dict[int, int]]) -> np.ndarray:
    width = max((max(r) + 1 for r in rows if r), default=0)
    out = np.zeros((len(rows), width), dtype=np.int64)
    for i, r in enumerate(rows):
        for k, v in r.items():
            out[i, k] = v
    return out


class IntersectionBetti(TransformerMixin, BaseEstimator):
    """Intersection betti numbers of filtered complexes.

    ``perversity=None`` means the zero perversity of each input's dimension.
    """

    def __init__(self, perversity=None):
        self.perversity = perversity

    def fit(self, X, y=None):
        Fs = check_batch(X, check_filtered_complex)
        if self.perversity is not None:
            for F in Fs:
                check_perversity(self.perversity, F.n)
        self.is_fitted_ = True
        return self

    def _perversity(self, F):
        if self.perversity is None:
            return stratified.zero_perversity(F.n)
        return check_perversity(self.perversity, F.n)

    def transform(self, X):
        check_is_fitted(self, "is_fitted_")
        Fs = check_batch(X, check_filtered_complex)
        return _table([stratified.intersection_betti(F, self._perversity(F)) for F in Fs])


class _AlgebraTransformer(TransformerMixin, BaseEstimator):
    def __init__(self, max_degree: int = cyclic.DEFAULT_MAX_DEGREE, reduced: bool = False):
        self.max_degree = max_degree
        self.reduced = reduced

    def fit(self, X, y=None):
        if int(self.max_degree) < 2:
            raise ValueError("max_degree must be >= 2")
        check_batch(X, check_algebra)
        self.is_fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "is_fitted_")
        return _table([self._row(A) for A in check_batch(X, check_algebra)])


class HochschildBetti(_AlgebraTransformer):
    """``HH_k`` for ``k < max_degree``."""

    def _row(self, A):
        return cyclic.HochschildComplex(A, self.max_degree, reduced=self.reduced).betti()


class CyclicBetti(_AlgebraTransformer):
    """``HC_k`` for ``k < max_degree`` via the (b, B) bicomplex."""

    def _row(self, A):
        return cyclic.cyclic_betti(cyclic.mixed_from_algebra(A, self.max_degree, self.reduced), self.max_degree)


class PeriodicCyclicBetti(_AlgebraTransformer):
    """Columns ``(even, odd, stabilized)``; the flag is 1 when S stabilized below max_degree."""

    def _row(self, A):
        res = cyclic.periodic_betti(cyclic.mixed_from_algebra(A, self.max_degree, self.reduced), self.max_degree)
        return {0: res.even, 1: res.odd, 2: int(res.stabilized)}
