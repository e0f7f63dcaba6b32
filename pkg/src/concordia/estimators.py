"""scikit-learn adapter: link descriptions in, obstruction features out."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .group import DEFAULT_B, FormalClass, default_omegas, obstruction_vector
from .link_core import ORIENTED


class ObstructionTransformer(TransformerMixin, BaseEstimator):
    """Map link descriptions (strings or FormalClass objects) to numeric rows.

    Columns are ``l``, ``mu``, ``sigma``, ``delta`` and, with
    ``include_lt=True``, one ``sigma_omega`` column per sampled omega.
    Missing values (unavailable delta, gated sigma_omega) become ``fill_value``.
    Stateless: ``fit`` only records the column names.
    """

    def __init__(self, mode: str = ORIENTED, omega_res: int = DEFAULT_B,
                 include_lt: bool = False, fill_value: float = np.nan):
        self.mode = mode
        self.omega_res = omega_res
        self.include_lt = include_lt
        self.fill_value = fill_value

    def _omegas(self):
        return default_omegas(self.omega_res)

    def fit(self, X, y=None):
        names = ["l", "mu", "sigma", "delta"]
        if self.include_lt:
            names += [f"sigma_omega_{w.a}_{w.b}" for w in self._omegas()]
        self.feature_names_out_ = np.asarray(names, dtype=object)
        self.n_features_out_ = len(names)
        return self

    def _row(self, item) -> list[float]:
        cls = item if isinstance(item, FormalClass) else FormalClass.of(str(item), mode=self.mode)
        omegas = self._omegas()
        v = obstruction_vector(cls, omegas)
        fill = self.fill_value
        row = [v.l, v.mu,
               fill if v.sigma is None else v.sigma,
               fill if v.delta is None else v.delta]
        if self.include_lt:
            got = {w: s for w, s, _ in v.lt}
            row += [got.get(w, fill) for w in omegas]
        return row

    def transform(self, X):
        if not hasattr(self, "feature_names_out_"):
            self.fit(X)
        return np.asarray([self._row(x) for x in X], dtype=float)

    def get_feature_names_out(self, input_features=None):
        return self.feature_names_out_
