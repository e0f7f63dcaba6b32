import numpy as np
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from concordia.estimators import ObstructionTransformer


def test_transform_rows():
    t = ObstructionTransformer()
    X = t.fit_transform(["braid: 1 1", "S(10,3)", "fixture: l1_standin.pd"])
    assert X.shape == (3, 4)
    assert X[0].tolist() == [1, 1, -1, 1]
    assert X[2].tolist() == [1, 0, 0, 0]
    assert list(t.get_feature_names_out()) == ["l", "mu", "sigma", "delta"]


def test_missing_values_and_lt_columns():
    t = ObstructionTransformer(include_lt=True, fill_value=-99)
    X = t.fit_transform(["braid: 1 2 1 2 1 2", "S(6,1)"])
    assert X.shape == (2, 8)
    assert X[0, 3] == -99                     # delta unavailable (not alternating)
    assert X[1, 4:].tolist() == [-1, -3, -3, -5]


def test_sklearn_protocol():
    t = ObstructionTransformer(omega_res=8)
    assert clone(t).get_params()["omega_res"] == 8
    pipe = make_pipeline(ObstructionTransformer(), StandardScaler())
    Z = pipe.fit_transform(["S(6,1)", "S(8,1)", "S(10,1)"])
    assert np.allclose(Z.mean(axis=0), 0)
