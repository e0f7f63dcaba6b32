import pytest
from hypothesis import given, settings, strategies as st

from conftest import connected_braids

from concordia import _linalg as la
from concordia.goeritz import checkerboard, determinant, goeritz_matrix, signature
from concordia.link_core import (DiagramError, PARTLY, OrientationError, braid_closure,
                                 connected_sum, negate, parse_pd, unlink)
from concordia.group import load_fixture_text
from concordia.plumbing import L4_TREE, montesinos_diagram
from concordia.seifert_lt import alexander, alexander_at, seifert_from_braid

braids = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=10)

# (braid, signature, determinant); values cross-checked against Seifert matrices
KNOWN = [
    ([1, 1], -1, 2),
    ([1, 1, 1], -2, 3),
    ([-1, -1, -1], 2, 3),
    ([1, -2, 1, -2], 0, 5),
    ([1, 1, 1, 1], -3, 4),
    ([1, -2] * 3, 0, 16),
]


@pytest.mark.parametrize("word,sig,det", KNOWN)
def test_known_values(word, sig, det):
    d = braid_closure(word)
    assert signature(d) == sig
    assert determinant(d) == det


def test_whitehead_and_l4():
    w = parse_pd(load_fixture_text("whitehead.pd"))
    assert determinant(w) == 8 and signature(w) == 1
    assert determinant(montesinos_diagram(L4_TREE)) == 4


def test_goeritz_rows_and_regions():
    d = braid_closure([1, 1, 1])
    cb = checkerboard(d)
    gd = goeritz_matrix(d, cb)
    assert la.is_symmetric(gd.G)
    with pytest.raises(DiagramError):
        goeritz_matrix(d, cb, r0=cb.black[0])


def test_deleted_region_does_not_matter():
    d = braid_closure([1, -2, 1, -2, 1, -2])
    cb = checkerboard(d)
    dets = {abs(la.det(goeritz_matrix(d, cb, r).G)) for r in cb.white}
    sigs = {signature(d, r0=r) for r in cb.white}
    assert dets == {16} and sigs == {0}


def test_errors():
    with pytest.raises(DiagramError):
        checkerboard(unlink(2))
    with pytest.raises(OrientationError):
        signature(braid_closure([1, 1], mode=PARTLY))
    assert determinant(unlink(3)) == 0


@settings(max_examples=150, deadline=None)
@given(connected_braids())
def test_against_seifert_oracle(word):
    d = braid_closure(word)
    S = seifert_from_braid(word)
    M = S.rows()
    sym = [[M[i][j] + M[j][i] for j in range(len(M))] for i in range(len(M))]
    assert signature(d) == la.signature(sym)
    assert determinant(d) == abs(alexander_at(alexander(S), -1))
    assert signature(d, flip=True) == signature(d)


@settings(max_examples=60, deadline=None)
@given(braids, braids)
def test_determinant_multiplicative(a, b):
    x, y = braid_closure(a), braid_closure(b)
    assert determinant(connected_sum(x, y)) == determinant(x) * determinant(y)


@settings(max_examples=60, deadline=None)
@given(braids)
def test_mirror_negates_signature(word):
    d = braid_closure(word)
    assert signature(negate(d)) == -signature(d)
