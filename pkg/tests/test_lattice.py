import random
from fractions import Fraction

import pytest

from concordia import _linalg as la
from concordia.goeritz import signature
from concordia.lattice import (CharClass, DefiniteLattice, MethodUnavailable, char_class,
                               char_cosets, closest_vector, closest_vector_brute,
                               correction_term, d_invariant, delta, is_characteristic,
                               maximiser, spin_classes)
from concordia.link_core import braid_closure, reverse_components, unlink

E8 = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
    E8[a][b] = E8[b][a] = 1


def random_negative_definite(rng, max_rank=4, max_det=40):
    while True:
        n = rng.randint(1, max_rank)
        B = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        Q = [[-x for x in r] for r in la.matmul(la.transpose(B), B)]
        if Q and 0 < abs(la.det(Q)) <= max_det:
            return Q


def test_rank_one():
    lat = DefiniteLattice.of([[-2]])
    vals = sorted(d_invariant(lat, c) for c in char_cosets(lat))
    assert vals == [Fraction(-1, 4), Fraction(1, 4)]


def test_unimodular_e8():
    lat = DefiniteLattice.of(E8)
    (c,) = char_cosets(lat)
    assert d_invariant(lat, c) == 2


def test_positive_forms_use_orientation_reversal():
    pos = DefiniteLattice.of([[3]])
    neg = DefiniteLattice.of([[-3]])
    for c in char_cosets(neg):
        assert correction_term(pos, c.rep) == -d_invariant(neg, c)
    with pytest.raises(ValueError):
        d_invariant(pos, [1])


def test_rejects_indefinite_and_non_characteristic():
    with pytest.raises(ValueError):
        DefiniteLattice.of([[1, 0], [0, -1]])
    lat = DefiniteLattice.of([[-2]])
    with pytest.raises(ValueError):
        d_invariant(lat, [1])


def test_cosets_count_discriminant():
    rng = random.Random(3)
    for _ in range(30):
        Q = random_negative_definite(rng)
        lat = DefiniteLattice.of(Q)
        cs = char_cosets(lat)
        assert len(cs) == lat.discriminant
        assert all(is_characteristic(Q, c.rep) for c in cs)
        assert len({char_class(lat, c.rep) for c in cs}) == len(cs)


def test_fast_search_matches_exhaustive():
    rng = random.Random(11)
    for _ in range(100):
        lat = DefiniteLattice.of(random_negative_definite(rng))
        for c in char_cosets(lat):
            assert d_invariant(lat, c) == d_invariant(lat, c, brute=True)


def test_closest_vector_agrees_with_brute():
    rng = random.Random(5)
    for _ in range(40):
        A = [[-x for x in r] for r in random_negative_definite(rng, 3, 30)]
        u = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in A]
        assert closest_vector(A, u)[0] == closest_vector_brute(A, u)[0]


def test_maximiser_attains_value():
    lat = DefiniteLattice.of([[-3, 1], [1, -2]])
    Qi = la.inverse(lat.rows())
    for c in char_cosets(lat):
        k = maximiser(lat, c)
        val = (sum(k[i] * Qi[i][j] * k[j] for i in range(2) for j in range(2)) + 2) / 4
        assert val == d_invariant(lat, c)


def test_hopf_delta():
    h = braid_closure([1, 1])
    assert delta(h) == 1
    assert delta(reverse_components(h, [1])) == -1


@pytest.mark.parametrize("word", [[1, 1, 1], [-1, -1, -1], [1, -2, 1, -2], [1, -2] * 3])
def test_alternating_sigma_plus_delta(word):
    d = braid_closure(word)
    assert signature(d) + delta(d) == 0


def test_borromean_spin_classes():
    cl = spin_classes(braid_closure([1, -2] * 3))
    assert len({c.rep for _, c in cl}) == 4
    assert all(isinstance(c, CharClass) for _, c in cl)


def test_delta_gates():
    with pytest.raises(MethodUnavailable):
        delta(braid_closure([1, 2] * 3))
    with pytest.raises(MethodUnavailable):
        delta(unlink(2))
