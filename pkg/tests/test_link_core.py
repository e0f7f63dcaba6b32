import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from concordia.link_core import (PARTLY, DiagramError, OrientationError, braid_closure,
                                 canonical_form, connected_sum, isomorphic, linking_number,
                                 mu, negate, parse_pd, render_pd, reverse_components,
                                 total_linking, unknot, unlink, orientation_variants,
                                 is_alternating, is_split, same_diagram)
from concordia.group import load_fixture_text

braids = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=9)


def hopf():
    return braid_closure([1, 1])


def test_parse_roundtrip():
    d = hopf()
    assert same_diagram(parse_pd(render_pd(d)), d)


@pytest.mark.parametrize("text", [
    "PD[X(1,2,3] marked=1",
    "PD[X(1,2,3,4)] marked=1",          # each arc must appear twice
    "PD[X(2,3,1,4;+), X(3,2,4,1;+)]",    # no marking
    "PD[X(2,3,1,4;+), X(3,2,4,1;?)] marked=1",
])
def test_parse_errors(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_canonical_form_ignores_crossing_order():
    d = braid_closure([1, -2, 1, -2, 1, -2])
    text = render_pd(d)
    xs = re.findall(r"X\([^)]*\)", text)
    random.Random(1).shuffle(xs)
    shuffled = "PD[" + ", ".join(xs) + "]" + text.split("]", 1)[1]
    assert shuffled != text
    assert canonical_form(parse_pd(shuffled)) == canonical_form(d)


def test_linking_numbers():
    assert linking_number(unlink(2), 0, 1) == 0
    assert total_linking(hopf()) == 1
    assert total_linking(connected_sum(hopf(), hopf())) == 2
    assert total_linking(braid_closure([1, 1, 1, 1])) == 2
    with pytest.raises(DiagramError):
        linking_number(hopf(), 0, 0)


def test_partly_oriented_linking_is_mod_two():
    h = braid_closure([1, 1], mode=PARTLY)
    assert total_linking(h) == 1
    assert total_linking(connected_sum(h, h)) == 0
    with pytest.raises(OrientationError):
        linking_number(connected_sum(h, h), 1, 2)


def test_mu():
    assert mu(unlink(2)) == 1
    assert mu(braid_closure([1, 1, 1])) == 0
    assert mu(connected_sum(hopf(), hopf())) == 0


def test_connected_sum_counts_components():
    assert connected_sum(hopf(), hopf()).n_components == 3
    with pytest.raises(DiagramError):
        connected_sum(hopf(), braid_closure([1, 1], mode=PARTLY))


def test_reversal_flips_mixed_crossing_signs():
    d = reverse_components(hopf(), [1])
    assert [x.sign for x in d.crossings] == [-1, -1]
    assert total_linking(d) == -1


def test_orientation_variants_count():
    for word, m in (([1, 1], 2), ([1, -2] * 3, 3), ([1, 1, 1], 1)):
        d = braid_closure(word)
        assert d.n_components == m
        assert len(orientation_variants(d)) == 2 ** (m - 1)


def test_alternating_and_split_flags():
    assert is_alternating(braid_closure([1, -2] * 3))
    assert not is_alternating(braid_closure([1, 2] * 3))
    assert is_split(unlink(2))
    assert not is_split(hopf())


def test_fixture_loads():
    d = parse_pd(load_fixture_text("hopf_sum_whitehead.pd"))
    assert d.mode == PARTLY and d.n_components == 3


def test_unknot():
    u = unknot()
    assert u.n_components == 1 and u.n_crossings == 0


@settings(max_examples=60, deadline=None)
@given(braids)
def test_negate_is_an_involution(word):
    d = braid_closure(word)
    assert isomorphic(negate(negate(d)), d)


@settings(max_examples=60, deadline=None)
@given(braids, braids)
def test_mu_additive(a, b):
    x, y = braid_closure(a), braid_closure(b)
    assert mu(connected_sum(x, y)) == (mu(x) + mu(y)) % 2
