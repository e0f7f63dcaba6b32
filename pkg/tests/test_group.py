import random

import pytest

from concordia.group import (FormalClass, MarkedLinkDescription, class_neg, class_sum,
                             default_omegas, independence_rank, load_fixture_text,
                             nontriviality_certificate, obstruction_vector, split_class,
                             unknot_class)
from concordia.link_core import PARTLY, DiagramError
from concordia.seifert_lt import RootOfUnity

HT = "fixture: hopf_marked.pd"
L1 = "fixture: l1_standin.pd"
L4 = "tree: " + load_fixture_text("l4.tree")


def triple(v):
    return v.l, v.sigma, v.delta


def test_default_omegas():
    assert [str(w.turns) for w in default_omegas()] == ["1/16", "3/16", "5/16", "7/16"]
    assert all(w.is_prime_power for w in default_omegas(16))


def test_descriptions():
    assert MarkedLinkDescription.parse("S(10,3)").kind == "two_bridge"
    assert MarkedLinkDescription.parse("braid: 1 1").seifert.M == ((-1,),)
    assert MarkedLinkDescription.parse(HT).kind == "pd"
    with pytest.raises(DiagramError):
        MarkedLinkDescription.parse("knot 3_1")
    with pytest.raises(DiagramError):
        MarkedLinkDescription.parse("fixture: nope.pd")


def test_inverse_and_doubling():
    a = FormalClass.of("S(6,1)")
    assert class_sum(a, class_neg(a)).is_empty
    h = FormalClass.of(HT)
    hh = class_sum(h, h)
    assert hh.terms[0][1] == 2
    assert obstruction_vector(hh).l == 2


def test_hopf_has_order_two_partly():
    h = FormalClass.of("braid: 1 1", mode=PARTLY)
    v = obstruction_vector(class_sum(h, h))
    assert v.l == 0 and v.det_class == () and v.mu == 0


def test_mode_mismatch():
    with pytest.raises(ValueError):
        class_sum(FormalClass.of("S(6,1)"), FormalClass.of("S(6,1)", mode=PARTLY))


def test_paper_triples():
    assert triple(obstruction_vector(FormalClass.of(HT))) == (1, -1, 1)
    assert triple(obstruction_vector(FormalClass.of(L1))) == (1, 0, 0)


def test_hopf_sum_whitehead_is_nontrivial():
    c = FormalClass.of("fixture: hopf_sum_whitehead.pd", mode=PARTLY)
    w = nontriviality_certificate(c)
    assert w.invariant == "l" and w.value == 1


def test_certificates():
    w = nontriviality_certificate(FormalClass.of("S(10,3)", mode=PARTLY))
    assert w.invariant == "l" and w.value == 1
    w = nontriviality_certificate(FormalClass.of("S(13,5)", mode=PARTLY))
    assert w.invariant == "det square class" and w.value == 13
    assert nontriviality_certificate(unknot_class()) is None
    a = FormalClass.of("S(6,1)")
    assert nontriviality_certificate(class_sum(a, class_neg(a))) is None


def test_partly_mode_drops_oriented_rows():
    v = obstruction_vector(FormalClass.of("S(10,3)", mode=PARTLY))
    assert v.sigma is None and v.delta is None and v.lt == ()
    assert v.det_class == (2, 5)


def test_lt_gate_on_nullity():
    # Delta(T(2,4)) vanishes at 1/4 turns: that omega is gated out
    v = obstruction_vector(FormalClass.of("braid: 1 1 1 1"), [RootOfUnity(1, 4), RootOfUnity(1, 8)])
    assert [w for w, _, _ in v.lt] == [RootOfUnity(1, 8)]


def test_delta_unavailable_is_reported():
    v = obstruction_vector(FormalClass.of("braid: 1 2 1 2 1 2"))
    assert v.delta is None and any("delta unavailable" in n for n in v.notes)


def test_z3_rank():
    classes = [FormalClass.of(x) for x in (HT, L1, L4)]
    r = independence_rank(classes, rows=["l_tilde", "sigma", "delta"])
    assert (r.free_rank, r.two_torsion_rank) == (3, 0)
    assert r.free_minor["det"] != 0


def test_torus_link_rank():
    classes = [FormalClass.of(f"S({p},1)") for p in (6, 8, 10)]
    assert independence_rank(classes, [RootOfUnity(25, 64)]).free_rank == 3
    # the default samples see only functions affine in k
    assert independence_rank(classes).free_rank == 2


def test_two_torsion_rank():
    classes = [FormalClass.of(f"S({p},{q})", mode=PARTLY) for p, q in ((10, 3), (26, 5), (50, 7))]
    r = independence_rank(classes)
    assert r.two_torsion_rank == 3 and r.free_rank == 0


def test_rank_monotone():
    pool = [FormalClass.of(x) for x in (HT, L1, "S(8,3)", "S(12,5)", "braid: 1 1 1")]
    prev = (0, 0)
    for k in range(1, len(pool) + 1):
        r = independence_rank(pool[:k])
        assert r.free_rank <= k
        assert r.free_rank >= prev[0] and r.two_torsion_rank >= prev[1]
        prev = (r.free_rank, r.two_torsion_rank)


def test_split_class():
    knot, rest = split_class(MarkedLinkDescription.parse("braid: 1 1 1"))
    assert rest.is_empty and len(knot.terms) == 1
    knot, rest = split_class(MarkedLinkDescription.parse(HT))
    assert nontriviality_certificate(knot) is None
    assert triple(obstruction_vector(rest)) == (1, -1, 1)


def _vec(v):
    return (v.l, v.mu, v.det_class, v.sigma, v.delta)


CORPUS = [HT, L1, "S(8,3)", "S(12,5)", "S(9,2)", "S(15,4)", "braid: 1 -2 1 -2",
          "fixture: whitehead.pd", "fixture: borromean.pd", "braid: 1 1 1"]


def test_additivity_random_pairs():
    rng = random.Random(9)
    for _ in range(12):
        a, b = rng.sample(CORPUS, 2)
        ma, mb = rng.choice([-2, -1, 1, 2]), rng.choice([-1, 1, 3])
        A, B = FormalClass.of((a, ma)), FormalClass.of((b, mb))
        va, vb, vs = (obstruction_vector(x) for x in (A, B, class_sum(A, B)))
        assert vs.l == va.l + vb.l
        assert vs.mu == (va.mu + vb.mu) % 2
        assert vs.sigma == va.sigma + vb.sigma
        assert vs.delta == va.delta + vb.delta
        assert set(vs.det_class) == set(va.det_class) ^ set(vb.det_class)


def test_negation():
    for x in CORPUS:
        a = FormalClass.of(x)
        v, n = obstruction_vector(a), obstruction_vector(class_neg(a))
        assert (n.l, n.sigma, n.delta) == (-v.l, -v.sigma, -v.delta)
        assert (n.mu, n.det_class) == (v.mu, v.det_class)


@pytest.mark.parametrize("x", [HT, L1, "S(8,3)", "S(12,5)", "fixture: whitehead.pd"])
def test_split_parts_sum_to_whole(x):
    desc = MarkedLinkDescription.parse(x)
    knot, rest = split_class(desc)
    whole = obstruction_vector(FormalClass(((desc, 1),)))
    parts = [obstruction_vector(knot), obstruction_vector(rest)]
    assert whole.l == sum(p.l for p in parts)
    assert whole.mu == sum(p.mu for p in parts) % 2
    assert whole.sigma == sum(p.sigma for p in parts)
    assert set(whole.det_class) == set(parts[0].det_class) ^ set(parts[1].det_class)
