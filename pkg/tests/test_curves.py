import warnings

import pytest

from nolf.curves import (
    MINUS,
    PLUS,
    CurveDictionary,
    DegenerateCurveWarning,
    standard_dictionary,
)
from nolf.errors import (
    DisjointnessError,
    DuplicateCurveError,
    NonPrimitiveError,
    NotALiftError,
    NotSymplecticError,
    SelfPairingError,
    UnknownCurveError,
)
from nolf.homology import (
    IntMatrix,
    canonical_sign,
    is_symplectic,
    pairing,
    transvection,
    twist_pair_matrix,
)
from nolf.words import Letter, Word


@pytest.fixture
def d():
    d = CurveDictionary(3)
    d.register("c", d.lattice.vec("a1"))
    return d


def test_lift_pair_examples(d):
    a1, a2 = (1, 0, 0, 0), (0, 0, 1, 0)
    assert d.J.apply(a1) == a2
    assert d.lift_pair(d.oriented("c", PLUS)) == (a1, a2)
    assert d.lift_pair(d.oriented("c", MINUS)) == (a2, a1)
    oc = d.oriented("c", PLUS)
    assert oc.flipped().flipped() == oc


def test_lift_pair_components_exchanged_by_J():
    d = standard_dictionary(6)
    for c in d:
        for theta in (PLUS, MINUS):
            s, s_bar = d.lift_pair(d.oriented(c.id, theta))
            assert d.J.apply(s) == s_bar and d.J.apply(s_bar) == s
            assert transvection(s) @ transvection(s_bar) == transvection(s_bar) @ transvection(s)


def test_unknown_curve(d):
    with pytest.raises(UnknownCurveError):
        d.oriented("nope")


def test_register_examples():
    d = CurveDictionary(3)
    with pytest.raises(NonPrimitiveError, match="non-primitive"):
        d.register("x", d.lattice.vec("2a1"))
    c = d.register("y", d.lattice.vec("-a1"))
    assert c.lift == (1, 0, 0, 0)
    assert pairing((1, 0, 0, 0), d.J.apply((1, 0, 0, 0))) == 0
    with pytest.raises(DuplicateCurveError):
        d.register("y", d.lattice.vec("b1"))


def test_self_pairing_rejected():
    d = CurveDictionary(3)
    # <a1 + b2, J(a1 + b2)> = <a1 + b2, a2 - b1> = -2
    gamma = d.lattice.vec("a1+b2")
    assert pairing(gamma, d.J.apply(gamma)) != 0
    with pytest.raises(SelfPairingError):
        d.register("x", gamma)


def test_degenerate_curve_warns():
    d = CurveDictionary(3)
    with pytest.warns(DegenerateCurveWarning):
        d.register("x", d.lattice.vec("a1+a2"))
    assert d.is_degenerate("x")


def test_null_curve_needs_tag():
    d = CurveDictionary(3)
    with pytest.raises(NonPrimitiveError):
        d.register("x", d.lattice.zero())
    c = d.register("x", d.lattice.zero(), tag="sep")
    assert c.is_null


def test_disjointness_checks():
    d = standard_dictionary(5)
    assert d.are_disjoint("a1", "a2") and d.are_disjoint("a2", "a1")
    assert not d.are_disjoint("a1", "b1")
    e = CurveDictionary(5)
    e.register("a1", e.lattice.vec("a1"))
    e.register("b1", e.lattice.vec("b1"))
    e.register("b4", e.lattice.vec("b4"))
    with pytest.raises(DisjointnessError):
        e.declare_disjoint("a1", "b1")
    # a1 pairs with J b4 = -b1 on the other lift
    with pytest.raises(DisjointnessError):
        e.declare_disjoint("a1", "b4")
    with pytest.raises(DisjointnessError):
        e.declare_disjoint("a1", "a1")


def test_standard_dictionary_shape():
    assert [c.id for c in standard_dictionary(3)] == ["a1", "b1", "p1", "m1"]
    assert not standard_dictionary(3).declared
    d5 = standard_dictionary(5)
    assert [c.id for c in d5] == ["a1", "b1", "p1", "m1", "a2", "b2", "p2", "m2", "aa1", "bb1"]
    assert len(d5.declared) == 16
    for g in range(3, 10):
        d = standard_dictionary(g)
        for c in d:
            assert not d.is_degenerate(c.id)


def _symplectic_not_lift():
    m = transvection((1, 0, 0, 0))
    assert is_symplectic(m)
    return m


def test_push_forward_identity_and_rejection(d):
    oc = d.oriented("c", MINUS)
    assert d.push_forward(IntMatrix.identity(4), oc) == oc
    m = _symplectic_not_lift()
    assert m @ d.J != d.J @ m
    with pytest.raises(NotALiftError):
        d.push_forward(m, oc)
    with pytest.raises(NotSymplecticError):
        d.push_forward(d.J, oc)


def test_push_forward_pair_matrix():
    d = CurveDictionary(3)
    d.register("c", d.lattice.vec("b1"))
    g0 = d.lattice.vec("a1")
    m = twist_pair_matrix(g0, d.J.apply(g0))
    assert m @ d.J == d.J @ m
    oc = d.push_forward(m, d.oriented("c", PLUS))
    assert oc.curve.id.startswith("auto_")
    assert d.selected_lift(oc) == canonical_sign(m.apply(d.lattice.vec("b1")))
    # again: found, not re-registered
    assert d.push_forward(m, d.oriented("c", PLUS)) == oc
    assert len(d) == 2


def test_push_forward_preserves_curve_invariants():
    d = standard_dictionary(5)
    m = twist_pair_matrix(d.lattice.vec("a1+b1"), d.J.apply(d.lattice.vec("a1+b1")))
    for c in list(d):
        for theta in (PLUS, MINUS):
            oc = d.push_forward(m, d.oriented(c.id, theta))
            lift = oc.curve.lift
            assert lift[next(i for i, x in enumerate(lift) if x)] > 0
            assert pairing(lift, d.J.apply(lift)) == 0
            pushed = m.apply(d.selected_lift(d.oriented(c.id, theta)))
            assert canonical_sign(d.selected_lift(oc)) == canonical_sign(pushed)


def test_null_curves_push_to_themselves():
    d = CurveDictionary(3)
    d.register("s", d.lattice.zero(), tag="sep")
    m = twist_pair_matrix((1, 0, 0, 0), (0, 0, 1, 0))
    oc = d.oriented("s", MINUS)
    assert d.push_forward(m, oc) == oc


def test_key_invariant_under_reregistration():
    """Same geometric data, stored with the other sign or the other lift."""
    d1 = CurveDictionary(5)
    d1.register("c", d1.lattice.vec("a1+b1"))
    d2 = CurveDictionary(5)
    d2.register("c", d2.lattice.vec("-a1-b1"))
    d3 = CurveDictionary(5)
    d3.register("c", d3.J.apply(d3.lattice.vec("a1+b1")))
    w1, w2, w3 = (Word(x, "D2", (Letter("c", PLUS),)) for x in (d1, d2, d3))
    assert w1.key() == w2.key()
    assert w3.key() == Word(d1, "D2", (Letter("c", MINUS),)).key()
    assert d1.curve_key("c") == d3.curve_key("c")


def test_alias_shares_representative():
    d = standard_dictionary(3)
    d.register("again", d.lattice.vec("-a1"))
    assert d.representative("again") == "a1"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        d.register("j", d.J.apply(d.lattice.vec("b1")))
    assert d.representative("j") == "b1"
