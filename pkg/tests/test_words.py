import random

import pytest
import sympy
from conftest import random_word
from hypothesis import given, settings
from hypothesis import strategies as st

from nolf.curves import MINUS, PLUS, CurveDictionary, standard_dictionary
from nolf.errors import IllegalMoveError, UnknownCurveError, UnsupportedHypothesis
from nolf.homology import IntMatrix, transvection, twist_pair_matrix
from nolf.lifting import lift_word
from nolf.words import (
    Letter,
    Move,
    MoveKind,
    Word,
    all_maximal_reductions,
    apply_moves,
    commute_adjacent,
    conjugate_all,
    delete_cancelling_pair,
    free_reduce,
    insert_after_next,
    insert_before_current,
    insert_cancelling_pair,
    normalize_positive,
    theta_flip,
    word_monodromy,
)

D5 = standard_dictionary(5)
IDS = [c.id for c in D5]

letters = st.builds(Letter, st.sampled_from(IDS), st.sampled_from((1, -1)), st.sampled_from((1, -1)))
words = st.lists(letters, max_size=6).map(lambda ls: Word(D5, "S2", tuple(ls)))


def sp(m):
    return sympy.Matrix([list(r) for r in m.rows])


def test_theta_flip_example(d3):
    w = Word(d3, "D2", (Letter("a1", PLUS, -1),))
    assert theta_flip(w, 0).letters == (Letter("a1", MINUS, 1),)
    assert theta_flip(theta_flip(w, 0), 0) == w
    with pytest.raises(IllegalMoveError):
        theta_flip(w, 1)


@given(words, st.data())
def test_theta_flip_preserves_matrix(w, data):
    if not w.letters:
        return
    i = data.draw(st.integers(0, len(w) - 1))
    assert theta_flip(w, i).monodromy() == w.monodromy()


def test_theta_flip_rejects_orientable(d3):
    lw = lift_word(Word(d3, "D2", (Letter("a1"),)))
    with pytest.raises(UnsupportedHypothesis):
        theta_flip(lw, 0)
    with pytest.raises(UnsupportedHypothesis):
        normalize_positive(lw)


def test_normalize_positive_examples(d3):
    assert normalize_positive(Word(d3, "D2")).letters == ()
    w = Word(d3, "D2", (Letter("a1", PLUS, -1), Letter("b1", MINUS, 1)))
    assert normalize_positive(w).letters == (Letter("a1", MINUS, 1), Letter("b1", MINUS, 1))


@given(words)
def test_normalize_positive_properties(w):
    n = normalize_positive(w)
    assert n.is_positive
    assert len(n) == len(w)
    assert n.monodromy() == w.monodromy()
    assert normalize_positive(n) == n


def test_insert_examples(d3):
    w = insert_cancelling_pair(Word(d3, "D2"), 0, Letter("a1"), "left")
    assert w.letters == (Letter("a1", PLUS, -1), Letter("a1", PLUS, 1))
    assert w.monodromy().is_identity()
    with pytest.raises(UnknownCurveError):
        insert_cancelling_pair(w, 0, Letter("zz"))
    with pytest.raises(IllegalMoveError):
        insert_cancelling_pair(w, 5, Letter("a1"))


def test_fixed_position_instances(d3):
    c = [Letter("a1"), Letter("b1"), Letter("p1"), Letter("m1")]
    w = Word(d3, "D2", tuple(c))
    # c_1 c_2 (c_1^-1 c_1) c_3 c_4 for 0-based i = 0
    assert insert_after_next(w, 0).letters == (c[0], c[1], c[0].inverse(), c[0], c[2], c[3])
    # c_1 (c_3 c_3^-1) c_2 c_3 c_4 for 0-based i = 1
    assert insert_before_current(w, 1).letters == (c[0], c[2], c[2].inverse(), c[1], c[2], c[3])


@given(words, st.data())
def test_insert_then_delete_is_identity(w, data):
    pos = data.draw(st.integers(0, len(w)))
    letter = data.draw(letters)
    order = data.draw(st.sampled_from(("left", "right")))
    w2 = insert_cancelling_pair(w, pos, letter, order)
    assert w2.monodromy() == w.monodromy()
    assert delete_cancelling_pair(w2, pos) == w


def test_delete_examples(d3):
    w = Word(d3, "D2", (Letter("a1", PLUS), Letter("a1", MINUS)))
    assert delete_cancelling_pair(w, 0).letters == ()
    w = Word(d3, "D2", (Letter("a1", PLUS), Letter("a1", PLUS, -1)))
    assert delete_cancelling_pair(w, 0).letters == ()
    w = Word(d3, "D2", (Letter("a1", PLUS), Letter("b1", MINUS)))
    with pytest.raises(IllegalMoveError):
        delete_cancelling_pair(w, 0)
    w = Word(d3, "D2", (Letter("a1", PLUS), Letter("a1", PLUS)))
    with pytest.raises(IllegalMoveError):
        delete_cancelling_pair(w, 0)


def test_commute_examples(d5):
    w = Word(d5, "D2", (Letter("a1"), Letter("a2")))
    assert commute_adjacent(w, 0).letters == (Letter("a2"), Letter("a1"))
    same = Word(d5, "D2", (Letter("a1"), Letter("a1")))
    assert commute_adjacent(same, 0) == same
    # homologically orthogonal but never declared
    e = CurveDictionary(5)
    e.register("x", e.lattice.vec("a1"))
    e.register("y", e.lattice.vec("a2"))
    with pytest.raises(IllegalMoveError, match="not declared"):
        commute_adjacent(Word(e, "D2", (Letter("x"), Letter("y"))), 0)


@given(words, st.data())
def test_commute_preserves_matrix(w, data):
    if len(w) < 2:
        return
    p = data.draw(st.integers(0, len(w) - 2))
    try:
        w2 = commute_adjacent(w, p)
    except IllegalMoveError:
        return
    assert w2.monodromy() == w.monodromy()


def pool(d):
    out = []
    for cid in ("a1", "p1", "bb1"):
        if cid in d:
            s, sb = d.lift_pair(d.oriented(cid))
            out.append(twist_pair_matrix(s, sb))
    return out


def test_conjugate_examples(d5):
    w = Word(d5, "D2", (Letter("b1", MINUS),))
    assert conjugate_all(w, IntMatrix.identity(8)) == w
    for m in pool(d5):
        w2 = conjugate_all(w, m)
        assert w2.monodromy() == m @ w.monodromy() @ m.inverse()
    with pytest.raises(IllegalMoveError):
        conjugate_all(w, transvection(d5.lattice.vec("a1")))


@settings(max_examples=40)
@given(words, st.integers(0, 2))
def test_conjugation_charpoly_invariant(w, mi):
    m = pool(D5)[mi]
    w2 = conjugate_all(w, m)
    assert w2.monodromy() == m @ w.monodromy() @ m.inverse()
    assert w2.monodromy().charpoly() == w.monodromy().charpoly()
    assert [l.exponent for l in w2.letters] == [l.exponent for l in w.letters]


def test_word_monodromy_examples(d3):
    assert word_monodromy(Word(d3, "D2")).is_identity()
    assert Word(d3, "D2", (Letter("a1", PLUS), Letter("a1", MINUS))).monodromy().is_identity()


def test_word_monodromy_reversed_product_oracle(d5):
    rng = random.Random(7)
    w = random_word(rng, d5, 3, positive=False)
    mats = []
    for l in w.letters:
        s, sb = d5.lift_pair(d5.oriented(l.curve, l.theta))
        m = sp(transvection(s)) * sp(transvection(sb)).inv()
        mats.append(m if l.exponent == 1 else m.inv())
    assert sp(w.monodromy()) == mats[2] * mats[1] * mats[0]
    assert sp(w.monodromy()) != mats[0] * mats[1] * mats[2]


def test_apply_moves_reports_step(d3):
    w = Word(d3, "D2", (Letter("a1"), Letter("b1")))
    moves = [Move(MoveKind.INSERT_LEFT, 0, Letter("a1")), Move(MoveKind.DELETE, 3)]
    with pytest.raises(IllegalMoveError, match="step 1"):
        apply_moves(w, moves)


def test_free_reduce_leftmost(d3):
    a, b = Letter("a1"), Letter("b1")
    w = Word(d3, "D2", (a, b, b.inverse(), a.inverse(), b))
    r, moves = free_reduce(w)
    assert r.letters == (b,)
    assert [m.position for m in moves] == [1, 0]


@settings(max_examples=60)
@given(words, st.lists(st.tuples(st.integers(0, 20), letters), max_size=3))
def test_free_reduction_confluent(w, plants):
    for pos, l in plants:
        w = insert_cancelling_pair(w, min(pos, len(w)), l, "left")
    r, _ = free_reduce(w)
    assert all_maximal_reductions(w.key()[2]) == {r.key()[2]}
    assert r.monodromy() == w.monodromy()
