"""Root system and Weyl group combinatorics."""

from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from sp4eis.roots import CRootSystem, is_negative, vector

SYS = CRootSystem(2)

E1 = vector(1, 0)
E2 = vector(0, 1)
A1 = vector(1, -1)   # e1 - e2
A2 = vector(0, 2)    # 2 e2
B1 = vector(1, 1)    # e1 + e2
B2 = vector(2, 0)    # 2 e1


def test_positive_roots_rank2():
    assert SYS.positive_roots() == [A1, A2, B1, B2]
    assert SYS.simple_roots() == [A1, A2]


def test_positive_roots_rank1():
    assert CRootSystem(1).positive_roots() == [vector(2)]


def test_positive_roots_rank3_count():
    # type C_3 has 9 positive roots
    assert len(CRootSystem(3).positive_roots()) == 9


def test_coroots():
    assert SYS.coroot(A1) == A1
    assert SYS.coroot(A2) == E2
    assert SYS.coroot(B1) == B1
    assert SYS.coroot(B2) == E1
    with pytest.raises(ValueError):
        SYS.coroot(vector(1, 2))
    with pytest.raises(ValueError):
        SYS.coroot(vector(3, 0))


def test_generator_actions():
    s = SYS.generator("s")
    c2 = SYS.generator("c2")
    assert s.apply(E1) == E2
    assert s.apply(E2) == E1
    assert c2.apply(E2) == vector(0, -1)
    assert c2.apply(E1) == E1
    ident = SYS.identity()
    assert ident.apply(B1) == B1


def test_group_order_and_axioms():
    elements = SYS.elements()
    assert len(elements) == 8
    s = SYS.generator("s")
    c2 = SYS.generator("c2")
    assert SYS.multiply(s, s).is_identity()
    assert SYS.multiply(c2, c2).is_identity()
    # braid relation: s*c2 has order 4
    sc2 = SYS.multiply(s, c2)
    power = sc2
    orders = []
    for k in range(1, 5):
        orders.append(power.is_identity())
        power = SYS.multiply(power, sc2)
    assert orders == [False, False, False, True]


def test_words_reproduce_normal_form():
    for w in SYS.elements():
        assert SYS.from_word(w.word) == w
        assert w.length == len(SYS.negative_set(w))


def test_negative_sets_match_brute_force():
    # oracle: act on every positive root directly
    for w in SYS.elements():
        expected = [a for a in SYS.positive_roots() if is_negative(w.apply(a))]
        assert SYS.negative_set(w) == expected


def test_negative_set_examples():
    c1 = SYS.element_by_name("c1")
    assert SYS.negative_set(c1) == [A1, B1, B2]
    assert SYS.negative_set(SYS.element_by_name("c2s")) == [A1, B2]
    assert SYS.negative_set(SYS.identity()) == []


def test_c1_aliases():
    assert SYS.element_by_name("c1").name == "sc2s"
    assert SYS.element_by_name("sc1").name == "c2s"
    assert SYS.element_by_name("c1") == SYS.from_word(["s", "c2", "s"])


def test_inverse_negative_set_relation():
    # negatives of the inverse are the negated images of the negatives
    for w in SYS.elements():
        winv = SYS.inverse(w)
        lhs = set(SYS.negative_set(winv))
        rhs = {tuple(-c for c in w.apply(a)) for a in SYS.negative_set(w)}
        assert lhs == rhs


def _coset_reps_by_words(keep):
    """Independent oracle: enumerate reduced words breadth-first and filter."""
    seen = {}
    frontier = [SYS.identity()]
    while frontier:
        nxt = []
        for w in frontier:
            if (w.perm, w.signs) in seen:
                continue
            seen[(w.perm, w.signs)] = w
            for g in SYS.generator_names():
                nxt.append(SYS.multiply(w, SYS.generator(g)))
        frontier = nxt
    reps = [w for w in seen.values()
            if all(not is_negative(w.apply(a)) for a in keep)]
    return sorted(reps, key=lambda w: w.sort_key())


def test_coset_reps_heisenberg():
    reps = SYS.coset_reps([A2])
    assert [w.name for w in reps] == ["id", "s", "c2s", "sc2s"]
    assert sorted(w.length for w in reps) == [0, 1, 2, 3]
    assert reps == _coset_reps_by_words([A2])


def test_coset_reps_siegel():
    reps = SYS.coset_reps([A1])
    assert [w.name for w in reps] == ["id", "c2", "sc2", "c2sc2"]
    assert reps == _coset_reps_by_words([A1])


def test_coset_reps_full_delta():
    assert [w.name for w in SYS.coset_reps([A1, A2])] == ["id"]


def test_coset_reps_rejects_non_simple():
    with pytest.raises(ValueError):
        SYS.coset_reps([B1])


@given(st.lists(st.sampled_from(["s", "c2"]), max_size=12))
def test_word_products_consistent(word):
    w = SYS.from_word(word)
    # the stored word is reduced and reproduces the same signed permutation
    assert len(w.word) <= len(word)
    assert SYS.from_word(w.word) == w
    assert w.length == len(SYS.negative_set(w))
    # group action property against a direct fold
    v = vector(Q(3), Q(-5))
    folded = v
    for g in reversed(word):
        folded = SYS.generator(g).apply(folded)
    assert w.apply(v) == folded
