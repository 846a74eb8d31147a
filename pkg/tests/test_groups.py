import itertools
import random

import pytest
from hypothesis import given, strategies as st

from wallkit.errors import InputError
from wallkit.groups import (FiniteGroup, FreeGroup, FreeWord, GAction, IntegerGroup, ball, ball_size, left_cosets,
                            parse_word, reduce)

from oracles import generate_perms, reduce_letters

raw_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=20)


def test_cancellation():
    assert parse_word("aA").is_identity()
    assert parse_word("ab") * parse_word("Ba") == parse_word("aa")
    assert str(parse_word("abA")) == "abA"
    assert parse_word("1") == parse_word("e") == FreeWord(())


def test_rank_errors():
    with pytest.raises(InputError):
        reduce([3], rank=2)
    with pytest.raises(InputError):
        reduce([0])
    with pytest.raises(InputError):
        parse_word("a1b")


@given(raw_words, raw_words)
def test_reduction_respects_concatenation(u, v):
    assert reduce(u + v) == reduce(u) * reduce(v)
    assert reduce(u).letters == reduce_letters(u)


@given(raw_words)
def test_inverse(u):
    w = reduce(u)
    assert (w * w.inverse()).is_identity()
    assert (w.inverse() * w).is_identity()


def test_ball_sizes():
    assert [len(ball(2, r)) for r in range(4)] == [1, 5, 17, 53]
    for k, r in [(1, 3), (2, 4), (3, 3)]:
        words = ball(k, r)
        assert len(words) == ball_size(k, r) == len(set(words))
        assert all(len(w) <= r for w in words)
        assert words == sorted(words, key=FreeWord.shortlex)


def test_ball_matches_brute_force():
    letters = [1, -1, 2, -2]
    brute = {reduce(w) for n in range(5) for w in itertools.product(letters, repeat=n)}
    assert set(ball(2, 4)) == brute


def test_free_group_surface():
    F = FreeGroup(2)
    assert [F.format(g) for g in F.generators()] == ["a", "A", "b", "B"]
    with pytest.raises(InputError):
        F.parse("c")


def test_finite_group_validation():
    with pytest.raises(InputError):
        FiniteGroup([[0, 1], [0, 1]])
    # a Latin square that is not associative
    with pytest.raises(InputError):
        FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_from_text_line_numbers():
    with pytest.raises(InputError, match="line 3"):
        FiniteGroup.from_text("2\n0 1\n1 x\n")
    G = FiniteGroup.from_text(FiniteGroup.cyclic(5).to_text())
    assert G.order == 5 and G.mul(3, 4) == 2


def test_symmetric_group_against_permutations():
    S4 = FiniteGroup.symmetric(4)
    assert S4.order == 24
    gens = [(1, 0, 2, 3), (1, 2, 3, 0)]
    assert len(generate_perms(gens)) == 24
    for a in S4.elements:
        for b in S4.elements:
            pa, pb = S4.labels[a], S4.labels[b]
            assert S4.labels[S4.mul(a, b)] == tuple(pa[x] for x in pb)


def test_word_lengths():
    Z6 = FiniteGroup.cyclic(6)
    assert Z6.word_lengths([1]) == [0, 1, 2, 3, 2, 1]
    assert -1 in Z6.word_lengths([2])


def test_action_axioms():
    D4 = FiniteGroup.dihedral(4)
    act = GAction(D4, 4, [D4.labels[g] for g in D4.elements])
    for g, h in itertools.product(D4.elements, repeat=2):
        for x in range(4):
            assert act.act(D4.mul(g, h), x) == act.act(g, act.act(h, x))
    assert all(act.act(D4.identity, x) == x for x in range(4))
    with pytest.raises(InputError):
        GAction(D4, 4, [(1, 0, 2, 3)] * D4.order)


def test_cosets_of_s3():
    S3 = FiniteGroup.symmetric(3)
    t = S3.element((1, 0, 2))
    cs = left_cosets(S3, [S3.identity, t])
    assert len(cs) == 3
    assert sorted(x for c in cs.cosets for x in c) == list(S3.elements)
    assert len(left_cosets(S3, S3.elements)) == 1
    assert len(left_cosets(S3, [S3.identity])) == 6
    with pytest.raises(InputError):
        left_cosets(S3, [S3.identity, S3.element((1, 2, 0))])


@given(st.integers(0, 23), st.sampled_from([[0], [0, 1], list(range(24))]))
def test_coset_membership(g, H):
    S4 = FiniteGroup.symmetric(4)
    H = sorted(S4.generated(H))
    cs = left_cosets(S4, H)
    coset = cs.cosets[cs.index_of(g)]
    assert set(coset) == {S4.mul(g, h) for h in H}


def test_integer_group():
    Z = IntegerGroup()
    assert Z.mul(3, -5) == -2 and Z.inv(4) == -4 and Z.identity == 0
