import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qawa.combinatorics import (
    act_positions, all_permutations, check_permutation, compose, format_scalar, from_word,
    identity, inverse, left_descent, length, parse_scalar, reduced_word, simple_transposition,
)


def brute_length(w):
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


class TestScalars:
    def test_parse_forms(self):
        assert parse_scalar("2/3") == Fraction(2, 3)
        assert parse_scalar(" -4 ") == -4
        assert parse_scalar(7) == 7
        assert parse_scalar(Fraction(1, 2)) == Fraction(1, 2)

    @pytest.mark.parametrize("bad", ["1/0", "", "x", "1.5", 1.5, True, None, "1/2/3"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_scalar(bad)

    def test_format_round_trip(self):
        for c in (Fraction(0), Fraction(-3), Fraction(5, 7), Fraction(-1, 2)):
            assert parse_scalar(format_scalar(c)) == c
        assert format_scalar(Fraction(4, 2)) == "2"


class TestExamples:
    def test_compose(self):
        assert compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1)
        assert compose((2, 3, 1), identity(3)) == (2, 3, 1)
        assert compose((2, 1), (2, 1)) == (1, 2)

    def test_length(self):
        assert length(identity(4)) == 0
        assert length((2, 1, 3)) == 1
        assert length((3, 2, 1)) == brute_length((3, 2, 1)) == 3

    def test_reduced_word(self):
        assert reduced_word(identity(3)) == []
        assert reduced_word((2, 1, 3)) == [1]
        assert reduced_word((3, 2, 1)) == [1, 2, 1]
        assert from_word(3, [1, 2, 1]) == (3, 2, 1)

    def test_left_descent(self):
        assert left_descent(1, identity(2)) is False
        assert left_descent(1, (2, 1)) is True
        # length(s_2 * [3,1,2]) = length([2,1,3]) = 1 < 2, so i = 2 is a left descent
        w = (3, 1, 2)
        assert length(compose(simple_transposition(3, 2), w)) == 1
        assert left_descent(2, w) is True
        assert left_descent(1, w) is False

    def test_left_descent_range(self):
        with pytest.raises(IndexError):
            left_descent(3, (1, 2, 3))

    def test_act_positions(self):
        assert act_positions((2, 1), (1, 0)) == (0, 1)
        assert act_positions(identity(3), (4, -1, 2)) == (4, -1, 2)
        assert act_positions((2, 3, 1), (5, 0, -1)) == (-1, 5, 0)

    def test_bad_permutation(self):
        with pytest.raises(ValueError):
            check_permutation((1, 1, 2))
        with pytest.raises(IndexError):
            simple_transposition(3, 3)


class TestProperties:
    @given(perms)
    def test_word_recomposes(self, w):
        word = reduced_word(w)
        assert from_word(len(w), word) == w
        assert len(word) == length(w) == brute_length(w)

    @given(perms, st.data())
    def test_length_changes_by_one(self, w, data):
        if len(w) < 2:
            return
        i = data.draw(st.integers(1, len(w) - 1))
        assert abs(length(compose(w, simple_transposition(len(w), i))) - length(w)) == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_left_descent_exhaustive(self, n):
        for w in all_permutations(n):
            for i in range(1, n):
                s = simple_transposition(n, i)
                assert left_descent(i, w) == (length(compose(s, w)) < length(w))

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(
        st.permutations(list(range(1, n + 1))), st.permutations(list(range(1, n + 1))),
        st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
    def test_action_is_a_left_action(self, args):
        u, v, lam = (tuple(x) for x in args)
        assert act_positions(compose(u, v), lam) == act_positions(u, act_positions(v, lam))

    @given(perms)
    def test_inverse(self, w):
        assert compose(w, inverse(w)) == identity(len(w))
        assert length(inverse(w)) == length(w)

    def test_all_permutations_lex(self):
        ps = all_permutations(3)
        assert len(ps) == 6 and list(ps) == sorted(ps)
