import random
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from permpat.core import (
    OccurrenceList,
    Permutation,
    Word,
    complement,
    count_occurrences,
    find_occurrences,
    flatten,
    iter_occurrences,
    make_permutation,
    parse_compact,
    parse_permutation,
    reverse,
)

from conftest import brute_occurrence_list


@st.composite
def perms(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    values = draw(st.permutations(list(range(1, n + 1))))
    return Permutation(tuple(values))


@st.composite
def patterns(draw, max_m=4):
    m = draw(st.integers(1, max_m))
    values = draw(st.permutations(list(range(1, m + 1))))
    return Permutation(tuple(values))


class TestMakePermutation:
    def test_identity_case(self):
        assert make_permutation([1]).values == (1,)

    def test_order_preserved(self):
        assert make_permutation((2, 1, 3)).values == (2, 1, 3)

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            make_permutation((2, 2, 1))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            make_permutation((1, 3))
        with pytest.raises(ValueError, match="outside"):
            make_permutation((0, 1))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            make_permutation(())

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            make_permutation((True, 2))

    def test_str_is_comma_separated(self):
        assert str(make_permutation((2, 1, 3))) == "2,1,3"

    def test_compact(self):
        assert make_permutation((2, 1, 4, 3)).compact() == "2143"


class TestFlatten:
    @pytest.mark.parametrize("word, expected", [
        ((5, 2, 9), (2, 1, 3)),
        ((1, 2, 3), (1, 2, 3)),
        ((10, -3, 7, 0), (4, 1, 3, 2)),
    ])
    def test_rank_map(self, word, expected):
        assert flatten(Word(word)).values == expected
        assert flatten(word).values == expected

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            flatten((3, 3, 1))
        with pytest.raises(ValueError):
            Word((3, 3, 1))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            flatten(())

    @given(perms())
    def test_flatten_of_permutation_is_identity(self, p):
        assert flatten(p) == p

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=8, unique=True))
    def test_idempotent(self, entries):
        once = flatten(entries)
        assert flatten(once) == once


class TestSymmetries:
    @pytest.mark.parametrize("values, expected", [
        ((1,), (1,)),
        ((1, 2, 3), (3, 2, 1)),
        ((2, 4, 1, 3), (3, 1, 4, 2)),
    ])
    def test_complement(self, values, expected):
        assert complement(Permutation(values)).values == expected

    @pytest.mark.parametrize("values, expected", [
        ((1,), (1,)),
        ((1, 2, 3), (3, 2, 1)),
        ((2, 4, 1, 3), (3, 1, 4, 2)),
    ])
    def test_reverse(self, values, expected):
        assert reverse(Permutation(values)).values == expected

    @given(perms())
    def test_involutions(self, p):
        assert complement(complement(p)) == p
        assert reverse(reverse(p)) == p

    @given(perms(max_n=6), patterns(max_m=3))
    def test_occurrence_counts_respect_symmetry(self, host, pattern):
        base = count_occurrences(host, pattern)
        assert count_occurrences(complement(host), complement(pattern)) == base
        assert count_occurrences(reverse(host), reverse(pattern)) == base


class TestOccurrences:
    def test_known_count(self):
        # brute force over all C(4,3) index triples gives exactly these two
        host = Permutation((1, 3, 2, 4))
        pat = Permutation((1, 2, 3))
        assert brute_occurrence_list(host.values, pat.values) == [(1, 2, 4), (1, 3, 4)]
        assert count_occurrences(host, pat) == 2

    def test_pattern_longer_than_host(self):
        assert count_occurrences(Permutation((1, 2, 3)),
                                 Permutation((1, 2, 3, 4))) == 0

    def test_capped_count(self):
        host = Permutation((1, 3, 2, 4))
        assert count_occurrences(host, Permutation((1, 2, 3)), cap=1) == 1

    def test_cap_must_be_positive(self):
        with pytest.raises(ValueError):
            count_occurrences(Permutation((1, 2)), Permutation((1, 2)), cap=0)

    def test_find_occurrences_listing(self):
        host = Permutation((1, 3, 2, 4))
        got = find_occurrences(host, Permutation((1, 2, 3)), limit=10)
        assert got.positions == ((1, 2, 4), (1, 3, 4))
        assert not got.truncated

    def test_find_occurrences_none(self):
        got = find_occurrences(Permutation((2, 1)), Permutation((1, 2)), limit=10)
        assert got.positions == ()
        assert not got.truncated

    def test_find_occurrences_truncation(self):
        host = Permutation((1, 3, 2, 4))
        got = find_occurrences(host, Permutation((1, 2, 3)), limit=1)
        assert got.positions == ((1, 2, 4),)
        assert got.truncated

    def test_limit_must_be_positive(self):
        with pytest.raises(ValueError):
            find_occurrences(Permutation((1, 2)), Permutation((1, 2)), limit=0)

    def test_whole_host_occurrence(self):
        got = find_occurrences(Permutation((1, 3, 2)), Permutation((1, 3, 2)), limit=5)
        assert got.positions == ((1, 2, 3),)

    def test_matches_brute_force_on_random_grid(self):
        rng = random.Random(20240811)
        for _ in range(300):
            n = rng.randint(1, 7)
            m = rng.randint(1, min(4, n + 1))
            host = list(range(1, n + 1))
            rng.shuffle(host)
            pat = list(range(1, m + 1))
            rng.shuffle(pat)
            H = Permutation(tuple(host))
            P = Permutation(tuple(pat))
            expected = brute_occurrence_list(host, pat)
            assert list(iter_occurrences(H, P)) == expected
            assert count_occurrences(H, P) == len(expected)
            for cap in (1, 2):
                assert count_occurrences(H, P, cap=cap) == min(len(expected), cap)

    @given(perms(max_n=6), patterns(max_m=3))
    def test_count_equals_listing_size(self, host, pattern):
        listing = find_occurrences(host, pattern, limit=10 ** 6)
        assert count_occurrences(host, pattern) == len(listing.positions)
        assert not listing.truncated

    @given(st.integers(2, 3), st.integers(3, 6))
    def test_total_over_all_patterns_is_binomial(self, k, n):
        from math import comb
        rng = random.Random(k * 100 + n)
        host_vals = list(range(1, n + 1))
        rng.shuffle(host_vals)
        host = Permutation(tuple(host_vals))
        total = sum(
            count_occurrences(host, Permutation(p))
            for p in permutations(range(1, k + 1))
        )
        assert total == comb(n, k)


class TestOccurrenceListInvariants:
    def test_rejects_bad_tuple_length(self):
        with pytest.raises(ValueError):
            OccurrenceList(pattern=Permutation((1, 2)), host_length=4,
                           positions=((1, 2, 3),), truncated=False)

    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError):
            OccurrenceList(pattern=Permutation((1, 2)), host_length=4,
                           positions=((2, 2),), truncated=False)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            OccurrenceList(pattern=Permutation((1, 2)), host_length=3,
                           positions=((1, 4),), truncated=False)


class TestParsing:
    @pytest.mark.parametrize("text", ["2,1,3", "2 1 3", " 2, 1 ,3 "])
    def test_accepts_both_separators(self, text):
        assert parse_permutation(text).values == (2, 1, 3)

    @pytest.mark.parametrize("text", ["", "a,b", "2,2,1", "0,1", "1,3"])
    def test_rejects_invalid(self, text):
        with pytest.raises(ValueError):
            parse_permutation(text)

    def test_parse_compact(self):
        assert parse_compact("2143").values == (2, 1, 4, 3)

    @pytest.mark.parametrize("text", ["", "120", "a13", "22"])
    def test_parse_compact_rejects(self, text):
        with pytest.raises(ValueError):
            parse_compact(text)
