import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from iepoly.core import (
    DEFAULT_SUBSET_CAP,
    ExpandOptions,
    IEPolynomial,
    apply_factors,
    degree_of,
    eval_at_one,
    expand,
    factor_system,
    height,
    is_palindromic,
    ordered_factors,
    validate_tuple,
)
from iepoly.errors import (
    DegreeCapExceeded,
    EmptyTuple,
    EntryBelowTwo,
    NotCoprime,
    NotIncreasing,
    OverflowInFastPath,
    TupleTooLarge,
)

FIRST_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73]


class TestValidate:
    def test_basic(self):
        rho = validate_tuple([3, 5, 7])
        assert rho.k == 3
        assert rho.m == 105
        assert rho.qs == (3, 5, 7)

    def test_empty(self):
        with pytest.raises(EmptyTuple):
            validate_tuple([])

    def test_not_increasing(self):
        with pytest.raises(NotIncreasing):
            validate_tuple([5, 3])
        with pytest.raises(NotIncreasing):
            validate_tuple([3, 3])

    def test_entry_below_two(self):
        with pytest.raises(EntryBelowTwo) as err:
            validate_tuple([1, 3])
        assert err.value.index == 0

    def test_not_coprime_identifies_pair(self):
        with pytest.raises(NotCoprime) as err:
            validate_tuple([3, 6])
        assert (err.value.i, err.value.j) == (0, 1)
        assert err.value.gcd == 3
        with pytest.raises(NotCoprime) as err:
            validate_tuple([5, 7, 9, 21])
        assert (err.value.i, err.value.j) == (1, 3)


class TestFactorSystem:
    def test_pair(self):
        fs = factor_system(validate_tuple([2, 3]))
        assert sorted(fs.factors) == [(1, 1), (2, -1), (3, -1), (6, 1)]

    def test_singleton(self):
        fs = factor_system(validate_tuple([7]))
        assert sorted(fs.factors) == [(1, -1), (7, 1)]

    def test_triple_signed_degree_sum(self):
        fs = factor_system(validate_tuple([3, 5, 7]))
        assert len(fs.factors) == 8
        assert fs.signed_degree_sum() == 2 * 4 * 6

    @pytest.mark.parametrize("qs", [(2,), (2, 3), (4, 9), (3, 5, 7), (2, 3, 5, 7)])
    def test_invariants(self, qs):
        rho = validate_tuple(qs)
        fs = factor_system(rho)
        k = rho.k
        assert len(fs.factors) == 2**k
        assert sum(1 for _, s in fs.factors if s > 0) == 2 ** (k - 1)
        assert sum(1 for _, s in fs.factors if s < 0) == 2 ** (k - 1)
        ds = [d for d, _ in fs.factors]
        assert len(set(ds)) == len(ds)
        assert all(rho.m % d == 0 for d in ds)
        assert fs.signed_degree_sum() == degree_of(rho)

    def test_subset_cap(self):
        rho = validate_tuple(FIRST_PRIMES)
        assert rho.k == DEFAULT_SUBSET_CAP + 1
        with pytest.raises(TupleTooLarge):
            factor_system(rho)


def test_degree_of():
    assert degree_of(validate_tuple([3, 5])) == 8
    assert degree_of(validate_tuple([3, 5, 7])) == 48
    assert degree_of(validate_tuple([49, 51, 149])) == 355200


class TestExpand:
    def test_single_even(self):
        assert expand(validate_tuple([2])).coeffs == (1, 1)

    def test_pair(self):
        assert expand(validate_tuple([2, 3])).coeffs == (1, -1, 1)

    def test_triple_105(self):
        p = expand(validate_tuple([3, 5, 7]))
        assert p.degree == 48
        assert p.coeffs[7] == -2
        assert height(p) == 2
        assert is_palindromic(p)
        assert eval_at_one(p) == 1

    def test_degree_cap(self):
        with pytest.raises(DegreeCapExceeded):
            expand(validate_tuple([3, 5, 7]), ExpandOptions(degree_cap=10))

    def test_lanes_agree(self, small_corpus, random_corpus):
        for rho in small_corpus + random_corpus[:10]:
            fast = expand(rho, ExpandOptions(fast_path=True))
            slow = expand(rho, ExpandOptions(fast_path=False))
            assert fast.coeffs == slow.coeffs, rho

    def test_half_degree_matches_full(self, small_corpus):
        for rho in small_corpus:
            assert expand(rho, ExpandOptions(half_degree=True)).coeffs == expand(rho).coeffs

    def test_promotion_preserves_result(self, small_corpus):
        for rho in small_corpus:
            promoted = expand(rho, ExpandOptions(fast_path_limit=1))
            assert promoted.coeffs == expand(rho).coeffs

    def test_overflow_raises_when_promotion_disabled(self):
        rho = validate_tuple([3, 5, 7])
        with pytest.raises(OverflowInFastPath):
            expand(rho, ExpandOptions(fast_path_limit=1, promote_on_overflow=False))


class TestExpandProperties:
    def test_structure(self, small_corpus, random_corpus):
        for rho in small_corpus + random_corpus:
            p = expand(rho)
            assert p.degree == degree_of(rho)
            assert p.coeffs[0] == 1
            assert p.coeffs[-1] == 1
            assert is_palindromic(p)
            assert eval_at_one(p) == (rho.qs[0] if rho.k == 1 else 1)

    def test_binary_tuples_are_flat(self, random_corpus):
        seen = 0
        for rho in random_corpus:
            if rho.k != 2:
                continue
            seen += 1
            p = expand(rho)
            assert height(p) == 1
            assert set(p.coeffs) <= {-1, 0, 1}
        assert seen > 0

    def test_order_independence(self, small_corpus):
        rng = random.Random(20250808)
        for rho in small_corpus:
            factors = ordered_factors(factor_system(rho))
            window = degree_of(rho) + 1
            reference = apply_factors(window, factors)
            for _ in range(3):
                shuffled = factors[:]
                rng.shuffle(shuffled)
                assert apply_factors(window, shuffled) == reference
                assert apply_factors(window, shuffled, ExpandOptions(fast_path=False)) == reference


@settings(max_examples=60, deadline=None)
@given(a=st.integers(2, 60), b=st.integers(2, 60))
def test_two_element_tuples_have_unit_coefficients(a, b):
    assume(a < b and math.gcd(a, b) == 1)
    p = expand(validate_tuple([a, b]))
    assert set(p.coeffs) <= {-1, 0, 1}


class TestMeasures:
    def test_height_examples(self):
        assert height(expand(validate_tuple([2, 3]))) == 1
        assert height(expand(validate_tuple([2]))) == 1
        assert height(IEPolynomial((1, -5, 3))) == 5

    def test_palindrome_examples(self):
        assert is_palindromic(IEPolynomial((1, -1, 1)))
        assert not is_palindromic(IEPolynomial((1, 2)))

    def test_eval_at_one_examples(self):
        assert eval_at_one(expand(validate_tuple([7]))) == 7
        assert eval_at_one(expand(validate_tuple([2, 3]))) == 1
        assert eval_at_one(expand(validate_tuple([3, 5, 7]))) == 1
