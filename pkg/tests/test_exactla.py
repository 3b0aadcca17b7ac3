"""Exact linear algebra: ranks, Smith form, integer power series."""

import random

import pytest

from polyaug.exactla import (ExactMatrix, quotient_invariants, rank_over_field,
                             series_expand, smith_invariants,
                             subspace_membership)
from polyaug.fields import GF, QQ, ZZ
from polyaug.spans import ZLattice


def brute_series_product(a, b, cap):
    out = [0] * (cap + 1)
    for i, x in enumerate(a[:cap + 1]):
        for j, y in enumerate(b[:cap + 1]):
            if i + j <= cap:
                out[i + j] += x * y
    return out


def diagonal_invariants_oracle(diag):
    """Smith invariants of a diagonal integer matrix by pairwise gcd/lcm
    normalization (independent of the elimination code path)."""
    from math import gcd

    vals = [abs(d) for d in diag if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                g = gcd(vals[i], vals[j])
                l = vals[i] * vals[j] // g if g else 0
                if (g, l) != (vals[i], vals[j]):
                    vals[i], vals[j] = g, l
                    changed = True
    return sorted(vals)


class TestRank:
    def test_repeated_row_mod2(self):
        m = ExactMatrix([[1, 1], [1, 1]], GF(2))
        assert rank_over_field(m)[0] == 1

    def test_identity_over_q(self):
        m = ExactMatrix([[1, 0], [0, 1]], QQ)
        assert rank_over_field(m)[0] == 2

    def test_aug_square_of_group_algebra_char2(self):
        # u = g - 1 in F_2[Z/2]; u^2 = g^2 - 2g + 1 = 0, so the single row
        # spanning Aug^2 is zero
        u_squared = [0, 0]
        m = ExactMatrix([u_squared], GF(2))
        assert rank_over_field(m)[0] == 0

    def test_integer_input_rejected(self):
        with pytest.raises(TypeError):
            rank_over_field(ExactMatrix([[1]], ZZ))

    def test_rank_matches_smith_count(self):
        rng = random.Random(5)
        for _ in range(25):
            rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
            r, _ = rank_over_field(ExactMatrix(rows, QQ))
            inv = smith_invariants(ExactMatrix(rows, ZZ))
            assert r == len(inv)


class TestSmith:
    def test_diag_2_3(self):
        got = smith_invariants(ExactMatrix([[2, 0], [0, 3]], ZZ))
        assert got == diagonal_invariants_oracle([2, 3]) == [1, 6]

    def test_identity(self):
        assert smith_invariants(ExactMatrix([[1, 0], [0, 1]], ZZ)) == [1, 1]

    def test_single(self):
        assert smith_invariants(ExactMatrix([[2]], ZZ)) == [2]

    def test_divisibility_chain(self):
        rng = random.Random(17)
        for _ in range(20):
            rows = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
            inv = smith_invariants(ExactMatrix(rows, ZZ))
            for a, b in zip(inv, inv[1:]):
                assert b % a == 0

    def test_field_input_rejected(self):
        with pytest.raises(TypeError):
            smith_invariants(ExactMatrix([[1]], QQ))


class TestMembership:
    def test_difference_of_generators(self):
        assert subspace_membership([[1, 1, 0], [0, 1, 1]], [1, 0, -1], QQ)

    def test_zero_in_empty_span(self):
        assert subspace_membership([], [0, 0], QQ)

    def test_not_in_span(self):
        assert not subspace_membership([[1, 0]], [0, 1], QQ)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            subspace_membership([[1, 0]], [1, 0, 0], QQ)

    def test_invariance_under_scaling_and_exchange(self):
        rng = random.Random(23)
        for _ in range(20):
            basis = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)]
            v = [a + b for a, b in zip(*basis)]
            assert subspace_membership(basis, v, QQ)
            scaled = [[3 * x for x in basis[1]], [-2 * x for x in basis[0]]]
            assert subspace_membership(scaled, v, QQ)


class TestSeries:
    def test_direct_expansion(self):
        assert series_expand([(1, 2), (2, 1)], 4) == [1, 2, 4, 6, 9]

    def test_empty_product(self):
        assert series_expand([], 4) == [1, 0, 0, 0, 0]

    def test_witt_identity_via_brute_multiplication(self):
        # prod_{d<=6} (1-t^d)^(-w_2(d)) agrees with 1/(1-2t) through degree 6
        from polyaug.freegroup import witt_rank

        got = series_expand([(d, witt_rank(2, d)) for d in range(1, 7)], 6)
        # brute oracle: multiply the expansion by (1 - 2t) and compare with 1
        check = brute_series_product(got, [1, -2, 0, 0, 0, 0, 0], 6)
        assert check == [1, 0, 0, 0, 0, 0, 0]
        assert got == [2 ** d for d in range(7)]

    def test_multiplicative_inverse_property(self):
        rng = random.Random(3)
        for _ in range(10):
            factors = [(rng.randint(1, 4), rng.randint(-3, 3)) for _ in range(3)]
            a = series_expand(factors, 8)
            b = series_expand([(i, -e) for i, e in factors], 8)
            assert brute_series_product(a, b, 8) == [1] + [0] * 8

    def test_negative_cap_rejected(self):
        with pytest.raises(ValueError):
            series_expand([], -1)


class TestQuotientInvariants:
    def test_simple_quotient(self):
        outer = ZLattice(2)
        outer.insert([1, 0])
        outer.insert([0, 1])
        inner = ZLattice(2)
        inner.insert([2, 0])
        inner.insert([0, 3])
        assert quotient_invariants(outer, inner) == [6]

    def test_free_part(self):
        outer = ZLattice(2)
        outer.insert([1, 0])
        outer.insert([0, 1])
        inner = ZLattice(2)
        inner.insert([2, 0])
        assert quotient_invariants(outer, inner) == [2, 0]
