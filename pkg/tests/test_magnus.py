"""Truncated series model of free nilpotent and dimension quotients."""

import random

import pytest

from polyaug.freegroup import (free_reduce, generator, parse_word,
                               word_commutator, word_inv, word_mul, word_pow)
from polyaug.magnus import (GroupModel, TruncatedSeries, apply_substitution,
                            dim_subgroup_member, gamma_weight, magnus_embed,
                            series_equal_in_model, truncated_mul)


def dim_subgroup_of_Z_oracle(c, p):
    """D_{c,p}(Z) = p^j Z for the least j with p^j >= c (product formula:
    only gamma_1 = Z contributes)."""
    pj = 1
    while pj < c:
        pj *= p
    return pj


class TestEmbedding:
    def test_empty_word(self):
        w = free_reduce([], 2)
        assert magnus_embed(w, GroupModel("nilpotent", 3)).is_one()

    def test_generator(self):
        w = generator(2, 1)
        s = magnus_embed(w, GroupModel("nilpotent", 3))
        assert s.terms == {(): 1, (1,): 1}

    def test_inverse_generator(self):
        w = word_inv(generator(1, 1))
        s = magnus_embed(w, GroupModel("nilpotent", 3))
        assert s.terms == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}
        # multiplying by (1 + X) must give 1 modulo degree > 3
        x = magnus_embed(generator(1, 1), GroupModel("nilpotent", 3))
        assert truncated_mul(x, s).is_one()

    def test_homomorphism_law(self):
        rng = random.Random(4)
        model = GroupModel("nilpotent", 4)
        for _ in range(25):
            letters = lambda: [rng.choice([1, -1, 2, -2]) for _ in range(6)]
            u = free_reduce(letters(), 2)
            v = free_reduce(letters(), 2)
            lhs = magnus_embed(word_mul(u, v), model)
            rhs = truncated_mul(magnus_embed(u, model), magnus_embed(v, model))
            assert lhs == rhs

    def test_mul_kind_mismatch(self):
        a = TruncatedSeries.one(1, 2)
        b = TruncatedSeries.one(1, 3)
        with pytest.raises(ValueError):
            truncated_mul(a, b)

    def test_product_example(self):
        x1 = magnus_embed(generator(2, 1), GroupModel("nilpotent", 2))
        x2 = magnus_embed(generator(2, 2), GroupModel("nilpotent", 2))
        assert truncated_mul(x1, x2).terms == \
            {(): 1, (1,): 1, (2,): 1, (1, 2): 1}


class TestGammaWeight:
    def test_generator_weight_one(self):
        assert gamma_weight(generator(2, 1), 3) == 1

    def test_commutator_weight_two(self):
        x, y = generator(2, 1), generator(2, 2)
        w = word_commutator(x, y)
        assert gamma_weight(w, 3) == 2
        img = magnus_embed(w, GroupModel("nilpotent", 2))
        assert img.terms[(1, 2)] == 1 and img.terms[(2, 1)] == -1

    def test_left_normed_weight_three(self):
        x, y = generator(2, 1), generator(2, 2)
        w = word_commutator(word_commutator(x, y), x)
        assert gamma_weight(w, 4) == 3

    def test_basic_commutator_weights_to_four(self):
        gens = [generator(3, i) for i in (1, 2, 3)]
        x, y, z = gens
        cases = [(x, 1), (word_commutator(x, y), 2),
                 (word_commutator(word_commutator(x, y), z), 3),
                 (word_commutator(word_commutator(word_commutator(x, y), z), x), 4)]
        for w, weight in cases:
            assert gamma_weight(w, 5) == weight

    def test_all_left_normed_basic_commutators_to_weight_four(self):
        # left-normed [x_{i1}, x_{i2}, ..., x_{ik}] with i1 > i2 <= i3 <= ...
        # are basic commutators, hence of weight exactly k
        import itertools

        for k in (2, 3, 4):
            for seq in itertools.product((1, 2, 3), repeat=k):
                if not (seq[0] > seq[1] and
                        all(a <= b for a, b in zip(seq[1:], seq[2:]))):
                    continue
                w = generator(3, seq[0])
                for i in seq[1:]:
                    w = word_commutator(w, generator(3, i))
                assert gamma_weight(w, 5) == k, seq

    def test_exceeds_cap(self):
        x, y = generator(2, 1), generator(2, 2)
        w = word_commutator(word_commutator(x, y), x)  # weight 3
        assert gamma_weight(w, 2) is None

    def test_nilpotent_soundness_both_directions(self):
        x, y = generator(2, 1), generator(2, 2)
        for c in (1, 2, 3):
            model = GroupModel("nilpotent", c)
            pairs = [(word_mul(x, y), word_mul(y, x)),
                     (word_commutator(x, y), free_reduce([], 2)),
                     (word_mul(word_commutator(x, y), x),
                      word_mul(x, word_commutator(x, y)))]
            for u, v in pairs:
                quotient = word_mul(u, word_inv(v))
                weight = gamma_weight(quotient, c)
                equal = series_equal_in_model(u, v, model)
                assert equal == (weight is None)


class TestDimensionSubgroups:
    def test_x4_in_D32(self):
        w = word_pow(generator(1, 1), 4)
        assert dim_subgroup_member(w, 3, 2)

    def test_x2_not_in_D32(self):
        w = word_pow(generator(1, 1), 2)
        assert not dim_subgroup_member(w, 3, 2)

    def test_identity_always_member(self):
        e = free_reduce([], 2)
        assert dim_subgroup_member(e, 5, 3)

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            dim_subgroup_member(generator(1, 1), 2, 4)

    @pytest.mark.parametrize("p", [2, 3])
    def test_power_law_matches_product_formula(self, p):
        # x^(p^j) lies in D_{c,p}(F_1) iff p^j Z is inside D_{c,p}(Z)
        for c in range(1, 10):
            bound = dim_subgroup_of_Z_oracle(c, p)
            for j in (1, p, p * p):
                w = word_pow(generator(1, 1), j)
                assert dim_subgroup_member(w, c, p) == (j % bound == 0)


class TestSubstitution:
    def test_commutator_collapses(self):
        x, y = generator(2, 1), generator(2, 2)
        w = word_commutator(x, y)
        img = apply_substitution(w, [generator(1, 1), generator(1, 1)],
                                 GroupModel("nilpotent", 3))
        assert img.is_one()

    def test_diagonal_substitution(self):
        w = generator(1, 1)
        xy = parse_word("x1 x2", 2)
        img = apply_substitution(w, [xy], GroupModel("nilpotent", 2))
        assert img.terms == {(): 1, (1,): 1, (2,): 1, (1, 2): 1}

    def test_identity_substitution(self):
        model = GroupModel("nilpotent", 3)
        w = parse_word("x1 x2 X1", 2)
        img = apply_substitution(w, [generator(2, 1), generator(2, 2)], model)
        assert img == magnus_embed(w, model)

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            apply_substitution(generator(2, 1), [generator(1, 1)],
                               GroupModel("nilpotent", 2))

    def test_functoriality_random(self):
        rng = random.Random(9)
        model = GroupModel("nilpotent", 3)
        for _ in range(10):
            w = free_reduce([rng.choice([1, -1, 2, -2]) for _ in range(5)], 2)
            images = [free_reduce([rng.choice([1, -1, 2, -2])
                                   for _ in range(3)], 2) for _ in range(2)]
            # substitute first, then embed
            subbed = free_reduce(
                [l for x in w.letters
                 for l in (images[abs(x) - 1].letters if x > 0
                           else word_inv(images[abs(x) - 1]).letters)], 2)
            assert apply_substitution(w, images, model) == \
                magnus_embed(subbed, model)


class TestModel:
    def test_model_validation(self):
        with pytest.raises(ValueError):
            GroupModel("dim", 2, 4)
        with pytest.raises(ValueError):
            GroupModel("weird", 2)

    def test_series_str_sorted(self):
        s = magnus_embed(parse_word("x1 x2", 2), GroupModel("nilpotent", 2))
        assert str(s) == "1:1 + X1:1 + X1X2:1 + X2:1"
