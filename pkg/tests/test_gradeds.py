"""Closed-form graded ranks and the interval/strictness computations."""

import pytest

from polyaug.gradeds import (dim_quotient_jennings_dims, dset_probe,
                             free_nilpotent_lie_ranks,
                             free_restricted_lie_dims, gamma_interval,
                             nilpotent_jennings_dims, product_scale,
                             q_ranks_nilpotent, restricted_pbw_dims,
                             strictness_from_ranks, symmetric_power_dims)


class TestLieRanks:
    def test_heisenberg(self):
        assert free_nilpotent_lie_ranks(2, 2) == [2, 1]

    def test_rank_one(self):
        assert free_nilpotent_lie_ranks(1, 4) == [1, 0, 0, 0]

    def test_class_three(self):
        assert free_nilpotent_lie_ranks(2, 3) == [2, 1, 2]

    def test_product_scale(self):
        assert product_scale([2, 1], 2) == [4, 2]
        assert product_scale([2, 1], 1) == [2, 1]
        assert product_scale([1], 3) == [3]
        with pytest.raises(ValueError):
            product_scale([1], 0)


class TestSymmetricPowers:
    def test_heisenberg_series(self):
        assert symmetric_power_dims([2, 1], 4) == [1, 2, 4, 6, 9]

    def test_binomial(self):
        assert symmetric_power_dims([2], 4) == [1, 2, 3, 4, 5]

    def test_empty(self):
        assert symmetric_power_dims([], 4) == [1, 0, 0, 0, 0]


class TestQRanks:
    def test_heisenberg(self):
        assert q_ranks_nilpotent(2, 1, 2, 4) == [1, 2, 4, 6, 9]

    def test_integers(self):
        assert q_ranks_nilpotent(1, 1, 1, 3) == [1, 1, 1, 1]

    def test_tensor_algebra_identity(self):
        for n in (2, 3):
            assert q_ranks_nilpotent(n, 1, None, 6) == \
                [n ** d for d in range(7)]


class TestRestricted:
    def test_free_jennings_rank_one_p2(self):
        dims = free_restricted_lie_dims(1, 2, 8)
        want = [1 if d in (1, 2, 4, 8) else 0 for d in range(1, 9)]
        assert dims == want

    def test_free_jennings_two_gens_p2(self):
        assert free_restricted_lie_dims(2, 2, 4) == [2, 3, 2, 6]

    def test_free_jennings_rank_one_p3(self):
        assert free_restricted_lie_dims(1, 3, 3) == [1, 0, 1]

    def test_pbw_p2(self):
        assert restricted_pbw_dims([2, 1], 2, 4) == [1, 2, 2, 2, 1]

    def test_pbw_p3(self):
        assert restricted_pbw_dims([2, 1], 3, 8) == [1, 2, 4, 4, 5, 4, 4, 2, 1]

    def test_pbw_p0_is_symmetric(self):
        assert restricted_pbw_dims([2, 1], 0, 5) == \
            symmetric_power_dims([2, 1], 5)

    def test_coefficient_sum_is_p_power(self):
        for p, ranks in ((2, [2, 1]), (3, [2, 1]), (2, [1, 1, 1])):
            dims = restricted_pbw_dims(ranks, p, p * sum(
                (i + 1) * r for i, r in enumerate(ranks)))
            assert sum(dims) == p ** sum(ranks)

    def test_quillen_self_consistency(self):
        # the graded group algebra of a free group is the tensor algebra
        for n, p, cap in ((1, 2, 8), (2, 2, 5), (2, 3, 5)):
            dims = restricted_pbw_dims(free_restricted_lie_dims(n, p, cap),
                                       p, cap)
            assert dims == [n ** d for d in range(cap + 1)]

    def test_nilpotent_jennings_truncates_weights(self):
        # class-2 free nilpotent on 2 generators at p=2, hand-derived from
        # subgroup indices in the Heisenberg group over Z
        assert nilpotent_jennings_dims(2, 2, 2, 5) == [2, 3, 0, 3, 0]
        assert nilpotent_jennings_dims(1, 2, 2, 8) == \
            free_restricted_lie_dims(1, 2, 8)

    def test_dim_quotient_jennings(self):
        assert dim_quotient_jennings_dims(1, 2, 2, 5) == [1, 1, 0, 0, 0]


class TestGammaInterval:
    def test_nilpotent_1_2(self):
        rep = gamma_interval("nilpotent", {"c0": 1, "c1": 2},
                             {"n_max": 2, "m_max": 2, "D": 5})
        assert rep["interval"] == [0, 1]
        assert rep["witness"] == {"n": 2, "m": 1, "d": 2,
                                  "source_rank": 4, "target_rank": 3}

    def test_nilpotent_2_3(self):
        rep = gamma_interval("nilpotent", {"c0": 2, "c1": 3},
                             {"n_max": 2, "m_max": 1, "D": 4})
        assert rep["interval"] == [0, 1, 2]
        w = rep["witness"]
        assert (w["d"], w["source_rank"], w["target_rank"]) == (3, 8, 6)

    def test_nil_to_dim_single_generator(self):
        rep = gamma_interval("nil-to-dim", {"c0": 2, "p": 2},
                             {"n_max": 1, "m_max": 1, "D": 5})
        w = rep["witness"]
        assert (w["d"], w["source_rank"], w["target_rank"]) == (4, 1, 0)
        assert rep["interval"] == [0, 1, 2, 3]

    def test_dim_to_dim(self):
        rep = gamma_interval("dim", {"c0": 1, "c1": 2, "p": 2},
                             {"n_max": 2, "m_max": 2, "D": 4})
        assert rep["interval"] == [0, 1]

    def test_interval_downward_closed_and_contains_zero(self):
        for setting, params in (("nilpotent", {"c0": 1, "c1": None}),
                                ("dim", {"c0": 2, "c1": None, "p": 3}),
                                ("nil-to-dim", {"c0": 3, "p": 2})):
            rep = gamma_interval(setting, params,
                                 {"n_max": 2, "m_max": 2, "D": 5})
            interval = rep["interval"]
            assert interval == list(range(len(interval)))
            assert 0 in interval

    def test_agreement_pattern_monotone(self):
        # once a degree disagrees, agreement never resumes above it: the
        # source ranks dominate with equality below the truncation and a
        # strict drop afterwards
        runs = [("nilpotent", {"c0": 1, "c1": 2}),
                ("nilpotent", {"c0": 2, "c1": None}),
                ("dim", {"c0": 1, "c1": 3, "p": 2}),
                ("nil-to-dim", {"c0": 2, "p": 2})]
        for setting, params in runs:
            rep = gamma_interval(setting, params,
                                 {"n_max": 2, "m_max": 2, "D": 6})
            seen_fail = False
            for entry in rep["perDegree"]:
                if not entry["agree"]:
                    seen_fail = True
                elif seen_fail:
                    pytest.fail(f"agreement resumed in {setting} {params}")

    def test_p0_routes_to_nilpotent(self):
        a = gamma_interval("dim", {"c0": 1, "c1": 2, "p": 0},
                           {"n_max": 2, "m_max": 1, "D": 4})
        b = gamma_interval("nilpotent", {"c0": 1, "c1": 2},
                           {"n_max": 2, "m_max": 1, "D": 4})
        assert a["interval"] == b["interval"]

    def test_bad_params(self):
        with pytest.raises(ValueError):
            gamma_interval("nilpotent", {"c0": 2, "c1": 2},
                           {"n_max": 1, "m_max": 1, "D": 2})
        with pytest.raises(ValueError):
            gamma_interval("dim", {"c0": 1, "c1": 2, "p": 6},
                           {"n_max": 1, "m_max": 1, "D": 2})


class TestDset:
    def test_nilpotent_strict_everywhere(self):
        rep = dset_probe("nilpotent", {"c": 2}, {"n_max": 2, "m_max": 1, "D": 5})
        assert rep["strict_all"]
        ranks = q_ranks_nilpotent(2, 1, 2, 6)
        assert ranks == [1, 2, 4, 6, 9, 12, 16]
        for entry in rep["perDegree"]:
            assert entry["witness"]["rank_next"] > 0

    def test_dim_strict(self):
        rep = dset_probe("dim", {"c": 2, "p": 2}, {"n_max": 3, "m_max": 3, "D": 4})
        assert rep["strict_all"]

    def test_trivial_ranks_strict_only_at_zero(self):
        report = strictness_from_ranks([1, 0, 0, 0], 2)
        assert [e["strict"] for e in report] == [True, False, False]
        report = strictness_from_ranks([1, 1, 0, 0], 2)
        assert [e["strict"] for e in report] == [True, True, False]
