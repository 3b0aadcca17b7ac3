"""Degree ideals, augmentation powers, kernels, and the oracle identity."""

import random

import pytest

from polyaug.fields import GF, QQ
from polyaug.lawvere import (CapExceeded, aug_power_cell, degree_ideal_cell,
                             degree_probe, gamma_membership, get_theory,
                             ideal_equality_check, kernel_ideal_cell,
                             right_closure_probe, zero_ideal_cell)
from polyaug.lawvere.ideals import Guards
from polyaug.lawvere.theory import mod_reduction_map


class TestProbe:
    def test_degree_zero_is_identity_minus_constant(self):
        t = get_theory("mod2")
        probe = degree_probe(t, 0, 1)
        assert sorted(probe, key=str) == sorted(
            [(((1,),), 1), (((0,),), -1)], key=str)

    def test_degree_one_signs(self):
        t = get_theory("mod2")
        probe = dict(degree_probe(t, 1, 1))
        assert probe[((1,), (1,))] == 1      # both blocks projections
        assert probe[((1,), (0,))] == -1
        assert probe[((0,), (1,))] == -1
        assert probe[((0,), (0,))] == 1

    def test_coefficients_sum_to_zero(self):
        t = get_theory("mod3")
        for d in (0, 1, 2):
            assert sum(c for _, c in degree_probe(t, d, 1)) == 0
        assert sum(c for _, c in degree_probe(t, 1, 2)) == 0

    def test_term_count(self):
        t = get_theory("mod3")
        assert len(degree_probe(t, 1, 2)) == 4

    def test_arity_cap(self):
        with pytest.raises(CapExceeded):
            degree_probe(get_theory("free_band"), 3, 1)


class TestIdealCells:
    def test_mod2_dims(self):
        t = get_theory("mod2")
        assert degree_ideal_cell(t, 0, 1, 1, GF(2)).dim == 1
        assert degree_ideal_cell(t, 1, 1, 1, GF(2)).dim == 0
        assert degree_ideal_cell(t, 1, 1, 1, QQ).dim == 1

    def test_aug_cells_match_hand_values(self):
        t = get_theory("mod2")
        assert aug_power_cell(t, 0, 1, 1, GF(2)).dim == 1
        assert aug_power_cell(t, 1, 1, 1, GF(2)).dim == 0
        # band augmentation is idempotent: (a-e)^2 = -(a-e), so Aug^2 = Aug
        # and every power has the full augmentation dimension
        band = get_theory("free_comm_band")
        for d in (0, 1, 2):
            assert aug_power_cell(band, d, 1, 1, QQ).dim == 1

    def test_filtration_descends(self):
        for name in ("mod2", "mod3", "free_comm_band"):
            t = get_theory(name)
            for (m, n) in ((1, 1), (2, 1), (1, 2)):
                cells = [degree_ideal_cell(t, d, m, n, GF(3)) for d in (0, 1, 2)]
                for lower, upper in zip(cells[1:], cells):
                    for row in lower.span.row_list():
                        assert upper.span.contains(row)

    def test_oracle_identity_small_cells(self):
        for name in ("mod2", "mod3", "free_comm_band", "free_band"):
            t = get_theory(name)
            for field in (QQ, GF(2), GF(3)):
                for d in (0, 1, 2):
                    rep = ideal_equality_check(t, d, 2, 1, field)
                    assert rep["verdict"], (name, repr(field), d)

    def test_right_closure_probes(self):
        rng = random.Random(31)
        for name in ("mod2", "free_comm_band"):
            t = get_theory(name)
            for _ in range(20):
                d = rng.choice([0, 1])
                assert right_closure_probe(t, d, 2, 1, rng.choice([1, 2]),
                                           GF(2), rng)

    def test_guards_raise(self):
        t = get_theory("mod3")
        tight = Guards(enum_limit=10, entry_limit=10 ** 6)
        with pytest.raises(CapExceeded):
            degree_ideal_cell(t, 1, 2, 1, GF(2), tight)
        tiny = Guards(entry_limit=4)
        with pytest.raises(CapExceeded):
            degree_ideal_cell(t, 0, 2, 1, GF(2), tiny)

    def test_mod2_strict_over_f2_until_cell_bound(self):
        # over F_2 the powers of a mod-2 cell drop strictly all the way to
        # zero (nilpotent augmentation ideal of a 2-group algebra)
        t = get_theory("mod2")
        dims = [aug_power_cell(t, d, 2, 2, GF(2)).dim for d in range(6)]
        assert dims == [15, 11, 5, 1, 0, 0]
        assert all(a > b for a, b in zip(dims, dims[1:]) if a)

    def test_equality_report_shape(self):
        rep = ideal_equality_check(get_theory("mod2"), 1, 2, 2, GF(2))
        assert rep["verdict"] is True
        assert rep["cells_compared"] == 4
        for cell in rep["cells"]:
            assert cell["dimIdeal"] == cell["dimAug"]


class TestKernelAndZero:
    def test_kernel_dims(self):
        xi = mod_reduction_map(4, 2)
        assert kernel_ideal_cell(xi, 1, 1, QQ).dim == 2
        assert kernel_ideal_cell(xi, 2, 1, QQ).dim == 12

    def test_identity_map_kernel_trivial(self):
        xi = mod_reduction_map(2, 2)
        assert kernel_ideal_cell(xi, 2, 2, QQ).dim == 0

    def test_zero_ideal(self):
        t = get_theory("mod2")
        assert zero_ideal_cell(t, 1, 1, GF(2)).dim == 1
        assert zero_ideal_cell(t, 0, 0, QQ).dim == 1

    def test_gamma_membership_degrees(self):
        xi = mod_reduction_map(4, 2)
        results = {d: gamma_membership(xi, d, 2, 1, GF(2))["verdict"]
                   for d in (0, 1, 2)}
        assert results == {0: True, 1: True, 2: False}

    def test_membership_set_downward_closed(self):
        xi = mod_reduction_map(4, 2)
        good = [d for d in (0, 1, 2, 3)
                if gamma_membership(xi, d, 1, 1, GF(2))["verdict"]]
        assert good == list(range(len(good)))

    def test_kernel_vs_hand_derivation(self):
        # F_2[Z/4] -> F_2[Z/2]: kernel = ideal(u^2) = span{u^2, u^3} where
        # u = g - 1; membership in Aug^(d+1) fails first at d = 2
        xi = mod_reduction_map(4, 2)
        ker = kernel_ideal_cell(xi, 1, 1, GF(2))
        assert ker.dim == 2
        aug3 = aug_power_cell(xi.source, 2, 1, 1, GF(2))
        assert aug3.dim == 1
        assert not all(aug3.span.contains(r) for r in ker.span.row_list())
