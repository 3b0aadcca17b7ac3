"""Substitution theories: axioms, star products, hom enumeration, maps."""

import pytest

from polyaug.lawvere import (get_theory, hom_elements, star_product,
                             validate_theory)
from polyaug.lawvere.theory import (CommBandTheory, FreeBandTheory,
                                    ModRTheory, TheoryMap, mod_reduction_map)


@pytest.mark.parametrize("name", ["mod2", "mod3", "mod4", "free_comm_band",
                                  "free_band"])
def test_bundled_theories_validate(name):
    validate_theory(get_theory(name), n_max=3)


class TestHoms:
    def test_mod2_counts(self):
        t = get_theory("mod2")
        assert len(hom_elements(t, 2, 1)) == 4
        assert len(hom_elements(t, 2, 3)) == 64

    def test_comm_band_counts(self):
        t = get_theory("free_comm_band")
        homs = hom_elements(t, 2, 1)
        assert len(homs) == 4  # subsets of {1, 2}

    def test_terminal_object(self):
        for name in ("mod2", "free_band"):
            assert len(hom_elements(get_theory(name), 2, 0)) == 1

    def test_hom_cap(self):
        with pytest.raises(ValueError):
            hom_elements(get_theory("mod2"), 3, 3, limit=100)

    def test_zero_object(self):
        for name in ("mod2", "mod3", "free_comm_band", "free_band"):
            assert get_theory(name).size(0) == 1


class TestStar:
    def test_mod2_coordinatewise_addition(self):
        t = get_theory("mod2")
        assert star_product(t, 2, (1, 0), (1, 1)) == (0, 1)

    def test_band_union(self):
        t = get_theory("free_comm_band")
        assert star_product(t, 2, frozenset({1}), frozenset({2})) == \
            frozenset({1, 2})

    def test_unit_law(self):
        for name in ("mod3", "free_band"):
            t = get_theory(name)
            e = t.unit(2)
            for f in t.elements(2):
                assert t.star(2, f, e) == f == t.star(2, e, f)

    def test_star_generators_generate(self):
        t = get_theory("mod4")
        gens = t.star_generators(2)
        seen = {t.unit(2), *gens}
        frontier = list(seen)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = t.star(2, a, g)
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        assert len(seen) == t.size(2)


class TestComposition:
    def test_compose_is_substitution(self):
        t = get_theory("mod3")
        g = ((1, 2), (0, 1))        # morphism 2 -> 2
        h = ((2, 0, 1), (1, 1, 1))  # morphism 3 -> 2
        comp = t.compose(g, h, 3)
        assert comp == ((1, 2, 0), (1, 1, 1))

    def test_identity_morphism(self):
        t = get_theory("mod2")
        ident = t.identity_morphism(2)
        g = ((1, 1), (0, 1))
        assert t.compose(g, ident, 2) == g
        assert t.compose(ident, g, 2) == g

    def test_free_band_substitution_folds_words(self):
        t = get_theory("free_band")
        band2 = t._band(2)
        ab = t.nabla()  # the two-letter product in the rank-2 band
        # substitute both variables by the first letter: aa = a
        a = t.proj(2, 1)
        assert t.subst(ab, (a, a), 2) == a


class TestTheoryMap:
    def test_mod4_to_mod2_full(self):
        xi = mod_reduction_map(4, 2)
        xi.check_full(3)
        assert xi.map_morphism(2, ((3, 2), (1, 0))) == ((1, 0), (1, 0))

    def test_invalid_divisor(self):
        with pytest.raises(ValueError):
            mod_reduction_map(4, 3)

    def test_non_surjective_detected(self):
        src, tgt = ModRTheory(2), ModRTheory(2)
        bad = TheoryMap(src, tgt, lambda n, e: tuple(0 for _ in e), "collapse")
        with pytest.raises(ValueError):
            bad.check_full(2)


def test_theory_caps():
    t = FreeBandTheory()
    with pytest.raises(ValueError):
        t.elements(4)
    c = CommBandTheory(n_cap=3)
    with pytest.raises(ValueError):
        c.elements(4)
