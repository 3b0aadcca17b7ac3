from ..spans import spans_equal
from .theory import (CommBandTheory, FreeBandTheory, ModRTheory, Morphism,
                     Theory, TheoryMap, get_theory, hom_elements,
                     mod_reduction_map, star_product, validate_theory)
from .ideals import (CapExceeded, Guards, IdealCell, aug_power_cell,
                     degree_ideal_cell, degree_probe, gamma_membership,
                     ideal_equality_check, kernel_ideal_cell,
                     right_closure_probe, zero_ideal_cell)
from .modules import (FiniteModule, annihilator_cell, constant_module,
                      covanishing_quotient, cross_effect_dim,
                      direct_sum_modules, module_poly_degree,
                      representable_module, representable_quotient_module,
                      tautological_module, tensor_square_module,
                      vanishing_submodule)


def spans_equal_cells(a: IdealCell, b: IdealCell) -> bool:
    return spans_equal(a.span, b.span)


__all__ = [n for n in dir() if not n.startswith("_")]
