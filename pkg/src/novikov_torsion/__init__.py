"""Exact torsion, Novikov homology and fiberedness obstructions for group presentations."""

from .groups import (CohomologyClass, GroupPresentation, Word, abelianization, braid_to_knot_group,
                     fox_derivative, fox_jacobian, induced_phi, parse_presentation)
from .laurent import FractionElement, LaurentElement, TorsionValue, deg_phi, determinant, is_monic
from .novikov import BasedComplex, Degenerate, NotInvertible, acyclicity_test, invert_matrix
from .torsion import (alexander_polynomial, build_complex, delta_zero, fiber_check,
                      fibered_cone_probe, novikov_vanishes, tau_of_complex)

__all__ = [
    "BasedComplex", "CohomologyClass", "Degenerate", "FractionElement", "GroupPresentation",
    "LaurentElement", "NotInvertible", "TorsionValue", "Word", "abelianization", "acyclicity_test",
    "alexander_polynomial", "braid_to_knot_group", "build_complex", "deg_phi", "delta_zero",
    "determinant", "fiber_check", "fibered_cone_probe", "fox_derivative", "fox_jacobian",
    "induced_phi", "invert_matrix", "is_monic", "novikov_vanishes", "parse_presentation",
    "tau_of_complex",
]
