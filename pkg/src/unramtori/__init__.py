"""Exact computations for unramified tori: lattice cohomology, depth-zero
characters of finite tori, the group Q_T, Tits lifts in GL_n and the
depth-zero rectifier."""

from .characters import FiniteTorus, TorusCharacter, finite_torus, is_admissible, partition_characters
from .errors import ContainmentError, EnumerationLimitError, InvalidDatumError
from .lattice import FiniteAbelianGroup, IntMatrix, cokernel, kernel_basis, smith_normal_form, subquotient
from .presets import PRESET_NAMES, preset
from .qt import compute_qt, qt_census, rectifiers_equivalent
from .rectifier import LParameter, parameter_character, rectifier_axiom_report, rectifier_mu
from .specfile import SpecError, parse_spec
from .tits import MonomialMatrix, canonical_lift, char_poly, coxeter_permutation, tits_power
from .torus import TorusDatum, relative_weyl_group, tate_h0, tate_hm1

__all__ = [
    "ContainmentError",
    "EnumerationLimitError",
    "FiniteAbelianGroup",
    "FiniteTorus",
    "IntMatrix",
    "InvalidDatumError",
    "LParameter",
    "MonomialMatrix",
    "PRESET_NAMES",
    "SpecError",
    "TorusCharacter",
    "TorusDatum",
    "canonical_lift",
    "char_poly",
    "cokernel",
    "compute_qt",
    "coxeter_permutation",
    "finite_torus",
    "is_admissible",
    "kernel_basis",
    "parameter_character",
    "parse_spec",
    "partition_characters",
    "preset",
    "qt_census",
    "rectifier_axiom_report",
    "rectifier_mu",
    "rectifiers_equivalent",
    "relative_weyl_group",
    "smith_normal_form",
    "subquotient",
    "tate_h0",
    "tate_hm1",
    "tits_power",
]
