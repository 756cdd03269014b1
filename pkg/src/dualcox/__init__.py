"""Finite dual Coxeter systems: reflection factorizations and the Hurwitz action."""
from .group import (CoxeterGroup, GroupElement, GroupError, SignedPermutation, absolute_leq,
                    coxeter_group, element_from_word, reflection_length, to_signed_permutation,
                    from_signed_permutation)
from .hurwitz import (Factorization, braid_move, count_reduced_factorizations, hurwitz_orbit,
                      is_hurwitz_transitive, last_slot_coverage, reduced_factorizations)
from .lattice import (connection_index, lattice_index, smith_normal_form, subsystem_closure)
from .classify import (is_coxeter_element, is_parabolic_quasi_coxeter,
                       is_quasi_coxeter, parabolic_closure)
from .rootsys import build_dihedral, build_root_system
from .verify import VerificationReport, verify

__all__ = [
    "CoxeterGroup", "GroupElement", "GroupError", "SignedPermutation", "absolute_leq",
    "coxeter_group", "element_from_word", "reflection_length", "to_signed_permutation",
    "from_signed_permutation", "Factorization", "braid_move", "count_reduced_factorizations",
    "hurwitz_orbit", "is_hurwitz_transitive", "last_slot_coverage", "reduced_factorizations",
    "connection_index", "lattice_index", "smith_normal_form", "subsystem_closure",
    "is_coxeter_element", "is_parabolic_quasi_coxeter", "is_quasi_coxeter", "parabolic_closure",
    "build_dihedral", "build_root_system", "VerificationReport", "verify",
]
