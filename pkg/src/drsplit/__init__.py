"""Tautological-ring engine for the loop-gluing splitting of double ramification cycles."""

__version__ = "0.1.0"

from .bananas import (BananaDatum, InvalidInput, RamificationInput, b_bound, b_range,  # noqa: E402
                      enumerate_bananas)
from .graphs import (StableGraph, UnstableError, automorphism_count, canonical_form,  # noqa: E402
                     enumerate_stable_graphs, glue_loop)
from .intersection import psi_correlator, vertex_integral  # noqa: E402
from .pixton import dr_cycle, dr_pair  # noqa: E402
from .splitting import banana_sum, relation_lhs, verify_relation, verify_splitting  # noqa: E402
from .strata import (DecoratedGraph, TautClass, boundary_class, evaluate, fundamental_class,  # noqa: E402
                     kappa_class, multiply, psi_class, push_glue_loop, push_zeta)

__all__ = [
    "BananaDatum", "InvalidInput", "RamificationInput", "b_bound", "b_range", "enumerate_bananas",
    "StableGraph", "UnstableError", "automorphism_count", "canonical_form", "enumerate_stable_graphs",
    "glue_loop", "psi_correlator", "vertex_integral", "dr_cycle", "dr_pair", "banana_sum",
    "relation_lhs", "verify_relation", "verify_splitting", "DecoratedGraph", "TautClass",
    "boundary_class", "evaluate", "fundamental_class", "kappa_class", "multiply", "psi_class",
    "push_glue_loop", "push_zeta",
]
