"""Equivariant algebra of the isomeric ring A = Sym(V ⊗ W / 2) at finite rank."""

from .lattice import EquivariantIdeal, I_r, g_radical, g_spectrum, is_g_prime
from .partitions import StrictPartition, enumerate_strict
from .qdet import build_phi, ideal_Ir, verify_rank_locus
from .superpoly import SuperPolynomial, SuperRing
from .symfunc import cauchy_check, graded_dim_A, schur_q, t_dim

__version__ = "0.1.0"

__all__ = [
    "EquivariantIdeal",
    "I_r",
    "StrictPartition",
    "SuperPolynomial",
    "SuperRing",
    "build_phi",
    "cauchy_check",
    "enumerate_strict",
    "g_radical",
    "g_spectrum",
    "graded_dim_A",
    "ideal_Ir",
    "is_g_prime",
    "schur_q",
    "t_dim",
    "verify_rank_locus",
]
