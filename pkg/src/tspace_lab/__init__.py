"""Computational checks for the T-spaces W_n of the one-variable free algebra over GF(q)."""

from __future__ import annotations

__version__ = "0.1.0"

from .gf import FieldElement, FieldError, FieldSpec, f_inv, f_mul, f_pow, field_make, field_of_order
from .poly import Poly, p_compose, p_mul, parse_poly, q_class, q_components
from .quotient import QuotCtx, QuotElt, nf_exp, project, q_compose, q_mul, quot_ctx
from .subspace import EchelonBasis, sp_contains, sp_insert, sp_intersection, sp_is_full, sp_sum
from .tclosure import Certificate, ClosureStrategy, s_closure, t_closure, verify_certificate

__all__ = [
    "Certificate",
    "ClosureStrategy",
    "EchelonBasis",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "Poly",
    "QuotCtx",
    "QuotElt",
    "f_inv",
    "f_mul",
    "f_pow",
    "field_make",
    "field_of_order",
    "nf_exp",
    "p_compose",
    "p_mul",
    "parse_poly",
    "project",
    "q_class",
    "q_components",
    "q_compose",
    "q_mul",
    "quot_ctx",
    "s_closure",
    "sp_contains",
    "sp_insert",
    "sp_intersection",
    "sp_is_full",
    "sp_sum",
    "t_closure",
    "verify_certificate",
]
