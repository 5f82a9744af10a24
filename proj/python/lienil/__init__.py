"""Exact Lie nilpotency identity checks, proper codimensions and bounds."""

import json
from fractions import Fraction

from . import _lienil
from ._lienil import (
    CapExceeded,
    DimensionMismatch,
    DomainError,
    Error,
    InternalError,
    ParseError,
    SizeGuard,
    character,
    decompose,
    did_gamma,
    gamma_by_evaluation,
    min_index,
    quotient_dims,
    run_criterion,
)

__all__ = [
    "CapExceeded",
    "DimensionMismatch",
    "DomainError",
    "Error",
    "InternalError",
    "ParseError",
    "SizeGuard",
    "bound_poly",
    "character",
    "check_identity",
    "closed_form",
    "combined_bounds",
    "decompose",
    "did_gamma",
    "gamma_by_evaluation",
    "hook_dim",
    "min_index",
    "quotient_dims",
    "run_criterion",
]


def _fractions(coeffs):
    return [Fraction(c) for c in coeffs]


def check_identity(algebra, poly, threads=1):
    """Verdict as a dict: is_identity and, if not, a witness substitution."""
    return json.loads(_lienil.check_identity_json(algebra, poly, threads))


def hook_dim(partition):
    return Fraction(_lienil.hook_dim(list(partition)))


def bound_poly(k, odd=True):
    """Coefficients of A_k (odd=True) or B_k, constant term first."""
    return _fractions(_lienil.bound_poly(k, odd))


def closed_form(k, degree_variable=False):
    """(r, s) coefficient lists with 2^n r(n) + s(n) the codimension bound."""
    r, s = _lienil.closed_form(k, degree_variable)
    return _fractions(r), _fractions(s)


def combined_bounds(k):
    """(gamma_lead, codim_lead) of the two-ideal bound, k >= 4."""
    return tuple(Fraction(x) for x in _lienil.combined_bounds(k))
