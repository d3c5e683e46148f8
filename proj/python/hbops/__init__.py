"""Exact operator-norm and Hahn-Banach computations on finite-dimensional spaces.

Vectors and matrices accept ints, strings like "3/2" or Fraction values.
Exact results come back as Fraction; inexact norms come back as float.
"""

from fractions import Fraction

from . import _hbops
from ._hbops import (
    DomainError,
    Operator,
    ParseError,
    Space,
    UnsupportedError,
    ValidationError,
    adjoint,
    compute_f,
    corollary_max_rank,
    hb_lower_bound,
)

__all__ = [
    "DomainError",
    "Operator",
    "ParseError",
    "Space",
    "UnsupportedError",
    "ValidationError",
    "adjoint",
    "compute_d",
    "compute_f",
    "construct_rank_k",
    "corollary_max_rank",
    "hb_lower_bound",
    "is_hahn_banach",
    "matrix",
    "min_extension_norm",
    "norm",
    "operator",
    "op_norm",
    "polytope",
    "scale",
    "verify_certificate",
]


def _s(x):
    return str(Fraction(x))


def _vec(v):
    return [_s(x) for x in v]


def _gauge(pair):
    exact, approx = pair
    return Fraction(exact) if exact is not None else approx


def polytope(vertices):
    """Space whose unit ball is the convex hull of the given symmetric vertex set."""
    return Space.polytope_v([_vec(v) for v in vertices])


def operator(rows, domain, codomain):
    return Operator([_vec(r) for r in rows], domain, codomain)


def matrix(op):
    return [[Fraction(x) for x in row] for row in op.matrix]


def norm(space, v):
    return _gauge(_hbops.norm(space, _vec(v)))


def op_norm(op):
    return _gauge(_hbops.op_norm(op))


def compute_d(space, x):
    return _hbops.compute_d(space, _vec(x))


def scale(op, alpha):
    return _hbops.scale(op, _s(alpha))


def min_extension_norm(op):
    return Fraction(_hbops.min_extension_norm(op))


def is_hahn_banach(op, net_size=32):
    """Verdict dict with kind IsHB, NotHB or LowerBoundOnly."""
    v = _hbops.is_hahn_banach(op, net_size)
    v["op_norm"] = _gauge(v["op_norm"])
    for key in ("min_extension_norm", "gap"):
        if v[key] is not None:
            v[key] = Fraction(v[key])
    return v


def construct_rank_k(x, y, k):
    """Norm-one rank-k operator X -> Y and its certificate as a JSON string."""
    return _hbops.construct_rank_k(x, y, k)


def verify_certificate(certificate_json):
    """(valid, diagnostics) for a certificate JSON string."""
    return _hbops.verify_certificate(certificate_json)
