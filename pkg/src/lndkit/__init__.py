"""Exact computations with locally nilpotent derivations in three variables."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .ring import RingId, UniPoly, CircleElem
from .poly import Poly, is_homogeneous, weighted_degree, top_part, substitute
from .polyalg import exact_divide, gcd_multivar, nth_root
from .derivation import (
    Derivation,
    certify_nilpotent,
    deg_d,
    mu_bar,
    homogeneity_degree,
    jacobian_derivation,
    kernel_member,
    is_local_slice,
    is_irreducible,
    conjugate,
    linear_filtration,
    strict_triple,
    rank_upper,
    kernel_type,
)
from .newton import newton_polygon, np_check
from .normal_form import normalize_sa, shape_sb, triangular_test, ntr_normal_form
from .report import VerificationReport
from . import kernel

IMPLEMENTATION = kernel.IMPLEMENTATION
