"""Numerical verification of det(A + B) = det(I + K) for contour-integral
matrices ``A``, ``B`` and a finite-rank kernel ``K`` on a contour."""

from .contour import ContourSpec, QuadratureRule, integrate, make_rule
from .fredholm import FredholmResult, fred_det_nystrom, fred_det_rank
from .funcs import PoleError, RationalFunction, rf_eval, rf_lincomb, rf_mul
from .kernel import (
    BridgeH,
    KernelForm,
    T_chain,
    bll_form,
    construct_H,
    derive_g,
    general_form,
    kernel_eval,
    kernel_matrix,
    simplified_form,
    trace_decompose,
)
from .series import LaurentSeries, chain_step, ls_add, ls_coeff, ls_mul, ls_recip
from .structmat import (
    alpha_polys,
    build_A,
    build_B,
    build_R,
    build_S,
    build_W,
    expansion_coeffs,
    lu_det,
    tri_inverse,
)

__version__ = "0.1.0"
