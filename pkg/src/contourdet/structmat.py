"""Structured matrices built from residues at the origin, plus small dense
linear algebra (pivoted LU determinant, unit-triangular inverse).

Indices in docstrings are 1-based like the formulas; arrays are 0-based.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .contour import QuadratureRule
from .funcs import PoleError, RationalFunction
from .series import LaurentSeries, chain_step, ls_coeff, ls_recip

__all__ = [
    "InvariantError",
    "MAX_N",
    "check_size",
    "build_A",
    "build_B",
    "build_S",
    "build_R",
    "build_W",
    "ratio_factors",
    "chain_factors",
    "nested_chain",
    "alpha_polys",
    "expansion_coeffs",
    "lu_det",
    "tri_inverse",
]

MAX_N = 16
_UNIT_TOL = 1e-12


class InvariantError(ValueError):
    pass


def check_size(n: int, allow_large: bool = False):
    if n < 1:
        raise InvariantError(f"matrix size must be positive, got {n}")
    if n > MAX_N and not allow_large:
        raise InvariantError(f"n = {n} exceeds the default cap {MAX_N}; pass allow_large=True to override")


def _check_unit(series: Sequence[LaurentSeries], name: str):
    for i, s in enumerate(series, start=1):
        if s.min_exp < 0 or abs(ls_coeff(s, 0) - 1) > _UNIT_TOL:
            raise InvariantError(f"{name}_{i}(0) must equal 1, got {ls_coeff(s, 0)}")


def build_A(p: Sequence[LaurentSeries], f: Sequence[LaurentSeries]) -> np.ndarray:
    """``A(i,j) = res_0 v^(i-j-1) p_i(v) f_j(v)``, unit upper triangular."""
    if len(p) != len(f):
        raise InvariantError("p and f must have the same length")
    _check_unit(p, "p")
    _check_unit(f, "f")
    n = len(p)
    A = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            A[i, j] = ls_coeff(p[i] * f[j], j - i)
    return A


def build_S(p: Sequence[LaurentSeries]) -> np.ndarray:
    _check_unit(p, "p")
    n = len(p)
    S = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            S[i, j] = ls_coeff(p[i], j - i)
    return S


def build_R(f: Sequence[LaurentSeries]) -> np.ndarray:
    # the column function carries the coefficient, unlike S
    _check_unit(f, "f")
    n = len(f)
    R = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            R[i, j] = ls_coeff(f[j], j - i)
    return R


def _eval_at_nodes(r: RationalFunction, nodes, what: str):
    try:
        return r(nodes)
    except PoleError as exc:
        raise PoleError(f"{what}: pole at node {exc.index} (u = {exc.z})", z=exc.z, index=exc.index) from exc


def build_B(q: Sequence[RationalFunction], g: Sequence[RationalFunction], rule: QuadratureRule) -> np.ndarray:
    """``B(i,j) = int_Gamma q_i(u) g_j(u) du/(2 pi i)`` by the rule."""
    if len(q) != len(g):
        raise InvariantError("q and g must have the same length")
    Q = np.array([_eval_at_nodes(r, rule.nodes, f"q_{i + 1}") for i, r in enumerate(q)])
    G = np.array([_eval_at_nodes(r, rule.nodes, f"g_{j + 1}") for j, r in enumerate(g)])
    return (Q * rule.weights) @ G.T


def ratio_factors(p: Sequence[LaurentSeries]) -> list[LaurentSeries]:
    """``P_1 = p_1`` and ``P_i = p_i / p_(i-1)``."""
    out = [p[0]]
    for i in range(1, len(p)):
        out.append(p[i] * ls_recip(p[i - 1]))
    return out


def chain_factors(p: Sequence[LaurentSeries]) -> list[LaurentSeries]:
    """The series ``1 / (v P_i(v))`` for ``i = 1..n``."""
    _check_unit(p, "p")
    return [ls_recip(Pi.shift(1)) for Pi in ratio_factors(p)]


def nested_chain(factors: Sequence[LaurentSeries], top: int, bottom: int = 1) -> LaurentSeries:
    """Integrate out the nested variables ``v_top, ..., v_(bottom+1)``.

    Returns the series in ``v_bottom`` of

        prod_{l=bottom}^{top} 1/(v_l P_l(v_l)) / prod_{l=bottom}^{top-1} (v_l - v_(l+1))

    after the inner integrals over circles ``|v_bottom| > ... > |v_top|``.
    """
    t = factors[top - 1]
    for ell in range(top - 1, bottom - 1, -1):
        t = chain_step(t) * factors[ell - 1]
    return t


def build_W(p: Sequence[LaurentSeries], factors: Sequence[LaurentSeries] | None = None) -> np.ndarray:
    """Nested-integral matrix ``W``; the inverse of ``S`` computed without inverting."""
    if factors is None:
        factors = chain_factors(p)
    n = len(p)
    W = np.zeros((n, n), dtype=complex)
    for j in range(1, n + 1):
        t = nested_chain(factors, j)
        for i in range(1, j + 1):
            W[i - 1, j - 1] = ls_coeff(t, -i)
    return W


def alpha_polys(f: Sequence[LaurentSeries], trunc: int | None = None) -> list[LaurentSeries]:
    """Dual polynomials ``alpha_i(v) = sum_k Rinv(i,k) v^(k-1)``."""
    Rinv = tri_inverse(build_R(f))
    if trunc is None:
        trunc = min(s.trunc for s in f)
    return [LaurentSeries.poly(Rinv[i], trunc) for i in range(len(f))]


def expansion_coeffs(ell: int, p_ell: LaurentSeries, f: Sequence[LaurentSeries]) -> np.ndarray:
    """Coefficients ``c_(ell,1..ell)`` matching the principal part of
    ``1/(v^ell p_ell(v))`` by ``sum_j c_(ell,j) f_j(v)/v^j``.

    The coefficient of ``v^-i`` in ``f_j/v^j`` is ``R(i, j)``, so this is a
    triangular solve against the leading block of ``R``.
    """
    if not 1 <= ell <= len(f):
        raise InvariantError(f"ell = {ell} outside 1..{len(f)}")
    target = ls_recip(p_ell.shift(ell))
    rhs = np.array([ls_coeff(target, -i) for i in range(1, ell + 1)])
    Rinv = tri_inverse(build_R(f[:ell]))
    return Rinv @ rhs


def lu_det(M) -> complex:
    """Determinant by LU with partial pivoting on modulus (0 for singular input)."""
    a = np.array(M, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    n = a.shape[0]
    det = 1.0 + 0j
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0:
            return 0j
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det *= a[k, k]
        if k + 1 < n:
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k] / a[k, k], a[k, k + 1 :])
    return complex(det)


def tri_inverse(T) -> np.ndarray:
    """Inverse of a unit upper triangular matrix by back substitution."""
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if T.shape != (n, n):
        raise ValueError(f"square matrix required, got shape {T.shape}")
    if np.max(np.abs(np.diag(T) - 1), initial=0) > _UNIT_TOL:
        raise ValueError("tri_inverse needs a unit diagonal")
    if np.max(np.abs(np.tril(T, -1)), initial=0) > _UNIT_TOL:
        raise ValueError("tri_inverse needs an upper triangular matrix")
    X = np.eye(n, dtype=complex)
    for i in range(n - 2, -1, -1):
        X[i] -= T[i, i + 1 :] @ X[i + 1 :]
    return X
