"""The bridge function ``H(v, u)``, the kernel factors ``T_l(u)`` and the three
equivalent forms of the finite-rank kernel ``K(u1, u2)``.

``H`` is stored as a polynomial in ``v`` whose coefficients are rational in
``u``.  A kernel in the general or simplified form is

    K(u1, u2) = sum_l q_l(u1) T_l(u2),

where ``T_l`` is the ``l``-fold nested origin integral of ``H``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .funcs import RationalFunction, rf_lincomb
from .series import LaurentSeries, ls_coeff, ls_recip
from .structmat import alpha_polys, chain_factors, nested_chain

__all__ = [
    "BridgeH",
    "KernelForm",
    "KernelContractError",
    "construct_H",
    "derive_g",
    "T_chain",
    "T_all",
    "general_form",
    "simplified_form",
    "bll_form",
    "kernel_eval",
    "kernel_matrix",
    "bll_weights",
    "trace_decompose",
]


class KernelContractError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BridgeH:
    """``H(v, u) = sum_d vcoeffs[d](u) v**d``."""

    vcoeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "vcoeffs", tuple(self.vcoeffs))
        if not self.vcoeffs:
            raise ValueError("H needs at least one v-coefficient")

    @property
    def vdeg(self) -> int:
        return len(self.vcoeffs) - 1

    def coeff(self, d: int) -> RationalFunction:
        return self.vcoeffs[d] if 0 <= d < len(self.vcoeffs) else RationalFunction.zero()

    def at(self, u) -> np.ndarray:
        """Array ``[H_d(u)]_d`` of shape ``(vdeg + 1,) + shape(u)``."""
        return np.array([c(u) for c in self.vcoeffs])

    def __call__(self, v, u):
        hs = self.at(u)
        return sum(h * np.asarray(v, dtype=complex) ** d for d, h in enumerate(hs))

    def residue_against(self, t: LaurentSeries) -> RationalFunction:
        """``res_0 H(v, u) t(v)`` as a function of ``u``."""
        w = [ls_coeff(t, -d - 1) for d in range(len(self.vcoeffs))]
        return rf_lincomb(w, self.vcoeffs)


def construct_H(f: Sequence[LaurentSeries], g: Sequence[RationalFunction]) -> BridgeH:
    """Canonical bridge ``H(v, u) = sum_m g_m(u) alpha_m(v)``."""
    n = len(f)
    if len(g) != n:
        raise ValueError("f and g must have the same length")
    alphas = alpha_polys(f)
    vcoeffs = []
    for d in range(n):
        vcoeffs.append(rf_lincomb([ls_coeff(a, d) for a in alphas], g))
    return BridgeH(vcoeffs)


def derive_g(H: BridgeH, f: Sequence[LaurentSeries]) -> list[RationalFunction]:
    """``g_i(u) = res_0 f_i(v) v^-i H(v, u)`` for each ``i``."""
    out = []
    for i, fi in enumerate(f, start=1):
        w = [ls_coeff(fi, i - 1 - d) for d in range(min(i, len(H.vcoeffs)))]
        out.append(rf_lincomb(w, H.vcoeffs[: len(w)]))
    return out


def T_chain(ell: int, H: BridgeH, p: Sequence[LaurentSeries], factors=None) -> RationalFunction:
    """The nested integral over ``|v_1| > ... > |v_ell|`` of
    ``H(v_1, u) / (prod (v_i - v_(i+1)) prod v_i P_i(v_i))``.
    """
    if not 1 <= ell <= len(p):
        raise ValueError(f"ell = {ell} outside 1..{len(p)}")
    if factors is None:
        factors = chain_factors(p)
    return H.residue_against(nested_chain(factors, ell))


def T_all(H: BridgeH, p: Sequence[LaurentSeries]) -> list[RationalFunction]:
    factors = chain_factors(p)
    return [T_chain(ell, H, p, factors) for ell in range(1, len(p) + 1)]


@dataclass(frozen=True, eq=False)
class KernelForm:
    """One of the three kernel representations.

    ``general`` and ``simplified_p1`` carry ``q`` and ``T``; ``bll`` carries
    ``H``, the size ``n`` and the exclusion radius ``eps`` around the origin.
    """

    variant: str
    n: int
    q: tuple = ()
    T: tuple = ()
    H: BridgeH | None = None
    eps: float = 0.0

    def __post_init__(self):
        if self.variant not in ("general", "simplified_p1", "bll"):
            raise ValueError(f"unknown kernel variant {self.variant!r}")
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "T", tuple(self.T))
        if self.variant == "bll":
            if self.H is None or not self.eps > 0:
                raise ValueError("bll kernel needs H and a positive eps")
        elif len(self.q) != self.n or len(self.T) != self.n:
            raise ValueError("q and T must both have length n")

    def transposed(self) -> "KernelForm":
        # swaps the roles of u1 and u2; only meaningful for the q/T forms
        if self.variant == "bll":
            raise ValueError("transpose is defined for the q/T forms only")
        return KernelForm(self.variant, self.n, q=self.T, T=self.q)


def general_form(q: Sequence[RationalFunction], H: BridgeH, p: Sequence[LaurentSeries]) -> KernelForm:
    return KernelForm("general", len(q), q=q, T=T_all(H, p))


def simplified_form(q: Sequence[RationalFunction], H: BridgeH) -> KernelForm:
    """All ``p_i = 1``: the nested integral collapses to ``res_0 H(v, u) v^-l``."""
    n = len(q)
    return KernelForm("simplified_p1", n, q=q, T=[H.coeff(ell - 1) for ell in range(1, n + 1)])


def bll_form(H: BridgeH, n: int, eps: float) -> KernelForm:
    return KernelForm("bll", n, H=H, eps=eps)


def bll_weights(u1, n: int, ncoef: int) -> np.ndarray:
    """``W[d]`` with ``res_0 u1^n v^(d-n) / (u1 - v) = W[d]`` for ``d < ncoef``.

    ``1/(u1 - v)`` is expanded as ``sum_j v^j / u1^(j+1)`` (valid for small
    ``v``), multiplied by ``u1^n v^-n`` and the residue read off.
    """
    trunc = max(n, ncoef) + 1
    geom = LaurentSeries.poly(u1 ** -(np.arange(trunc + 1) + 1.0), trunc)
    s = geom.shift(-n) * (u1**n)
    return np.array([ls_coeff(s, -1 - d) for d in range(ncoef)])


def kernel_matrix(form: KernelForm, u1, u2) -> np.ndarray:
    """``K(u1[a], u2[b])`` for all pairs."""
    u1 = np.atleast_1d(np.asarray(u1, dtype=complex))
    u2 = np.atleast_1d(np.asarray(u2, dtype=complex))
    if form.variant == "bll":
        if np.min(np.abs(u1)) < form.eps:
            k = int(np.argmin(np.abs(u1)))
            raise KernelContractError(f"bll kernel evaluated at |u1| = {abs(u1[k]):.3e} < eps = {form.eps}")
        ncoef = len(form.H.vcoeffs)
        Wt = np.array([bll_weights(z, form.n, ncoef) for z in u1])
        return Wt @ form.H.at(u2)
    Q = np.array([r(u1) for r in form.q])
    T = np.array([r(u2) for r in form.T])
    return Q.T @ T


def kernel_eval(form: KernelForm, u1: complex, u2: complex) -> complex:
    return complex(kernel_matrix(form, [u1], [u2])[0, 0])


def trace_decompose(
    ell: int, H: BridgeH, p: Sequence[LaurentSeries], f: Sequence[LaurentSeries] | None = None
) -> list[RationalFunction]:
    """Split ``L_ell = T_chain(ell)`` into ``L_ell^(1) + ... + L_ell^(ell)``.

    ``L^(i)`` is the term where the residues ``v_1 = v_2 = ... = v_i`` have
    been taken and the ``v_i`` contour shrunk inside all others.  Expanding
    ``1/(v_i - v_(i+1))`` geometrically leaves

        L^(i)(u) = sum_{k<i} C_k res_0 H(v, u) v^(k-i) / p_i(v),
        C_k = -[v^k] t_(i+1),

    with ``t_(i+1)`` the chain of the outer variables ``v_(i+1)..v_ell``.
    ``f`` is not needed for the split itself and is accepted for symmetry with
    the identity ``L^(ell) = sum_j c_(ell,j) g_j``.
    """
    n = len(p)
    if not 1 <= ell <= n:
        raise ValueError(f"ell = {ell} outside 1..{n}")
    factors = chain_factors(p)
    pieces = []
    for i in range(1, ell + 1):
        inner = ls_recip(p[i - 1])
        if i == ell:
            pieces.append(H.residue_against(inner.shift(-ell)))
            continue
        t_out = nested_chain(factors, ell, i + 1)
        acc = LaurentSeries.zero(inner.trunc - i)
        for k in range(i):
            C = -ls_coeff(t_out, k)
            acc = acc + inner.shift(k - i) * C
        pieces.append(H.residue_against(acc))
    return pieces
