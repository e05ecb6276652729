"""
Splitting the nested integral
=============================

``L_l = T_l`` is an ``l``-fold nested integral.  Shrinking the contours in
turn produces pieces ``L_l^(1), ..., L_l^(l)``; the last one is a finite
combination ``sum_j c_(l,j) g_j``.
"""

# %%
import numpy as np

from contourdet import T_chain, derive_g, expansion_coeffs, make_rule, trace_decompose
from contourdet.harness import gen_random

inst = gen_random(n=5, deg=3, seed=3)
p, f, H = inst.p_series(), inst.f_series(), inst.H
nodes = make_rule(inst.contour, 128).nodes
g = derive_g(H, f)

# %%
for ell in range(1, inst.n + 1):
    pieces = trace_decompose(ell, H, p, f)
    total = sum(r(nodes) for r in pieces)
    full = T_chain(ell, H, p)(nodes)
    c = expansion_coeffs(ell, p[ell - 1], f)
    last = sum(c[j] * g[j](nodes) for j in range(ell))
    print(f"l={ell}: |sum - L| = {np.max(np.abs(total - full)):.1e}, "
          f"|L^(l) - sum c g| = {np.max(np.abs(pieces[-1](nodes) - last)):.1e}")
