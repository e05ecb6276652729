"""
TASEP data and the three kernel forms
=====================================

With ``p = 1`` and ``q_l = u^(l-1)`` the general kernel collapses twice: the
nested integral becomes a plain coefficient of ``H``, and the sum over ``l``
becomes one origin integral of ``u1^n H(v, u2) / (v^n (u1 - v))``.
"""

# %%
import numpy as np

from contourdet import (
    ContourSpec,
    bll_form,
    construct_H,
    general_form,
    kernel_matrix,
    make_rule,
    simplified_form,
)
from contourdet.harness import gen_tasep, verify_identity

inst = gen_tasep([3, 1, 0, -2])
H = construct_H(inst.f_series(), inst.g)
nodes = make_rule(inst.contour, 128).nodes

Kg = kernel_matrix(general_form(inst.q, H, inst.p_series()), nodes, nodes)
Ks = kernel_matrix(simplified_form(inst.q, H), nodes, nodes)
Kb = kernel_matrix(bll_form(H, inst.n, inst.contour.min_abs), nodes, nodes)
print("general vs simplified:", np.max(np.abs(Kg - Ks)))
print("general vs bll:       ", np.max(np.abs(Kg - Kb)))

# %% [markdown]
# On the standard circle the only pole of ``g_i`` (at 0) lies outside, so
# ``B = 0`` and both sides equal 1.  A circle around the origin is no better:
# there ``B = -A``.  Multiplying every ``g_i`` by ``1/(u + 0.9)`` puts a pole
# inside the contour and gives a genuinely nontrivial determinant, with all
# three kernel forms still applicable.

# %%
import dataclasses

from contourdet import RationalFunction, rf_mul

weighted = dataclasses.replace(inst, g=[rf_mul(g, RationalFunction([1], [0.9, 1])) for g in inst.g])
for label, case in (("plain", inst), ("around 0", dataclasses.replace(inst, contour=ContourSpec(0, 0.5))),
                    ("weighted", weighted)):
    rep = verify_identity(case)
    print(f"{label:9s} det = {rep.det_finite:.12f}  rank gap {rep.rel_diff_rank:.1e}  "
          f"variants {rep.variants_checked}  passed {rep.passed}")
