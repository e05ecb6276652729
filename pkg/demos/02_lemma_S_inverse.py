"""
The inverse of S through nested residues
========================================

``S(i, j) = [v^(j-i)] p_i`` is unit upper triangular.  Its inverse ``W`` is
built purely from the series chain with the ratio factors
``P_i = p_i / p_(i-1)``; no linear solve is involved.
"""

# %%
import numpy as np

from contourdet import LaurentSeries, build_A, build_R, build_S, build_W

rng = np.random.default_rng(0)
n, deg = 8, 4


def unit_poly():
    return [1.0] + list(0.2 * (rng.normal(size=deg) + 1j * rng.normal(size=deg)))


p = [LaurentSeries.poly(unit_poly(), n + deg + 8) for _ in range(n)]
f = [LaurentSeries.poly(unit_poly(), n + deg + 8) for _ in range(n)]

# %%
S, W = build_S(p), build_W(p)
print("max |S W - I| =", np.max(np.abs(S @ W - np.eye(n))))
print("max |W - inv(S)| =", np.max(np.abs(W - np.linalg.inv(S))))

# %% [markdown]
# ``A = S R`` factorises the residue matrix of ``p_i f_j``.

# %%
A, R = build_A(p, f), build_R(f)
print("max |S R - A| =", np.max(np.abs(S @ R - A)))
