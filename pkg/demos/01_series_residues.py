"""
Contour integrals around the origin as coefficient reads
========================================================

Every integral over a small circle around 0 in this package is computed
without quadrature: the integrand is a truncated Laurent series and the
integral is its ``v^-1`` coefficient.
"""

# %%
import numpy as np

from contourdet import LaurentSeries, chain_step, ls_coeff, ls_recip

# %% [markdown]
# ``(1+v)^5 / v^3`` has residue ``C(5, 2) = 10``.

# %%
s = LaurentSeries(-3, [1, 5, 10, 10, 5, 1], trunc=20)
print("residue of (1+v)^5 / v^3:", ls_coeff(s, -1))

# %% [markdown]
# Reciprocals of unit-constant polynomials are power series; ``1/(1+v)``
# alternates.

# %%
r = ls_recip(LaurentSeries.poly([1, 1], trunc=8))
print("1/(1+v):", [ls_coeff(r, k).real for k in range(9)])

# %% [markdown]
# One link of a nested chain: integrating ``t(v)/(w - v)`` over ``|v| < |w|``
# keeps only the negative powers of ``t``.  Compare with the trapezoidal rule
# on ``|v| = 0.3``.

# %%
t = LaurentSeries(-2, [3, 5, 7, 1], trunc=20)
w = 0.9j
m = 256
v = 0.3 * np.exp(2j * np.pi * np.arange(m) / m)
tv = 3 / v**2 + 5 / v + 7 + v
quad = np.mean(v * tv / (w - v))
print("chain_step at w:", complex(chain_step(t)(w)), " quadrature:", quad)
