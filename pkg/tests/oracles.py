"""Independent reference computations used by the tests.

Nothing here imports the series engine or the rational-function algebra: each
oracle works from raw coefficient lists with plain loops or direct quadrature.
"""

from __future__ import annotations

from math import comb

import numpy as np


def naive_add(a_lo, a, b_lo, b):
    """Index-by-index sum of two coefficient lists with given lowest exponents."""
    out = {}
    for k, c in enumerate(a):
        out[a_lo + k] = out.get(a_lo + k, 0) + c
    for k, c in enumerate(b):
        out[b_lo + k] = out.get(b_lo + k, 0) + c
    return out


def naive_mul(a_lo, a, b_lo, b):
    out = {}
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            e = a_lo + b_lo + i + j
            out[e] = out.get(e, 0) + x * y
    return out


def power_eval(coeffs, z):
    return sum(c * z**k for k, c in enumerate(coeffs))


def rational_eval(num, den, z):
    return power_eval(num, z) / power_eval(den, z)


def cofactor_det(M):
    M = [list(r) for r in M]
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return total


def binom_poly(k):
    return [comb(k, j) for j in range(k + 1)]


def circle(radius, m, center=0.0):
    v = center + radius * np.exp(2j * np.pi * np.arange(m) / m)
    return v, (v - center) / m


def poly_ratio_factors(p_polys):
    """Callables for ``P_1 = p_1`` and ``P_i = p_i / p_(i-1)`` by direct evaluation."""

    def make(i):
        if i == 0:
            return lambda v: power_eval(p_polys[0], v)
        return lambda v: power_eval(p_polys[i], v) / power_eval(p_polys[i - 1], v)

    return [make(i) for i in range(len(p_polys))]


def nested_T_oracle(H_vals, p_polys, ell, radii=(0.10, 0.05, 0.025), m=512):
    """Nested product quadrature of

        H(v_1, u) / (prod_{i<ell} (v_i - v_(i+1)) prod_i v_i P_i(v_i))

    over genuinely nested circles ``|v_1| = radii[0] > |v_2| = radii[1] > ...``.

    ``H_vals[d, a]`` is the ``v^d`` coefficient of ``H`` at the ``a``-th point
    ``u``; the result is an array over those points.
    """
    Pf = poly_ratio_factors(p_polys)
    pts = [circle(radii[k], m) for k in range(ell)]
    v, w = pts[ell - 1]
    phi = 1.0 / (v * Pf[ell - 1](v))
    for k in range(ell - 2, -1, -1):
        vo, wo = pts[k]
        inner = (1.0 / (vo[:, None] - v[None, :])) @ (w * phi)
        phi = inner / (vo * Pf[k](vo))
        v, w = vo, wo
    powers = np.array([v**d for d in range(H_vals.shape[0])])
    return np.einsum("a,da,du->u", w * phi, powers, H_vals)


def quad_residue(fun, radius=0.1, m=256):
    """``\\oint_0 fun(v) dv/(2 pi i)`` on a small circle by the trapezoidal rule."""
    v, w = circle(radius, m)
    return np.sum(fun(v) * w)
