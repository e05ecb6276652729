"""Instance generators: seeded random instances and the TASEP family."""

from __future__ import annotations

from math import comb
from typing import Sequence

import numpy as np

from ..contour import ContourSpec
from ..funcs import RationalFunction
from ..kernel import BridgeH, derive_g
from ..structmat import MAX_N
from .instance import Instance, InstanceError
from .rng import Xoshiro256

__all__ = ["gen_random", "gen_tasep", "STANDARD_CONTOUR", "POLE_MARGIN"]

STANDARD_CONTOUR = ContourSpec(center=-1.0, radius=0.5)
POLE_MARGIN = 0.2
_POLE_REACH = 1.2  # poles are drawn within this distance of the centre
_NUM_RADIUS = 0.5
_MAX_ATTEMPTS = 32


def _pole(rng: Xoshiro256, contour: ContourSpec) -> complex:
    for _ in range(_MAX_ATTEMPTS):
        rho = _POLE_REACH * rng.uniform()
        ang = 2 * np.pi * rng.uniform()
        if abs(rho - contour.radius) >= POLE_MARGIN:
            return contour.center + rho * complex(np.cos(ang), np.sin(ang))
    raise InstanceError(f"no pole outside the {POLE_MARGIN} margin of the contour after {_MAX_ATTEMPTS} attempts")


def _unit_poly(rng: Xoshiro256, deg: int) -> list[complex]:
    if deg == 0:
        return [1.0]
    return [1.0] + [rng.disk(0.8 / deg) for _ in range(deg)]


def _numerator(rng: Xoshiro256) -> list[complex]:
    return [rng.disk(_NUM_RADIUS) for _ in range(3)]


def gen_random(n: int, deg: int, seed: int) -> Instance:
    """Random instance: unit-constant polynomials ``p, f`` of degree ``deg``,
    ``q_i`` with one simple pole each, ``H`` of ``v``-degree ``n - 1`` whose
    coefficients share one simple pole, and ``g`` derived from ``H``.
    """
    if not 1 <= n <= MAX_N:
        raise InstanceError(f"n must lie in 1..{MAX_N}, got {n}")
    if not 0 <= deg <= 6:
        raise InstanceError(f"deg must lie in 0..6, got {deg}")
    rng = Xoshiro256(seed)
    contour = STANDARD_CONTOUR
    p = [_unit_poly(rng, deg) for _ in range(n)]
    f = [_unit_poly(rng, deg) for _ in range(n)]
    q = []
    for _ in range(n):
        z = _pole(rng, contour)
        q.append(RationalFunction(_numerator(rng), [-z, 1.0]))
    zH = _pole(rng, contour)
    H = BridgeH([RationalFunction(_numerator(rng), [-zH, 1.0]) for _ in range(n)])
    inst = Instance(p=p, f=f, q=q, contour=contour, H=H, seed=seed)
    inst.g = derive_g(H, inst.f_series())
    return inst


def gen_tasep(y: Sequence[int]) -> Instance:
    """``f_i = (1+v)^(y_i+i)``, ``g_i = -u^-i (1+u)^(y_i+i)``, ``q_i = u^(i-1)``, ``p_i = 1``."""
    y = [int(v) for v in y]
    n = len(y)
    if not 1 <= n <= MAX_N:
        raise InstanceError(f"need 1..{MAX_N} entries in y, got {n}")
    if any(a <= b for a, b in zip(y, y[1:])):
        raise InstanceError(f"y must be strictly decreasing, got {y}")
    expo = [yi + i for i, yi in enumerate(y, start=1)]
    if min(expo) < 0:
        raise InstanceError(f"y_i + i must be non-negative, got exponents {expo}")
    f = [[comb(k, j) for j in range(k + 1)] for k in expo]
    g = []
    for i, k in enumerate(expo, start=1):
        den = np.zeros(i + 1)
        den[i] = 1.0
        g.append(RationalFunction([-comb(k, j) for j in range(k + 1)], den))
    q = []
    for i in range(1, n + 1):
        num = np.zeros(i)
        num[-1] = 1.0
        q.append(RationalFunction(num, [1.0]))
    return Instance(p=[[1.0]] * n, f=f, q=q, contour=STANDARD_CONTOUR, g=g)
