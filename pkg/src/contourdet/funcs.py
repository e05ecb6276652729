"""Rational functions of ``u``, the representation used for everything living on
the contour: ``q_i``, ``g_i``, the ``u``-coefficients of ``H(v, u)`` and the
kernel factors derived from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = [
    "RationalFunction",
    "PoleError",
    "rf_eval",
    "rf_lincomb",
    "rf_mul",
    "check_poles",
    "DEN_FLOOR",
    "POLE_PROBE_POINTS",
    "POLE_PROBE_THRESHOLD",
]

DEN_FLOOR = 1e-12
POLE_PROBE_POINTS = 4096
POLE_PROBE_THRESHOLD = 1e-8
ROOT_MATCH = 1e-8


class PoleError(ValueError):
    """Denominator (nearly) vanishes at ``z``."""

    def __init__(self, msg, z=None, index=None):
        super().__init__(msg)
        self.z = z
        self.index = index


def _trim(c):
    c = np.array(c, dtype=complex).reshape(-1)
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    nz = np.flatnonzero(c)
    c = c[: nz[-1] + 1] if nz.size else c[:1]
    c.setflags(write=False)
    return c


def _horner(c, z):
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


@dataclass(frozen=True, eq=False)
class RationalFunction:
    """``num(u) / den(u)`` with coefficients in ascending powers of ``u``."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if np.max(np.abs(den)) < DEN_FLOOR:
            raise ValueError("denominator polynomial is identically zero")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def constant(cls, c: complex) -> "RationalFunction":
        return cls([c], [1.0])

    @classmethod
    def poly(cls, coeffs: Sequence[complex]) -> "RationalFunction":
        return cls(coeffs, [1.0])

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls([0.0], [1.0])

    @property
    def deg_num(self) -> int:
        return self.num.size - 1

    @property
    def deg_den(self) -> int:
        return self.den.size - 1

    @property
    def is_zero(self) -> bool:
        return not np.any(self.num)

    def __call__(self, z):
        return rf_eval(self, z)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return rf_mul(self, other)
        return RationalFunction(self.num * complex(other), self.den)

    __rmul__ = __mul__

    def __add__(self, other):
        return rf_lincomb([1.0, 1.0], [self, other])

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return rf_lincomb([1.0, -1.0], [self, other])

    def __repr__(self):
        return f"RationalFunction(num={self.num.tolist()}, den={self.den.tolist()})"


def rf_eval(r: RationalFunction, z):
    """Evaluate ``r`` at a scalar or array ``z`` by Horner's rule.

    Raises :class:`PoleError` if ``|den(z)| <= 1e-12`` anywhere.
    """
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    d = _horner(r.den, zz)
    bad = np.abs(d) <= DEN_FLOOR
    if np.any(bad):
        idx = int(np.flatnonzero(bad.reshape(-1))[0])
        zbad = complex(zz.reshape(-1)[idx])
        raise PoleError(f"denominator vanishes near u = {zbad}", z=zbad, index=None if scalar else idx)
    val = _horner(r.num, zz) / d
    return complex(val) if scalar else val


def _common(d1, d2):
    """Common denominator of ``d1`` and ``d2`` plus the two cofactors.

    Equal denominators and exact multiples are recognised exactly.  Otherwise
    the least common multiple is assembled from the roots: a root of ``d2``
    within ``ROOT_MATCH`` (relative) of an unused root of ``d1`` is treated as
    shared.  Without this, repeated poles pile up in a plain product and the
    monomial coefficients lose accuracy quickly.
    """
    one = np.ones(1, dtype=complex)
    if d1.size == d2.size and np.array_equal(d1, d2):
        return d1, one, one
    if d1.size >= d2.size:
        quo, rem = P.polydiv(d1, d2)
        if np.max(np.abs(rem)) <= 1e-14 * np.max(np.abs(d1)):
            return d1, one, quo
    else:
        quo, rem = P.polydiv(d2, d1)
        if np.max(np.abs(rem)) <= 1e-14 * np.max(np.abs(d2)):
            return d2, quo, one
    r1, r2 = P.polyroots(d1), P.polyroots(d2)
    used = np.zeros(r1.size, dtype=bool)
    extra = []
    for s in r2:
        dist = np.where(used, np.inf, np.abs(r1 - s))
        k = int(np.argmin(dist)) if r1.size else -1
        if k >= 0 and dist[k] <= ROOT_MATCH * max(1.0, abs(s)):
            used[k] = True
        else:
            extra.append(s)
    f_acc = P.polyfromroots(extra) if extra else one
    f_t = (d1[-1] / d2[-1]) * (P.polyfromroots(r1[~used]) if np.any(~used) else one)
    return P.polymul(d1, f_acc), f_acc.astype(complex), f_t.astype(complex)


def rf_lincomb(coeffs: Sequence[complex], terms: Sequence[RationalFunction]) -> RationalFunction:
    """``sum_k coeffs[k] * terms[k]`` as a single rational function."""
    if len(coeffs) != len(terms) or len(terms) == 0:
        raise ValueError("rf_lincomb needs equally long, non-empty sequences")
    num = np.zeros(1, dtype=complex)
    den = np.ones(1, dtype=complex)
    for c, t in zip(coeffs, terms):
        c = complex(c)
        if c == 0 or t.is_zero:
            continue
        if not np.any(num):
            num, den = c * t.num, t.den
            continue
        den, f_acc, f_t = _common(den, t.den)
        num = P.polyadd(P.polymul(num, f_acc), c * P.polymul(t.num, f_t))
    return RationalFunction(num, den)


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return RationalFunction(P.polymul(a.num, b.num), P.polymul(a.den, b.den))


def check_poles(r: RationalFunction, points, threshold: float = POLE_PROBE_THRESHOLD, name: str = "function"):
    """Raise :class:`PoleError` if ``|den|`` drops below ``threshold`` on ``points``."""
    pts = np.asarray(points, dtype=complex)
    d = np.abs(_horner(r.den, pts))
    k = int(np.argmin(d))
    if d[k] < threshold:
        raise PoleError(
            f"{name}: denominator |den| = {d[k]:.3e} at probe node {k} (u = {complex(pts[k])})",
            z=complex(pts[k]),
            index=k,
        )
