"""Truncated Laurent series in one variable over complex scalars.

A series stores a finite principal part and a regular part that is known up
to (and including) the exponent ``trunc``.  Every origin-centred contour
integral used by the package is a coefficient read on such a series:
``(1/2 pi i) \\oint h(v) dv == coeff(h, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "LaurentSeries",
    "SeriesError",
    "SingularSeriesError",
    "TruncationError",
    "ls_add",
    "ls_mul",
    "ls_recip",
    "ls_coeff",
    "chain_step",
]


class SeriesError(ValueError):
    pass


class SingularSeriesError(SeriesError):
    pass


class TruncationError(SeriesError):
    pass


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """``sum_k coeffs[k] v**(min_exp + k)``, valid for exponents ``<= trunc``.

    Exact zeros at either end of ``coeffs`` are stripped on construction, so
    the lowest stored coefficient of a non-zero series is always non-zero.
    The zero series has empty ``coeffs`` and ``min_exp == 0``.
    """

    min_exp: int
    coeffs: np.ndarray
    trunc: int

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        lo = int(self.min_exp)
        trunc = int(self.trunc)
        keep = trunc - lo + 1
        c = c[: max(keep, 0)]
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c = np.zeros(0, dtype=complex)
            lo = 0
        else:
            lo += int(nz[0])
            c = c[nz[0] : nz[-1] + 1]
        c.setflags(write=False)
        object.__setattr__(self, "min_exp", lo)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "trunc", trunc)

    # -- constructors -----------------------------------------------------

    @classmethod
    def poly(cls, coeffs: Sequence[complex], trunc: int, shift: int = 0) -> "LaurentSeries":
        """Polynomial ``sum_k coeffs[k] v**(k + shift)`` (ascending powers)."""
        return cls(shift, coeffs, trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, c: complex = 1.0) -> "LaurentSeries":
        return cls(k, [c], trunc)

    @classmethod
    def zero(cls, trunc: int) -> "LaurentSeries":
        return cls(0, [], trunc)

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def max_exp(self) -> int:
        """Highest stored exponent (``min_exp - 1`` for the zero series)."""
        return self.min_exp + self.coeffs.size - 1

    @property
    def valuation(self) -> int:
        # lowest exponent that may be non-zero; for the zero series that is
        # the first unknown exponent
        return self.trunc + 1 if self.is_zero else self.min_exp

    def coeff(self, k: int) -> complex:
        return ls_coeff(self, k)

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for exponents ``lo..hi`` inclusive."""
        if hi > self.trunc:
            raise TruncationError(f"exponent {hi} above truncation order {self.trunc}")
        out = np.zeros(hi - lo + 1, dtype=complex)
        a, b = max(lo, self.min_exp), min(hi, self.max_exp)
        if a <= b:
            out[a - lo : b - lo + 1] = self.coeffs[a - self.min_exp : b - self.min_exp + 1]
        return out

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``v**k`` (exact, so the truncation order moves too)."""
        return LaurentSeries(self.min_exp + k, self.coeffs, self.trunc + k)

    def principal_part(self) -> "LaurentSeries":
        return chain_step(self)

    def __call__(self, v):
        """Evaluate the stored terms at ``v`` (a truncated sum)."""
        v = np.asarray(v, dtype=complex)
        acc = np.zeros_like(v)
        for c in self.coeffs[::-1]:
            acc = acc * v + c
        return acc * v ** self.min_exp

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, LaurentSeries):
            return ls_add(self, other)
        return ls_add(self, LaurentSeries(0, [other], self.trunc))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_exp, -self.coeffs, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return ls_mul(self, other)
        return LaurentSeries(self.min_exp, self.coeffs * complex(other), self.trunc)

    __rmul__ = __mul__

    def __repr__(self):
        terms = ", ".join(
            f"{c:.6g}*v^{self.min_exp + k}" for k, c in enumerate(self.coeffs)
        )
        return f"LaurentSeries([{terms}] + O(v^{self.trunc + 1}))"


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    trunc = min(a.trunc, b.trunc)
    if a.is_zero:
        return LaurentSeries(b.min_exp, b.coeffs, trunc)
    if b.is_zero:
        return LaurentSeries(a.min_exp, a.coeffs, trunc)
    lo = min(a.min_exp, b.min_exp)
    hi = max(a.max_exp, b.max_exp)
    out = np.zeros(hi - lo + 1, dtype=complex)
    out[a.min_exp - lo : a.max_exp - lo + 1] += a.coeffs
    out[b.min_exp - lo : b.max_exp - lo + 1] += b.coeffs
    return LaurentSeries(lo, out, trunc)


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product, truncated where either factor's unknown tail enters."""
    trunc = min(a.valuation + b.trunc, b.valuation + a.trunc)
    if a.is_zero or b.is_zero:
        return LaurentSeries.zero(trunc)
    return LaurentSeries(a.min_exp + b.min_exp, np.convolve(a.coeffs, b.coeffs), trunc)


def ls_recip(a: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse ``b`` with ``a*b == 1 + O(v**(a.trunc - a.min_exp + 1))``."""
    if a.is_zero:
        raise SingularSeriesError("cannot invert a series with zero leading coefficient")
    m = a.min_exp
    nterms = a.trunc - m + 1
    src = np.zeros(nterms, dtype=complex)
    k = min(nterms, a.coeffs.size)
    src[:k] = a.coeffs[:k]
    inv0 = 1.0 / src[0]
    out = np.zeros(nterms, dtype=complex)
    out[0] = inv0
    for k in range(1, nterms):
        out[k] = -inv0 * np.dot(src[1 : k + 1], out[k - 1 :: -1][:k])
    return LaurentSeries(-m, out, a.trunc - 2 * m)


def ls_coeff(a: LaurentSeries, k: int) -> complex:
    """Coefficient of ``v**k``; reading past the truncation order is an error."""
    if k > a.trunc:
        raise TruncationError(f"coefficient of v^{k} requested, series known only up to v^{a.trunc}")
    if k < a.min_exp or k > a.max_exp:
        return 0j
    return complex(a.coeffs[k - a.min_exp])


def chain_step(t: LaurentSeries) -> LaurentSeries:
    """The map ``w -> \\oint t(v) / (w - v) dv/(2 pi i)`` for ``|w| > |v|``.

    Expanding ``1/(w - v) = sum_k v**k / w**(k+1)`` shows that the result is the
    principal part of ``t`` re-read as a series in ``w``; the regular part of
    ``t`` integrates to zero.
    """
    if t.trunc < -1:
        raise TruncationError(
            f"principal part needs terms up to v^-1, series known only up to v^{t.trunc}"
        )
    if t.is_zero or t.min_exp >= 0:
        return LaurentSeries.zero(t.trunc)
    return LaurentSeries(t.min_exp, t.coeffs[: -t.min_exp], t.trunc)
