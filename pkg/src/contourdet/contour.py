"""Circular contours and the trapezoidal rule for ``int_Gamma h(u) du/(2 pi i)``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["ContourSpec", "QuadratureRule", "make_rule", "integrate", "QuadratureError", "MIN_NODES"]

MIN_NODES = 8


class QuadratureError(ValueError):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Counterclockwise circle ``|u - center| = radius``."""

    center: complex = -1.0
    radius: float = 0.5
    kind: str = "circle"

    def __post_init__(self):
        if self.kind != "circle":
            raise QuadratureError(f"unsupported contour kind {self.kind!r}")
        if not self.radius > 0:
            raise QuadratureError("contour radius must be positive")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def min_abs(self) -> float:
        """Distance from the origin to the nearest point of the circle."""
        return abs(self.center) - self.radius

    def in_bll_region(self) -> bool:
        """Inside ``|u + 1| < 1`` and bounded away from ``u = 0``."""
        return self.min_abs > 0 and abs(self.center + 1) + self.radius < 1

    def points(self, m: int) -> np.ndarray:
        theta = 2 * np.pi * np.arange(m) / m
        return self.center + self.radius * np.exp(1j * theta)

    def to_json(self) -> dict:
        return {"kind": self.kind, "center": [self.center.real, self.center.imag], "radius": self.radius}

    @classmethod
    def from_json(cls, d: dict) -> "ContourSpec":
        re, im = d["center"]
        return cls(center=complex(re, im), radius=float(d["radius"]), kind=d.get("kind", "circle"))


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    contour: ContourSpec = field(default_factory=ContourSpec)

    @property
    def m(self) -> int:
        return self.nodes.size


def make_rule(c: ContourSpec, m: int) -> QuadratureRule:
    """Trapezoidal rule in the angle; ``du/(2 pi i)`` is folded into the weights."""
    if m < MIN_NODES:
        raise QuadratureError(f"need at least {MIN_NODES} nodes, got {m}")
    nodes = c.points(m)
    weights = (nodes - c.center) / m
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, c)


def integrate(samples, rule: QuadratureRule) -> complex:
    samples = np.asarray(samples, dtype=complex)
    if samples.shape[-1] != rule.m:
        raise QuadratureError(f"{samples.shape[-1]} samples for a {rule.m}-node rule")
    out = samples @ rule.weights
    return complex(out) if out.ndim == 0 else out
