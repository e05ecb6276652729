"""``det(I + K)`` on ``L^2(Gamma, du/(2 pi i))`` for a finite-rank kernel, by
two independent routes: the ``n x n`` reduction ``det(I + L1 L2) = det(I + L2 L1)``
and a Nystrom discretisation on the quadrature nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .contour import QuadratureRule, make_rule
from .funcs import RationalFunction
from .kernel import KernelForm, kernel_matrix
from .structmat import lu_det

__all__ = ["FredholmResult", "fred_det_rank", "fred_det_nystrom", "nystrom_matrix"]


@dataclass(frozen=True)
class FredholmResult:
    value: complex
    method: str
    m_used: int = 0
    stability_gap: float = 0.0


def fred_det_rank(q: Sequence[RationalFunction], T: Sequence[RationalFunction], rule: QuadratureRule) -> FredholmResult:
    """Exact reduction of ``K(u1, u2) = sum_l q_l(u1) T_l(u2)`` to ``det(I_n + G)``,
    ``G(m, l) = int q_m T_l du/(2 pi i)``.
    """
    if len(q) != len(T):
        raise ValueError("q and T must have the same length")
    n = len(q)
    Q = np.array([r(rule.nodes) for r in q]).reshape(n, rule.m)
    Tv = np.array([r(rule.nodes) for r in T]).reshape(n, rule.m)
    G = (Q * rule.weights) @ Tv.T
    return FredholmResult(lu_det(np.eye(n) + G), "rank", rule.m)


def nystrom_matrix(form: KernelForm, rule: QuadratureRule) -> np.ndarray:
    """``delta_ab + K(u_a, u_b) w_b``."""
    K = kernel_matrix(form, rule.nodes, rule.nodes)
    return np.eye(rule.m) + K * rule.weights[None, :]


def fred_det_nystrom(form: KernelForm, rule: QuadratureRule, check: bool = True) -> FredholmResult:
    """Nystrom determinant on ``rule``; with ``check`` the rule is doubled and
    ``|det(m) - det(2m)|`` recorded as the stability gap.
    """
    value = lu_det(nystrom_matrix(form, rule))
    gap = 0.0
    if check:
        fine = make_rule(rule.contour, 2 * rule.m)
        gap = abs(lu_det(nystrom_matrix(form, fine)) - value)
    return FredholmResult(value, "nystrom", rule.m, gap)
