"""End-to-end check of ``det(A + B) = det(I + K)`` and every intermediate identity."""

from __future__ import annotations

import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, fields

import numpy as np

from ..contour import make_rule
from ..fredholm import fred_det_nystrom, fred_det_rank
from ..kernel import (
    bll_form,
    construct_H,
    derive_g,
    general_form,
    kernel_matrix,
    simplified_form,
    T_all,
    trace_decompose,
)
from ..series import ls_coeff
from ..structmat import (
    alpha_polys,
    build_A,
    build_B,
    build_R,
    build_S,
    build_W,
    chain_factors,
    expansion_coeffs,
    lu_det,
    tri_inverse,
)
from .generators import gen_random
from .instance import Instance, validate_instance
from .rng import Xoshiro256

__all__ = ["VerifyConfig", "VerificationReport", "verify_identity", "exit_code", "run_suite", "suite_instances"]

EXIT_PASS, EXIT_IDENTITY, EXIT_INPUT, EXIT_STABILITY = 0, 1, 2, 3


@dataclass(frozen=True)
class VerifyConfig:
    nodes: int = 128
    tol: float = 1e-8
    stability_tol: float = 1e-9
    lemma_tol: float = 1e-10
    sr_tol: float = 1e-12
    ortho_tol: float = 1e-12
    bridge_tol: float = 1e-10
    ainv_tol: float = 1e-10
    decomp_tol: float = 1e-9
    ell_tol: float = 1e-10
    variant_tol: float = 1e-10
    check_bll: bool = True
    check_trace: bool = True
    allow_large: bool = False


@dataclass
class VerificationReport:
    n: int = 0
    det_finite: complex | None = None
    det_rank: complex | None = None
    det_nystrom: complex | None = None
    rel_diff_rank: float | None = None
    rel_diff_nystrom: float | None = None
    nystrom_gap: float | None = None
    lemma_gap: float | None = None
    sr_gap: float | None = None
    ainv_gap: float | None = None
    ortho_gap: float | None = None
    bridge_gap: float | None = None
    decomp_gap: float | None = None
    ell_gap: float | None = None
    variant_gap: float | None = None
    variants_checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    stability_flag: bool = False
    error: str | None = None
    passed: bool = False
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = {}
        for fld in fields(self):
            v = getattr(self, fld.name)
            if isinstance(v, complex):
                v = [v.real, v.imag]
            elif isinstance(v, float) and not math.isfinite(v):
                v = None
            out[fld.name] = v
        if not timings:
            out.pop("timings")
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=1, sort_keys=True)


def _maxabs(x) -> float:
    return float(np.max(np.abs(x), initial=0.0))


@contextmanager
def _stage(report: VerificationReport, name: str):
    t0 = time.perf_counter()
    try:
        yield
    except Exception as exc:
        report.error = f"{name}: {type(exc).__name__}: {exc}"
        raise
    finally:
        report.timings[name] = round(1e3 * (time.perf_counter() - t0), 3)


def verify_identity(inst: Instance, cfg: VerifyConfig = VerifyConfig()) -> VerificationReport:
    report = VerificationReport(n=inst.n)
    try:
        _run(inst, cfg, report)
    except Exception:
        report.passed = False
        return report
    _judge(report, cfg)
    return report


def _run(inst: Instance, cfg: VerifyConfig, rep: VerificationReport):
    with _stage(rep, "validate"):
        validate_instance(inst, cfg.allow_large)
        rule = make_rule(inst.contour, cfg.nodes)
        p, f = inst.p_series(), inst.f_series()
        n = inst.n

    with _stage(rep, "structure"):
        A, S, R = build_A(p, f), build_S(p), build_R(f)
        factors = chain_factors(p)
        W = build_W(p, factors)
        eye = np.eye(n)
        rep.lemma_gap = max(_maxabs(S @ W - eye), _maxabs(W @ S - eye))
        rep.sr_gap = _maxabs(S @ R - A)
        rep.ainv_gap = _maxabs(tri_inverse(A) - tri_inverse(R) @ W)
        alphas = alpha_polys(f)
        ortho = np.array([[ls_coeff(a * fj, j - 1) for j, fj in enumerate(f, start=1)] for a in alphas])
        rep.ortho_gap = _maxabs(ortho - eye)

    with _stage(rep, "bridge"):
        H = inst.H if inst.H is not None else construct_H(f, inst.g)
        g = inst.g if inst.g is not None else derive_g(H, f)
        # pointwise residue of f_i v^-i H(v, u) at the nodes, bypassing rf_lincomb
        Hn = H.at(rule.nodes)
        F = np.array([[ls_coeff(fi, i - 1 - d) for d in range(Hn.shape[0])] for i, fi in enumerate(f, start=1)])
        gn = np.array([r(rule.nodes) for r in g])
        rep.bridge_gap = _maxabs(F @ Hn - gn)

    with _stage(rep, "finite"):
        B = build_B(inst.q, g, rule)
        rep.det_finite = lu_det(A + B)

    with _stage(rep, "rank"):
        T = T_all(H, p)
        rep.det_rank = fred_det_rank(inst.q, T, rule).value

    with _stage(rep, "nystrom"):
        form = general_form(inst.q, H, p)
        ny = fred_det_nystrom(form, rule)
        rep.det_nystrom = ny.value
        rep.nystrom_gap = ny.stability_gap

    scale = max(1.0, abs(rep.det_finite))
    rep.rel_diff_rank = abs(rep.det_rank - rep.det_finite) / scale
    rep.rel_diff_nystrom = abs(rep.det_nystrom - rep.det_finite) / scale

    if cfg.check_trace:
        with _stage(rep, "trace"):
            nodes = rule.nodes
            dgap = egap = 0.0
            for ell in range(1, n + 1):
                pieces = trace_decompose(ell, H, p, f)
                total = sum(r(nodes) for r in pieces)
                dgap = max(dgap, _maxabs(total - T[ell - 1](nodes)))
                c = expansion_coeffs(ell, p[ell - 1], f)
                egap = max(egap, _maxabs(pieces[-1](nodes) - c @ gn[:ell]))
            rep.decomp_gap, rep.ell_gap = dgap, egap

    if cfg.check_bll and inst.p_is_one():
        with _stage(rep, "variants"):
            nodes = rule.nodes
            Kg = kernel_matrix(form, nodes, nodes)
            vgap = _maxabs(kernel_matrix(simplified_form(inst.q, H), nodes, nodes) - Kg)
            rep.variants_checked = ["general", "simplified_p1"]
            if inst.q_is_bll() and inst.contour.in_bll_region():
                Kb = kernel_matrix(bll_form(H, n, inst.contour.min_abs), nodes, nodes)
                vgap = max(vgap, _maxabs(Kb - Kg))
                rep.variants_checked.append("bll")
            rep.variant_gap = vgap


def _judge(rep: VerificationReport, cfg: VerifyConfig):
    checks = [
        ("rel_diff_rank", cfg.tol),
        ("rel_diff_nystrom", cfg.tol),
        ("lemma_gap", cfg.lemma_tol),
        ("sr_gap", cfg.sr_tol),
        ("ainv_gap", cfg.ainv_tol),
        ("ortho_gap", cfg.ortho_tol),
        ("bridge_gap", cfg.bridge_tol),
        ("decomp_gap", cfg.decomp_tol),
        ("ell_gap", cfg.ell_tol),
        ("variant_gap", cfg.variant_tol),
    ]
    rep.failures = [name for name, tol in checks if getattr(rep, name) is not None and not getattr(rep, name) <= tol]
    rep.stability_flag = not rep.nystrom_gap <= cfg.stability_tol
    rep.passed = not rep.failures and not rep.stability_flag


def exit_code(rep: VerificationReport) -> int:
    if rep.error is not None:
        return EXIT_INPUT
    if rep.failures:
        return EXIT_IDENTITY
    if rep.stability_flag:
        return EXIT_STABILITY
    return EXIT_PASS


def suite_instances(count: int, n_max: int, seed: int):
    """The deterministic batch used by ``suite``: sizes and degrees are drawn
    from the master stream, each instance gets its own 32-bit seed.
    """
    rng = Xoshiro256(seed)
    for _ in range(count):
        n = 1 + rng.below(n_max)
        deg = rng.below(7)
        sub = rng.next_u64() >> 32
        yield gen_random(n, deg, sub)


def run_suite(count: int = 50, n_max: int = 8, seed: int = 7, cfg: VerifyConfig = VerifyConfig()):
    return [verify_identity(inst, cfg) for inst in suite_instances(count, n_max, seed)]
