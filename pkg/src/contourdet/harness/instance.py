"""Problem instances and their flat JSON encoding.

Complex scalars are ``[re, im]`` pairs; polynomials are ascending coefficient
lists; rational functions are ``{"num": [...], "den": [...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..contour import ContourSpec, make_rule
from ..funcs import POLE_PROBE_POINTS, PoleError, RationalFunction, check_poles
from ..kernel import BridgeH, derive_g
from ..series import LaurentSeries
from ..structmat import check_size

__all__ = [
    "Instance",
    "InstanceError",
    "validate_instance",
    "instance_to_dict",
    "instance_from_dict",
    "dumps_instance",
    "loads_instance",
    "save_instance",
    "load_instance",
    "io_roundtrip",
]

BRIDGE_TOL = 1e-10


class InstanceError(ValueError):
    pass


@dataclass(eq=False)
class Instance:
    p: list
    f: list
    q: list
    contour: ContourSpec = field(default_factory=ContourSpec)
    H: BridgeH | None = None
    g: list | None = None
    seed: int | None = None

    def __post_init__(self):
        self.p = [np.asarray(c, dtype=complex) for c in self.p]
        self.f = [np.asarray(c, dtype=complex) for c in self.f]

    @property
    def n(self) -> int:
        return len(self.p)

    def default_trunc(self) -> int:
        deg = max(max(c.size for c in self.p + self.f) - 1, 0)
        if self.H is not None:
            deg = max(deg, self.H.vdeg)
        return self.n + deg + 8

    def p_series(self, trunc: int | None = None) -> list[LaurentSeries]:
        trunc = self.default_trunc() if trunc is None else trunc
        return [LaurentSeries.poly(c, trunc) for c in self.p]

    def f_series(self, trunc: int | None = None) -> list[LaurentSeries]:
        trunc = self.default_trunc() if trunc is None else trunc
        return [LaurentSeries.poly(c, trunc) for c in self.f]

    def p_is_one(self) -> bool:
        return all(np.array_equal(np.trim_zeros(c, "b"), [1]) for c in self.p)

    def q_is_bll(self) -> bool:
        """``q_l(u) = u^(l-1)`` exactly."""
        for ell, r in enumerate(self.q, start=1):
            want = np.zeros(ell, dtype=complex)
            want[-1] = 1
            if not (np.array_equal(r.num, want) and np.array_equal(r.den, [1])):
                return False
        return True


def validate_instance(inst: Instance, allow_large: bool = False):
    """Raise :class:`InstanceError` unless every instance invariant holds."""
    n = inst.n
    try:
        check_size(n, allow_large)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    if len(inst.f) != n or len(inst.q) != n:
        raise InstanceError(f"p, f, q must all have length n = {n}")
    for name, polys in (("p", inst.p), ("f", inst.f)):
        for i, c in enumerate(polys, start=1):
            if c.size == 0 or c[0] != 1:
                got = c[0] if c.size else 0
                raise InstanceError(f"{name}_{i}(0) must be exactly 1, got {got}")
    if inst.H is None and inst.g is None:
        raise InstanceError("at least one of H and g is required")
    if inst.g is not None and len(inst.g) != n:
        raise InstanceError(f"g must have length n = {n}")

    probe = inst.contour.points(POLE_PROBE_POINTS)
    funcs = [(f"q_{i}", r) for i, r in enumerate(inst.q, start=1)]
    if inst.g is not None:
        funcs += [(f"g_{i}", r) for i, r in enumerate(inst.g, start=1)]
    if inst.H is not None:
        funcs += [(f"H[v^{d}]", r) for d, r in enumerate(inst.H.vcoeffs)]
    for name, r in funcs:
        try:
            check_poles(r, probe, name=name)
        except PoleError as exc:
            raise InstanceError(str(exc)) from exc

    if inst.H is not None and inst.g is not None:
        nodes = make_rule(inst.contour, 128).nodes
        derived = derive_g(inst.H, inst.f_series())
        gap = max(np.max(np.abs(d(nodes) - g(nodes))) for d, g in zip(derived, inst.g))
        if gap > BRIDGE_TOL:
            raise InstanceError(f"H and g violate the bridge relation (max residual {gap:.3e})")


# -- JSON ---------------------------------------------------------------------


def _cplx_list(c):
    return [[float(z.real), float(z.imag)] for z in np.asarray(c, dtype=complex)]


def _parse_cplx_list(obj, path):
    try:
        return np.array([complex(float(re), float(im)) for re, im in obj], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"{path}: expected a list of [re, im] pairs") from exc


def _rf_to_dict(r: RationalFunction):
    return {"num": _cplx_list(r.num), "den": _cplx_list(r.den)}


def _rf_from_dict(d, path):
    if not isinstance(d, dict) or "num" not in d or "den" not in d:
        raise InstanceError(f"{path}: expected an object with 'num' and 'den'")
    try:
        return RationalFunction(_parse_cplx_list(d["num"], f"{path}.num"), _parse_cplx_list(d["den"], f"{path}.den"))
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(f"{path}: {exc}") from exc


def instance_to_dict(inst: Instance) -> dict:
    d = {
        "n": inst.n,
        "p": [_cplx_list(c) for c in inst.p],
        "f": [_cplx_list(c) for c in inst.f],
        "q": [_rf_to_dict(r) for r in inst.q],
        "contour": inst.contour.to_json(),
    }
    if inst.H is not None:
        d["H"] = [_rf_to_dict(r) for r in inst.H.vcoeffs]
    if inst.g is not None:
        d["g"] = [_rf_to_dict(r) for r in inst.g]
    if inst.seed is not None:
        d["seed"] = inst.seed
    return d


def instance_from_dict(d: dict, validate: bool = True, allow_large: bool = False) -> Instance:
    if not isinstance(d, dict):
        raise InstanceError("$: expected a JSON object")
    for key in ("n", "p", "f", "q", "contour"):
        if key not in d:
            raise InstanceError(f"$.{key}: missing")
    p = [_parse_cplx_list(c, f"$.p[{i}]") for i, c in enumerate(d["p"])]
    f = [_parse_cplx_list(c, f"$.f[{i}]") for i, c in enumerate(d["f"])]
    q = [_rf_from_dict(r, f"$.q[{i}]") for i, r in enumerate(d["q"])]
    H = None
    if d.get("H") is not None:
        H = BridgeH([_rf_from_dict(r, f"$.H[{i}]") for i, r in enumerate(d["H"])])
    g = None
    if d.get("g") is not None:
        g = [_rf_from_dict(r, f"$.g[{i}]") for i, r in enumerate(d["g"])]
    try:
        contour = ContourSpec.from_json(d["contour"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"$.contour: {exc}") from exc
    inst = Instance(p=p, f=f, q=q, contour=contour, H=H, g=g, seed=d.get("seed"))
    if int(d["n"]) != inst.n:
        raise InstanceError(f"$.n: declares {d['n']} but p has {inst.n} entries")
    if validate:
        validate_instance(inst, allow_large)
    return inst


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=1)


def loads_instance(text: str, **kw) -> Instance:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return instance_from_dict(d, **kw)


def save_instance(inst: Instance, path):
    Path(path).write_text(dumps_instance(inst) + "\n")


def load_instance(path, **kw) -> Instance:
    try:
        return loads_instance(Path(path).read_text(), **kw)
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from exc


def io_roundtrip(inst: Instance) -> Instance:
    return loads_instance(dumps_instance(inst))
