import numpy as np
import pytest

from conftest import random_unit_poly, series_list
from contourdet.contour import ContourSpec, make_rule
from contourdet.funcs import RationalFunction
from contourdet.kernel import (
    BridgeH,
    KernelContractError,
    KernelForm,
    T_chain,
    bll_form,
    construct_H,
    derive_g,
    general_form,
    kernel_eval,
    kernel_matrix,
    simplified_form,
    trace_decompose,
)
from contourdet.series import LaurentSeries, ls_coeff, ls_recip
from contourdet.structmat import expansion_coeffs
from oracles import binom_poly, circle, nested_T_oracle, poly_ratio_factors, power_eval

T = 30
STD = ContourSpec(-1, 0.5)
NODES = make_rule(STD, 128).nodes


def rand_rf(rng, pole=None):
    if pole is None:
        pole = -1 + rng.choice([0.2, 0.85]) * np.exp(2j * np.pi * rng.uniform())
    return RationalFunction(rng.normal(size=3) * 0.5 + 0.5j * rng.normal(size=3), [-pole, 1])


def rand_case(rng, n, deg):
    pp = [random_unit_poly(rng, deg) for _ in range(n)]
    ff = [random_unit_poly(rng, deg) for _ in range(n)]
    zH = -1 + 0.85 * np.exp(2j * np.pi * rng.uniform())
    H = BridgeH([rand_rf(rng, zH) for _ in range(n)])
    return pp, ff, H


# -- bridge -------------------------------------------------------------------------


def test_construct_H_trivial_f():
    g = [RationalFunction([k + 1], [3, 1]) for k in range(3)]
    H = construct_H(series_list([[1]] * 3, T), g)
    for m in range(3):
        np.testing.assert_allclose(H.vcoeffs[m](NODES), g[m](NODES), rtol=0, atol=0)


def test_construct_H_n1_constant_in_v(rng):
    g = [rand_rf(rng)]
    H = construct_H(series_list([random_unit_poly(rng, 3)], T), g)
    assert H.vdeg == 0
    np.testing.assert_allclose(H.vcoeffs[0](NODES), g[0](NODES), rtol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_bridge_roundtrip_g(seed):
    rng = np.random.default_rng(seed)
    n = 6
    f = series_list([random_unit_poly(rng, 4) for _ in range(n)], T)
    g = [rand_rf(rng) for _ in range(n)]
    back = derive_g(construct_H(f, g), f)
    for a, b in zip(back, g):
        assert np.max(np.abs(a(NODES) - b(NODES))) <= 1e-11


def test_bridge_relation_by_quadrature(rng):
    # residual of the defining relation, v-integral done numerically
    n = 4
    ff = [random_unit_poly(rng, 3) for _ in range(n)]
    g = [rand_rf(rng) for _ in range(n)]
    H = construct_H(series_list(ff, T), g)
    v, w = circle(0.5, 128)
    Hv = np.array([sum(c(u) * v**d for d, c in enumerate(H.vcoeffs)) for u in NODES[::8]])
    for i in range(1, n + 1):
        lhs = Hv @ (power_eval(ff[i - 1], v) / v**i * w)
        assert np.max(np.abs(lhs - g[i - 1](NODES[::8]))) <= 1e-10


def test_derive_g_examples():
    H1 = BridgeH([RationalFunction.constant(1)])
    f = series_list([binom_poly(5)] * 4, T)
    g = derive_g(H1, f)
    for i in range(1, 5):
        assert g[i - 1](0.3) == pytest.approx(binom_poly(5)[i - 1])
    assert derive_g(H1, f)[2](0.3) == 10

    Hv = BridgeH([RationalFunction.zero(), RationalFunction.constant(1)])
    g1, g2 = derive_g(Hv, series_list([[1]] * 2, T))
    assert g1.is_zero and g2(0.7) == 1


# -- T chain ----------------------------------------------------------------------


def test_T_chain_p_one_collapse(rng):
    n = 5
    _, _, H = rand_case(rng, n, 2)
    p = series_list([[1]] * n, T)
    for ell in range(1, n + 1):
        Tl = T_chain(ell, H, p)
        np.testing.assert_array_equal(Tl.num, H.vcoeffs[ell - 1].num)
        np.testing.assert_array_equal(Tl.den, H.vcoeffs[ell - 1].den)


def test_T_chain_single_link(rng):
    n = 3
    pp, _, H = rand_case(rng, n, 3)
    p = series_list(pp, T)
    T1 = T_chain(1, H, p)
    rv = ls_recip(p[0].shift(1))
    want = sum(H.vcoeffs[d](NODES) * ls_coeff(rv, -d - 1) for d in range(n))
    assert np.max(np.abs(T1(NODES) - want)) <= 1e-14
    # and against direct quadrature of H(v,u) / (v p_1(v))
    v, w = circle(0.1, 256)
    Hn = H.at(NODES[::16])
    vp = np.array([v**d for d in range(n)])
    quad = np.einsum("a,da,du->u", w / (v * power_eval(pp[0], v)), vp, Hn)
    assert np.max(np.abs(quad - T1(NODES[::16]))) <= 1e-12


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("ell", [2, 3])
def test_T_chain_vs_nested_quadrature(seed, ell):
    rng = np.random.default_rng(1000 + seed)
    n = 4
    pp, _, H = rand_case(rng, n, 3)
    got = T_chain(ell, H, series_list(pp, T))(NODES)
    ref = nested_T_oracle(H.at(NODES), pp, ell)
    assert np.max(np.abs(got - ref)) <= 1e-8 * np.max(np.abs(ref))


# -- kernel forms ---------------------------------------------------------------------


def test_kernel_n1():
    g1 = RationalFunction([0.3, 1j], [0.5, 1])
    H = BridgeH([g1])
    form = general_form([RationalFunction.constant(1)], H, series_list([[1]], T))
    for u1, u2 in [(NODES[0], NODES[5]), (NODES[40], NODES[99])]:
        assert kernel_eval(form, u1, u2) == pytest.approx(g1(u2), rel=1e-15)


def test_kernel_zero_q(rng):
    _, _, H = rand_case(rng, 3, 2)
    form = general_form([RationalFunction.zero()] * 3, H, series_list([[1]] * 3, T))
    assert not np.any(kernel_matrix(form, NODES, NODES))


def _bll_case(rng, n):
    ff = [random_unit_poly(rng, 3) for _ in range(n)]
    g = [rand_rf(rng) for _ in range(n)]
    H = construct_H(series_list(ff, T), g)
    q = [RationalFunction.poly([0] * ell + [1]) for ell in range(n)]
    return q, H


@pytest.mark.parametrize("n", [1, 3, 6])
def test_three_kernel_forms_agree(n):
    rng = np.random.default_rng(n)
    q, H = _bll_case(rng, n)
    p = series_list([[1]] * n, T)
    Kg = kernel_matrix(general_form(q, H, p), NODES, NODES)
    Ks = kernel_matrix(simplified_form(q, H), NODES, NODES)
    Kb = kernel_matrix(bll_form(H, n, STD.min_abs), NODES, NODES)
    assert np.max(np.abs(Kg - Ks)) <= 1e-10
    assert np.max(np.abs(Kg - Kb)) <= 1e-10


def test_bll_kernel_by_quadrature(rng):
    # \oint u1^n H(v,u2) / (v^n (u1 - v)) dv/(2 pi i) on a small v-circle
    n = 3
    q, H = _bll_case(rng, n)
    v, w = circle(0.1, 256)
    Kb = kernel_matrix(bll_form(H, n, 0.5), NODES[::16], NODES[::16])
    Hn = H.at(NODES[::16])
    for a, u1 in enumerate(NODES[::16]):
        for b in range(Hn.shape[1]):
            Hv = sum(Hn[d, b] * v**d for d in range(Hn.shape[0]))
            ref = np.sum(w * u1**n * Hv / (v**n * (u1 - v)))
            assert abs(Kb[a, b] - ref) <= 1e-12


def test_bll_subtracted_term_vanishes(rng):
    # \oint H(v, u2) / (u1 - v) dv/(2 pi i) = 0 because the integrand is analytic at 0
    n = 4
    _, H = _bll_case(rng, n)
    v, w = circle(0.1, 128)
    Hn = H.at(NODES[::8])
    for u1 in NODES[::8]:
        for b in range(Hn.shape[1]):
            Hv = sum(Hn[d, b] * v**d for d in range(n))
            assert abs(np.sum(w * Hv / (u1 - v))) <= 1e-13


def test_bll_contract():
    H = BridgeH([RationalFunction.constant(1)])
    with pytest.raises(KernelContractError):
        kernel_matrix(bll_form(H, 1, 0.4), [0.1], [0.5])


def test_kernelform_validation():
    with pytest.raises(ValueError):
        KernelForm("nonsense", 1)
    with pytest.raises(ValueError):
        KernelForm("general", 2, q=[RationalFunction.zero()], T=[RationalFunction.zero()])


# -- trace decomposition ------------------------------------------------------------


def test_trace_ell1(rng):
    pp, ff, H = rand_case(rng, 3, 3)
    p = series_list(pp, T)
    (only,) = trace_decompose(1, H, p, series_list(ff, T))
    assert np.max(np.abs(only(NODES) - T_chain(1, H, p)(NODES))) <= 1e-15


def test_trace_p_one(rng):
    n = 5
    _, _, H = rand_case(rng, n, 2)
    p = series_list([[1]] * n, T)
    for ell in range(1, n + 1):
        total = sum(r(NODES) for r in trace_decompose(ell, H, p))
        assert np.max(np.abs(total - H.vcoeffs[ell - 1](NODES))) <= 1e-14


@pytest.mark.parametrize("seed", range(5))
def test_trace_completeness(seed):
    rng = np.random.default_rng(seed)
    n = 6
    pp, ff, H = rand_case(rng, n, 4)
    p, f = series_list(pp, T), series_list(ff, T)
    for ell in range(1, n + 1):
        total = sum(r(NODES) for r in trace_decompose(ell, H, p, f))
        assert np.max(np.abs(total - T_chain(ell, H, p)(NODES))) <= 1e-9


def test_trace_piece_vs_nested_quadrature(rng):
    # L_3^(1): v_1 innermost (|v_1| < |v_3| < |v_2|), computed by brute force
    n = 3
    pp, _, H = rand_case(rng, n, 2)
    p = series_list(pp, T)
    pieces = trace_decompose(3, H, p)
    Pf = poly_ratio_factors(pp)
    m = 512
    v2, w2 = circle(0.10, m)
    v3, w3 = circle(0.05, m)
    v1, w1 = circle(0.025, m)
    phi3 = 1 / (v3 * Pf[2](v3))
    inner = (1 / (v2[:, None] - v3[None, :])) @ (w3 * phi3)  # function of v2
    phi2 = inner / (v2 * Pf[1](v2))
    # v_1 - v_2 with v_1 innermost
    link = (1 / (v1[:, None] - v2[None, :])) @ (w2 * phi2)
    phi1 = link / (v1 * power_eval(pp[0], v1))
    Hn = H.at(NODES)
    ref = np.einsum("a,da,du->u", w1 * phi1, np.array([v1**d for d in range(n)]), Hn)
    got = pieces[0](NODES)
    assert np.max(np.abs(got - ref)) <= 1e-8 * np.max(np.abs(ref))


@pytest.mark.parametrize("seed", range(3))
def test_last_piece_is_combination_of_g(seed):
    rng = np.random.default_rng(seed)
    n = 5
    pp, ff, H = rand_case(rng, n, 3)
    p, f = series_list(pp, T), series_list(ff, T)
    g = derive_g(H, f)
    for ell in range(1, n + 1):
        last = trace_decompose(ell, H, p, f)[-1]
        c = expansion_coeffs(ell, p[ell - 1], f)
        combo = sum(c[j] * g[j](NODES) for j in range(ell))
        assert np.max(np.abs(last(NODES) - combo)) <= 1e-10


@pytest.mark.parametrize("seed", range(40))
def test_bridge_roundtrip_independent_poles(seed):
    # each H coefficient with its own pole, as a user might supply; clustered
    # poles put the monomial-basis denominators out of reach of 1e-11 absolute,
    # so this is checked relative to max |H| on Gamma
    from contourdet.harness.generators import _numerator, _pole, _unit_poly
    from contourdet.harness.rng import Xoshiro256

    r = Xoshiro256(seed)
    n, deg = 1 + r.below(8), r.below(7)
    f = series_list([_unit_poly(r, deg) for _ in range(n)], n + 14)
    H = BridgeH([RationalFunction(_numerator(r), [-_pole(r, STD), 1]) for _ in range(n)])
    H2 = construct_H(f, derive_g(H, f))
    Hn = H.at(NODES)
    gap = max(np.max(np.abs(Hn[d] - H2.coeff(d)(NODES))) for d in range(n))
    assert gap <= 1e-9 * np.max(np.abs(Hn))
