import numpy as np
import pytest

from univalence.criteria import CriterionParams, GridConfig, theorem2_parts
from univalence.integral import IntegralOperatorInput, f_beta_point
from univalence.loewner import (
    LoewnerChain,
    LoewnerConfig,
    a1,
    chain_value,
    g_function,
    h_function,
    p_function,
    validate_chain,
)
from univalence.series import Series, builtin, identity

from helpers import near_identity, random_disk, random_t2_params, random_t4_params

Z = identity()
P0 = CriterionParams()
ZS = np.array([0.0, 0.3, -0.5j, 0.6 + 0.6j, -0.89])


@pytest.mark.parametrize("b", [1.0, 2.0, 0.5])
def test_identity_chain_closed_form(b):
    cfg = LoewnerConfig(b=b)
    for t in (0.0, 0.25, 1.0, 5.0):
        np.testing.assert_allclose(chain_value(Z, Z, Z, P0, cfg, ZS, t), np.exp(b * t) * ZS, rtol=1e-13)
        p, w = p_function(Z, Z, Z, P0, cfg, ZS, t)
        np.testing.assert_allclose(p, 1 / b, atol=1e-6)
        np.testing.assert_allclose(w, (1 / b - 1) / (1 / b + 1), atol=1e-6)


def test_chain_vanishes_at_origin():
    f = near_identity(np.random.default_rng(0), 0.2)
    for t in (0.0, 1.0, 3.0):
        assert chain_value(f, f, f, P0, LoewnerConfig(), 0.0, t)[0] == 0


def test_a1_closed_form():
    cfg = LoewnerConfig(a=1, b=1)
    assert a1(P0, cfg, 0.0) == 1
    for t in (0.1, 1.0, 3.0):
        assert abs(a1(P0, cfg, t) - np.exp(t)) < 1e-12 * np.exp(t)
    mods = [abs(a1(P0, cfg, t)) for t in (0, 5, 10, 20)]
    assert all(u < v for u, v in zip(mods, mods[1:])) and mods[-1] > 1e6


def test_a1_matches_linear_coefficient():
    rng = np.random.default_rng(1)
    p = CriterionParams(alpha=0.1 + 0.05j, beta=1.3 - 0.2j, c=0.2, m=1.5, n=1)
    f, g, h = (near_identity(rng, 0.1) for _ in range(3))
    cfg = LoewnerConfig()
    for variant in ("T2", "T4"):
        chain = LoewnerChain(f, g, h, p, cfg, variant)
        for t in (0.0, 0.5, 2.0):
            eps = 1e-6
            lin = chain.value(np.array([eps]), t)[0] / eps
            assert abs(lin - chain.a1(t)) <= 1e-4 * abs(chain.a1(t))


def test_t0_anchor_and_g_reduction():
    rng = np.random.default_rng(2)
    p = CriterionParams(alpha=0.1, beta=1.5 + 0.3j, c=0.1, m=1.2, n=2)
    f, g, h = (near_identity(rng, 0.1) for _ in range(3))
    cfg = LoewnerConfig()
    L0 = chain_value(f, g, h, p, cfg, ZS, 0.0)
    np.testing.assert_allclose(L0, f_beta_point(IntegralOperatorInput(f, g, p.beta), ZS), atol=1e-10)
    E, _ = theorem2_parts(f, g, h, p)
    np.testing.assert_allclose(g_function(f, g, h, p, cfg, ZS, 0.0), E(ZS), atol=1e-14)


def test_h_at_origin_formula():
    p = CriterionParams(alpha=0.2 - 0.1j, beta=1.4 + 0.2j, c=0.1j, m=2.0)
    cfg = LoewnerConfig()
    a, b = cfg.rates(p)
    half = (p.m + 1) / 2
    f = near_identity(np.random.default_rng(3), 0.1)
    for t in (0.0, 0.3, 2.0):
        s = np.exp(-(a + b) * t)
        want = s * ((1 + p.c) / (1 - p.alpha) - half) + (1 - s) * (p.beta - half)
        got = h_function(f, f, f, p, cfg, np.array([0j]), t)[0]
        assert abs(got - want) < 1e-13
        assert abs(got) < half


def test_identity_g_and_h_vanish():
    for t in (0.0, 1.0):
        np.testing.assert_allclose(g_function(Z, Z, Z, P0, LoewnerConfig(), ZS, t), 0, atol=1e-15)
        np.testing.assert_allclose(h_function(Z, Z, Z, P0, LoewnerConfig(), ZS, t), 0, atol=1e-15)


@pytest.mark.parametrize("variant", ["T2", "T4"])
def test_finite_difference_against_exact_time_derivative(variant):
    rng = np.random.default_rng(4)
    p = random_t2_params(rng) if variant == "T2" else random_t4_params(rng)
    f, g, h = (near_identity(rng, 0.1) for _ in range(3))
    chain = LoewnerChain(f, g, h, p, LoewnerConfig(), variant)
    z = random_disk(rng, 10, 0.9)
    for t in (0.0, 0.1, 1.0, 5.0):
        exact = chain.dt_exact(z, t)
        np.testing.assert_allclose(chain.dt_fd(z, t), exact, rtol=1e-8, atol=1e-10)
        p1, _ = chain.p(z, t)
        p2, _ = chain.p(z, t, dt=chain.cfg.dt / 2)
        assert np.max(np.abs(p1 - p2)) < 1e-6


@pytest.mark.parametrize("variant", ["T2", "T4"])
def test_two_w_formulations_agree(variant):
    rng = np.random.default_rng(5)
    p = random_t2_params(rng) if variant == "T2" else random_t4_params(rng)
    f, g, h = (near_identity(rng, 0.1) for _ in range(3))
    chain = LoewnerChain(f, g, h, p, LoewnerConfig(), variant)
    z = random_disk(rng, 30, 0.9)
    half = (p.m + 1) / 2
    for t in LoewnerConfig().t_samples:
        _, w = chain.p(z, t)
        np.testing.assert_allclose(w, chain.w_from_G(z, t), atol=1e-6)
        assert np.array_equal(np.abs(w) < 1, np.abs(chain.H(z, t)) < half)


def test_validate_identity_and_small_perturbation():
    for f in (Z, Series.from_coeffs([0, 1, 0.1], 64)):
        rep = validate_chain(f, f, f, P0)
        assert rep.passed, rep.to_dict()
        assert rep.check("t0_anchor").worst <= 1e-6


def test_validate_koebe_fails_h_bound():
    k = builtin("koebe", radius=0.9)
    rep = validate_chain(k, k, k, P0)
    assert not rep.passed
    assert not rep.check("h_bound").passed


def test_config_invariants():
    with pytest.raises(ValueError):
        LoewnerConfig(dt=1e-2)
    with pytest.raises(ValueError):
        LoewnerConfig(t_samples=(0.1, 0.5))
    with pytest.raises(ValueError):
        LoewnerConfig(t_samples=(0, 1, 0.5))
    with pytest.raises(ValueError):
        LoewnerConfig(a=0)
    assert LoewnerConfig(grid=GridConfig(max_radius=0.8)).grid.max_radius == 0.8
