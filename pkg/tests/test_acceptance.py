"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

The lines are echoed in the terminal summary of ``pytest`` (section
"acceptance criteria") and printed immediately when run with ``-s``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
import pytest

from univalence.criteria import (
    CriterionParams,
    GridConfig,
    eval_corollary,
    eval_theorem2,
    eval_theorem3,
    eval_theorem4,
    grid_points,
)
from univalence.integral import IntegralOperatorInput, f_beta_point, f_beta_series
from univalence.loewner import LoewnerChain, LoewnerConfig, validate_chain
from univalence.operators import ruscheweyh, salagean
from univalence.oracle import pairwise_injectivity, probe_winding
from univalence.series import Series, builtin, differentiate, identity, z_differentiate

from helpers import near_identity, random_disk, random_polynomial, random_t2_params, random_t4_params

GRID = GridConfig()
P0 = CriterionParams()


def record(log, k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})"
    log.append(line)
    print(line)
    assert ok, line


def _poly(rng, max_degree=32, bound=2.0):
    return random_polynomial(rng, int(rng.integers(2, max_degree + 1)), bound)


# -- shared fixtures -----------------------------------------------------------

@lru_cache(maxsize=None)
def becker_runs():
    runs = {a: eval_corollary("C1", Series.from_coeffs([0, 1, a], 64), identity(), params=P0, grid=GRID)
            for a in np.linspace(0, 0.15, 7)}
    return runs


@lru_cache(maxsize=None)
def koebe_run():
    k = builtin("koebe", radius=GRID.max_radius)
    return k, eval_corollary("C1", k, identity(), params=P0, grid=GRID)


@lru_cache(maxsize=None)
def theorem_fixtures(count=50, margin=0.01):
    """Random inputs on which T3 holds with the given margin."""
    rng = np.random.default_rng(20241016)
    found, tries = [], 0
    while len(found) < count and tries < 5000:
        tries += 1
        p = random_t2_params(rng)
        f, g, h = (near_identity(rng, 0.1) for _ in range(3))
        r3 = eval_theorem3(f, g, h, p, GRID)
        if r3.satisfied and r3.margin > margin:
            found.append((f, g, h, p, r3))
    return tuple(found), tries


@lru_cache(maxsize=None)
def t4_fixtures(count=5):
    rng = np.random.default_rng(77)
    found = []
    while len(found) < count:
        p = random_t4_params(rng)
        f, g, h = (near_identity(rng, 0.05) for _ in range(3))
        rep = eval_theorem4(f, g, h, p, GRID)
        if rep.satisfied and rep.margin >= 0.05:
            found.append((f, g, h, p, rep))
    return tuple(found)


# -- criteria ------------------------------------------------------------------

def test_criterion_1_operator_identities(acceptance_log):
    rng = np.random.default_rng(1)
    worst_abs = worst_rel = scale = 0.0
    sal_exact = True
    for _ in range(100):
        f = _poly(rng)
        for n in range(9):
            lhs = z_differentiate(ruscheweyh(f, n)).coeffs
            rhs = ((n + 1) * ruscheweyh(f, n + 1) - n * ruscheweyh(f, n)).coeffs
            err = float(np.max(np.abs(lhs - rhs)))
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / max(1.0, float(np.max(np.abs(rhs)))))
            scale = max(scale, float(np.max(np.abs(rhs))))
            sal_exact &= np.array_equal(salagean(f, n + 1).coeffs, z_differentiate(salagean(f, n)).coeffs)
    # dyadic coefficients make every product exact, so the absolute bound applies verbatim
    dyadic_abs = 0.0
    for _ in range(100):
        deg = int(rng.integers(2, 33))
        c = np.round(rng.uniform(-2, 2, (deg + 1, 2)) * 2**16) / 2**16
        c = c[:, 0] + 1j * c[:, 1]
        c[0], c[1] = 0, 1
        f = Series.from_coeffs(c)
        for n in range(9):
            lhs = z_differentiate(ruscheweyh(f, n)).coeffs
            rhs = ((n + 1) * ruscheweyh(f, n + 1) - n * ruscheweyh(f, n)).coeffs
            dyadic_abs = max(dyadic_abs, float(np.max(np.abs(lhs - rhs))))
    ok = worst_rel <= 1e-10 and dyadic_abs <= 1e-10 and sal_exact
    record(acceptance_log, 1, ok,
           f"relative error {worst_rel:.2e}, absolute {worst_abs:.2e} on coefficients up to {scale:.1e}, "
           f"dyadic absolute {dyadic_abs:.1e}, salagean iteration exact={sal_exact}")


def test_criterion_2_low_order_anchors(acceptance_log):
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        f = _poly(rng)
        d1, d2 = differentiate(f).coeffs, differentiate(differentiate(f)).coeffs
        r2 = np.zeros(f.order + 1, complex)
        r2[1:] = d1
        r2[2:] += 0.5 * d2
        worst = max(worst,
                    float(np.max(np.abs(ruscheweyh(f, 0).coeffs - f.coeffs))),
                    float(np.max(np.abs(ruscheweyh(f, 1).coeffs - z_differentiate(f).coeffs))),
                    float(np.max(np.abs(ruscheweyh(f, 2).coeffs - r2))))
    record(acceptance_log, 2, worst <= 1e-12, f"max anchor error {worst:.2e}")


def test_criterion_3_integral_cross_validation(acceptance_log):
    rng = np.random.default_rng(3)
    worst = {1: 0.0, 2: 0.0, 1.5 + 0.3j: 0.0}
    f1_err = 0.0
    for _ in range(10):
        f, g = near_identity(rng, 0.3), near_identity(rng, 0.3)
        z = random_disk(rng, 50, 0.7)
        for beta in worst:
            inp = IntegralOperatorInput(f, g, beta)
            F = f_beta_series(inp)
            worst[beta] = max(worst[beta], float(np.max(np.abs(F(z) - f_beta_point(inp, z)))))
            if beta == 1:
                f1_err = max(f1_err, float(np.max(np.abs(F.coeffs - f.coeffs))), float(np.max(np.abs(F(z) - f(z)))))
    ok = max(worst.values()) <= 1e-8 and f1_err <= 1e-12
    detail = ", ".join(f"beta={b}: {e:.1e}" for b, e in worst.items())
    record(acceptance_log, 3, ok, f"series vs quadrature {detail}; F_1 - f {f1_err:.1e}")


def test_criterion_4_classical_cases(acceptance_log):
    runs = becker_runs()
    becker_ok = all(r.satisfied and r.margin > 0 for r in runs.values())
    _, kr = koebe_run()
    sup = kr.inequality("blend").sup_estimate
    ok = becker_ok and not kr.satisfied and sup >= 5.5
    min_margin = min(r.margin for r in runs.values())
    record(acceptance_log, 4, ok,
           f"Becker a in [0, 0.15]: min margin {min_margin:.4f}; Koebe sup {sup:.6f} at max_radius 0.999")


def test_criterion_5_implication(acceptance_log):
    fixtures, tries = theorem_fixtures()
    bad = [i for i, (f, g, h, p, _) in enumerate(fixtures) if not eval_theorem2(f, g, h, p, GRID).satisfied]
    ok = len(fixtures) == 50 and not bad
    record(acceptance_log, 5, ok, f"{len(fixtures)} fixtures from {tries} draws, {len(bad)} counterexamples")


def test_criterion_6_loewner_validation(acceptance_log):
    fixtures, _ = theorem_fixtures()
    cfg = LoewnerConfig()
    used, fails, worst_anchor, worst_rep = 0, [], 0.0, np.inf
    for f, g, h, p, _ in fixtures:
        if not eval_theorem2(f, g, h, p, GRID).satisfied:
            continue
        rep = validate_chain(f, g, h, p, cfg)
        for name in ("re_p_positive", "h_origin", "a1_increasing", "t0_anchor", "w_consistency"):
            if not rep.check(name).passed:
                fails.append((used, name))
        worst_anchor = max(worst_anchor, rep.check("t0_anchor").worst)
        worst_rep = min(worst_rep, rep.check("re_p_positive").worst)
        used += 1
        if used == 10:
            break
    closed = []
    for b in (0.5, 1.0, 2.0):
        chain_cfg = LoewnerConfig(b=b)
        ch = LoewnerChain(identity(), identity(), identity(), P0, chain_cfg)
        zs = grid_points(chain_cfg.grid)
        closed.append(max(float(np.max(np.abs(ch.p(zs, t)[0] - 1 / b))) for t in chain_cfg.t_samples))
    ok = used == 10 and not fails and max(closed) <= 1e-6
    record(acceptance_log, 6, ok,
           f"{used} fixtures, failed checks {fails}, min Re p {worst_rep:.3f}, anchor {worst_anchor:.1e}, "
           f"identity chain |p - 1/b| {max(closed):.1e}")


def _fbeta(f, g, beta, order=256):
    pad = lambda s: Series.from_coeffs(s.coeffs, order)
    return f_beta_series(IntegralOperatorInput(pad(f), pad(g), beta))


def _oracle_targets():
    fixtures, _ = theorem_fixtures()
    out = []
    for f, g, h, p, r3 in fixtures:
        r2 = eval_theorem2(f, g, h, p, GRID)
        if r2.satisfied and r2.margin >= 0.05:
            out.append((f"T2 margin {r2.margin:.2f}", _fbeta(f, g, p.beta)))
        if len(out) == 3:
            break
    for f, g, h, p, rep in t4_fixtures()[:2]:
        out.append((f"T4 margin {rep.margin:.2f}", _fbeta(f, g, p.beta)))
    for a, rep in list(becker_runs().items())[1::3]:
        f = Series.from_coeffs([0, 1, a], 64)
        assert rep.margin >= 0.05
        out.append((f"C1 margin {rep.margin:.2f}", f))
    r3 = eval_corollary("R3", Series.from_coeffs([0, 1, 0.25], 64), grid=GRID)
    assert r3.margin >= 0.05
    out.append((f"R3 margin {r3.margin:.2f}", Series.from_coeffs([0, 1, 0.25], 64)))
    return out


def test_criterion_7_oracle_consistency(acceptance_log):
    targets = _oracle_targets()
    bad = []
    for i, (label, F) in enumerate(targets):
        inj = pairwise_injectivity(F, 0.95, 10_000, seed=100 + i)
        wind = probe_winding(F, 0.95, 100, seed=200 + i)
        if not inj.injective or not wind.all_simple:
            bad.append(label)
    record(acceptance_log, 7, not bad and len(targets) >= 8,
           f"{len(targets)} passing fixtures, 10^4 pairs and 100 winding probes each, inconsistent: {bad}")


def test_criterion_8_grid_convergence(acceptance_log):
    fine = GRID.doubled()
    diffs = []

    def compare(rep, rerun):
        for a, b in zip(rep.inequalities, rerun.inequalities):
            assert np.isfinite(a.sup_estimate) and np.isfinite(b.sup_estimate)
            diffs.append(abs(a.sup_estimate - b.sup_estimate))

    for a, rep in becker_runs().items():
        compare(rep, eval_corollary("C1", Series.from_coeffs([0, 1, a], 64), identity(), params=P0, grid=fine))
    k, kr = koebe_run()
    compare(kr, eval_corollary("C1", k, identity(), params=P0, grid=fine))
    fixtures, _ = theorem_fixtures()
    for f, g, h, p, r3 in fixtures[:10]:
        compare(r3, eval_theorem3(f, g, h, p, fine))
        compare(eval_theorem2(f, g, h, p, GRID), eval_theorem2(f, g, h, p, fine))
    for f, g, h, p, rep in t4_fixtures():
        compare(rep, eval_theorem4(f, g, h, p, fine))
    f = Series.from_coeffs([0, 1, 0.05 + 0.02j, -0.01j], 64)
    z = identity()
    presets = {"C2": P0, "C3": P0, "C4": P0, "C5": CriterionParams(alpha=-1), "C6": P0, "C7": P0,
               "C8": P0, "C9": P0, "C10": P0, "R3": P0, "R4": P0, "R6": P0}
    for cid, p in presets.items():
        compare(eval_corollary(cid, f, z, f, p, GRID), eval_corollary(cid, f, z, f, p, fine))
    worst = max(diffs)
    record(acceptance_log, 8, worst <= 1e-6, f"{len(diffs)} sup estimates, max change on doubling {worst:.1e}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
