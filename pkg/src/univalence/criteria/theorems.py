"""Criteria T2-T6, built on Ruscheweyh or Salagean derivatives.

T5 and T6 are T2 and T4 with ``operator_kind="salagean"``.
"""
from __future__ import annotations

import numpy as np

from ..operators import apply_operator
from ..series import Series, differentiate, jet, shift_down
from .params import CriterionParams, GridConfig, check_param_constraints
from .report import CriterionReport, Inequality, run_inequalities
from .sup import guard


def _blend(z, m, near, far):
    w = np.abs(z) ** (m + 1)
    return w * near + (1 - w) * far


def log_derivative_g(g: Series):
    """Pointwise ``z g'(z) / g(z)`` with the removable point at 0 resolved."""
    psi = shift_down(g)

    def zg_over_g(z):
        gp = jet(g, z, 1)[1]
        return gp / guard(jet(psi, z, 0)[0], z, "g(z)/z")

    return zg_over_g


def theorem2_parts(f: Series, g: Series, h: Series, params: CriterionParams):
    """Pointwise maps ``E(z) = (1+c) f'/(D - alpha) - 1`` and the bracket ``B(z)``.

    ``D`` is ``[R^n h]'`` (or ``[S^n h]'``) and
    ``B = (beta-1) z g'/g + z D'/(D - alpha)``.
    """
    f.require_normalized("f")
    g.require_normalized("g")
    h.require_normalized("h")
    p = params
    dT = differentiate(apply_operator(h, p.order, p.operator_kind))
    fp = differentiate(f)
    zgg = log_derivative_g(g)

    def E(z):
        d = guard(jet(dT, z, 0)[0] - p.alpha, z, "[T h]' - alpha")
        return (1 + p.c) * jet(fp, z, 0)[0] / d - 1

    def B(z):
        dz = jet(dT, z, 1)
        d = guard(dz[0] - p.alpha, z, "[T h]' - alpha")
        return (p.beta - 1) * zgg(z) + z * dz[1] / d

    return E, B


def _t2_inequalities(f, g, h, params, simple: bool):
    E, B = theorem2_parts(f, g, h, params)
    m = params.m
    k, half = (m - 1) / 2, (m + 1) / 2
    ineqs = [Inequality("first", lambda z: E(z) - k, half, strict=True)]
    if simple:
        ineqs.append(Inequality("second_simple", lambda z: B(z) - k, half, strict=False))
    else:
        ineqs.append(Inequality("second", lambda z: _blend(z, m, E(z), B(z)) - k, half, strict=False))
    return ineqs


def _name(base, params):
    return base if params.operator_kind == "ruscheweyh" else {"T2": "T5", "T4": "T6"}.get(base, base + "S")


def eval_theorem2(f, g, h, params: CriterionParams, grid: GridConfig = GridConfig()) -> CriterionReport:
    """T2 (Ruscheweyh) or T5 (Salagean) on ``F_beta`` built from ``f, g``."""
    cons = check_param_constraints(params, "T2")
    return run_inequalities(_name("T2", params), _t2_inequalities(f, g, h, params, False), cons, grid)


def eval_theorem3(f, g, h, params: CriterionParams, grid: GridConfig = GridConfig()) -> CriterionReport:
    """T3: the second inequality of T2 without the ``|z|`` blend."""
    cons = check_param_constraints(params, "T2")
    return run_inequalities(_name("T3", params), _t2_inequalities(f, g, h, params, True), cons, grid)


def _ratio_terms(f, h, params):
    """Pointwise ``Q/P``, ``zP'/P`` and ``zQ'/Q`` with ``P = T^n f - alpha``, ``Q = T^v h - alpha``.

    For ``alpha = 0`` both vanish at the origin; the quotients are formed from
    ``P/z`` and ``Q/z`` so the removable singularity is handled exactly.
    """
    p = params
    Tf = apply_operator(f, p.n, p.operator_kind)
    Th = apply_operator(h, p.v, p.operator_kind)
    dTf, dTh = differentiate(Tf), differentiate(Th)
    if p.alpha == 0:
        Pz, Qz = shift_down(Tf), shift_down(Th)

        def terms(z):
            P = guard(jet(Pz, z, 0)[0], z, "T^n f / z")
            Q = guard(jet(Qz, z, 0)[0], z, "T^v h / z")
            return Q / P, jet(dTf, z, 0)[0] / P, jet(dTh, z, 0)[0] / Q

    else:

        def terms(z):
            P = guard(jet(Tf, z, 0)[0] - p.alpha, z, "T^n f - alpha")
            Q = guard(jet(Th, z, 0)[0] - p.alpha, z, "T^v h - alpha")
            return Q / P, z * jet(dTf, z, 0)[0] / P, z * jet(dTh, z, 0)[0] / Q

    return terms


def theorem4_parts(f: Series, g: Series, h: Series, params: CriterionParams):
    f.require_normalized("f")
    g.require_normalized("g")
    h.require_normalized("h")
    fp = differentiate(f)
    zgg = log_derivative_g(g)
    terms = _ratio_terms(f, h, params)
    p = params

    def E(z):
        ratio, _, _ = terms(z)
        return (1 + p.c) * jet(fp, z, 0)[0] * ratio - 1

    def B(z):
        _, lp, lq = terms(z)
        return (p.beta - 1) * zgg(z) + lp - lq

    return E, B


def eval_theorem4(f, g, h, params: CriterionParams, grid: GridConfig = GridConfig()) -> CriterionReport:
    """T4 (Ruscheweyh) or T6 (Salagean)."""
    cons = check_param_constraints(params, "T4")
    E, B = theorem4_parts(f, g, h, params)
    m = params.m
    k, half = (m - 1) / 2, (m + 1) / 2
    ineqs = [
        Inequality("first", lambda z: E(z) - k, half, strict=True),
        Inequality("second", lambda z: _blend(z, m, E(z), B(z)) - k, half, strict=False),
    ]
    return run_inequalities(_name("T4", params), ineqs, cons, grid)


def eval_theorem5(f, g, h, params, grid: GridConfig = GridConfig()) -> CriterionReport:
    return eval_theorem2(f, g, h, params.with_(operator_kind="salagean"), grid)


def eval_theorem6(f, g, h, params, grid: GridConfig = GridConfig()) -> CriterionReport:
    return eval_theorem4(f, g, h, params.with_(operator_kind="salagean"), grid)
