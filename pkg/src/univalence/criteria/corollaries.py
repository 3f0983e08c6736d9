"""Preset criteria ``C1``..``C10``, ``R3``, ``R4``, ``R6``, each evaluating its inequalities verbatim.

Every preset freezes the parameters its statement fixes and reads the rest
from the supplied :class:`CriterionParams`. The effective parameters are
returned in ``report.extra["effective_params"]``.
"""
from __future__ import annotations

import numpy as np

from ..series import Series, jet, shift_down
from .params import CriterionParams, GridConfig, check_param_constraints
from .report import CriterionReport, Inequality, run_inequalities
from .sup import guard
from .theorems import log_derivative_g

COROLLARIES = ("C1", "C2", "C3", "C4", "C5", "C5_realcase", "C6", "C7", "C8", "C9", "C10", "R3", "R4", "R6")

# functions each preset reads; the others are fixed by the statement
ARITY = {
    "C1": "fg", "C2": "fgh", "C3": "fg", "C4": "fh", "C5": "f", "C5_realcase": "f",
    "C6": "fgh", "C7": "fgh", "C8": "fg", "C9": "fg", "C10": "fgh", "R3": "f", "R4": "f", "R6": "fg",
}


def _d(s: Series, z, k: int = 3):
    return jet(s, z, k)


def _blend(z, m, near, far):
    w = np.abs(z) ** (m + 1)
    return w * near + (1 - w) * far


def _c1(f, g, h, p, grid):
    zgg = log_derivative_g(g)

    def expr(z):
        d = _d(f, z, 2)
        fz = guard(d[1], z, "f'")
        w = np.abs(z) ** 2
        return p.c * w + (1 - w) * ((p.beta - 1) * zgg(z) + z * d[2] / fz)

    ineqs = [
        Inequality("c_bound", lambda z: np.full(np.shape(z), p.c, dtype=complex), 1.0, strict=True),
        Inequality("blend", expr, 1.0, strict=False),
    ]
    return p.with_(alpha=0, m=1.0, n=0), "C1", ineqs, []


def _c3(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    m, k, half = p.m, (p.m - 1) / 2, (p.m + 1) / 2
    lead = 2 * (1 + p.c) / (m + 1) - 1

    def first(z):
        d = _d(f, z, 2)
        fp = guard(d[1], z, "f'")
        t = (z * d[2] - p.alpha) / fp
        return np.abs(lead - t) - np.abs(1 - t)

    def second(z):
        d = _d(f, z, 3)
        den = guard(z * d[2] + d[1] - p.alpha, z, "zf'' + f' - alpha")
        near = (1 + p.c) * d[1] / den - 1
        far = (p.beta - 1) * zgg(z) + (z * z * d[3] + 2 * z * d[2]) / den
        return _blend(z, m, near, far) - k

    ineqs = [
        Inequality("first_as_printed", first, 0.0, strict=True, pointwise=True),
        Inequality("second", second, half, strict=False),
    ]
    notes = ["as-printed: the first inequality does not reduce from T2 in an obvious way"]
    return p.with_(n=1), "T2", ineqs, notes


def _c4(f, g, h, p, grid):
    psi = shift_down(f)

    def expr(z):
        df, dh = _d(f, z, 1), _d(h, z, 2)
        q = guard(jet(psi, z, 0)[0], z, "f(z)/z")
        hp = guard(dh[1], z, "h'")
        return (1 - np.abs(z) ** 2) * (df[1] / q + z * dh[2] / hp)

    notes = ["derived from T2 with beta=2, m=1, which sits on the boundary |beta-(m+1)/2| = (m+1)/2"]
    eff = p.with_(alpha=0, beta=2, c=0, m=1.0, n=0)
    return eff, "none", [Inequality("main", expr, 1.0, strict=False)], notes


def _c5(f, g, h, p, grid):
    a, c, m = p.alpha.real, p.c.real, p.m
    k, half = (m - 1) / 2, (m + 1) / 2
    coef = (m - c) / (a * (m + 1)) if a != 0 else np.inf
    psi = shift_down(f)

    def re_bound(z):
        fp = _d(f, z, 1)[1]
        return coef * np.abs(fp) ** 2 - fp.real

    def second(z):
        d = _d(f, z, 2)
        q = guard(jet(psi, z, 0)[0], z, "f(z)/z")
        den = guard(d[1] - p.alpha, z, "f' - alpha")
        return (p.beta - 1) * d[1] / q + z * d[2] / den - k

    ineqs = [
        Inequality("real_part", re_bound, 0.0, strict=True, pointwise=True),
        Inequality("second", second, half, strict=False),
    ]
    return p.with_(n=0), "C5", ineqs, []


def _c6(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    m, k, half = p.m, (p.m - 1) / 2, (p.m + 1) / 2

    def first(z):
        dh = _d(h, z, 2)
        return (1 + p.c) * (2 * dh[1] + z * dh[2]) - m - 1

    def second(z):
        df, dh = _d(f, z, 2), _d(h, z, 3)
        fp = guard(df[1], z, "f'")
        den = guard(2 * dh[1] + z * dh[2], z, "2h' + zh''")
        near = (1 + p.c) * (dh[1] + z * dh[2] / 2) - 1
        far = (p.beta - 1) * zgg(z) + z * df[2] / fp - (3 * z * dh[2] + z * z * dh[3]) / den
        return _blend(z, m, near, far) - k

    ineqs = [Inequality("first", first, m + 1, strict=True), Inequality("second", second, half, strict=False)]
    return p.with_(alpha=0, n=1, v=2, operator_kind="ruscheweyh"), "T4", ineqs, []


def _c7(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    zhh = log_derivative_g(h)
    psi_h = shift_down(h)
    m, k, half = p.m, (p.m - 1) / 2, (p.m + 1) / 2

    def near(z):
        df = _d(f, z, 2)
        den = guard(2 * df[1] + z * df[2], z, "2f' + zf''")
        return 2 * (1 + p.c) * df[1] * jet(psi_h, z, 0)[0] / den - 1

    def second(z):
        df = _d(f, z, 3)
        den = guard(2 * df[1] + z * df[2], z, "2f' + zf''")
        far = 1 + (p.beta - 1) * zgg(z) + (3 * z * df[2] + z * z * df[3]) / den - zhh(z)
        return _blend(z, m, near(z), far) - k

    ineqs = [
        Inequality("first", lambda z: near(z) - k, half, strict=True),
        Inequality("second", second, half, strict=False),
    ]
    return p.with_(alpha=0, n=2, v=0, operator_kind="ruscheweyh"), "T4", ineqs, []


def _c8(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    m, k, half = p.m, (p.m - 1) / 2, (p.m + 1) / 2

    def second(z):
        near = (1 + p.c) * _d(f, z, 1)[1] - 1
        return _blend(z, m, near, (p.beta - 1) * zgg(z)) - k

    ineqs = [
        Inequality("first", lambda z: (1 + p.c) * _d(f, z, 1)[1] - half, half, strict=True),
        Inequality("second", second, half, strict=False),
    ]
    return p, "T4", ineqs, ["alpha -> infinity limit of T4"]


def _c9(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    k, half = (p.m - 1) / 2, (p.m + 1) / 2
    ineqs = [
        Inequality("first", lambda z: (1 + p.c) * _d(f, z, 1)[1] - half, half, strict=True),
        Inequality("second_simple", lambda z: (p.beta - 1) * zgg(z) - k, half, strict=False),
    ]
    return p, "T4", ineqs, []


def _c10(f, g, h, p, grid):
    zgg = log_derivative_g(g)
    m, k, half = p.m, (p.m - 1) / 2, (p.m + 1) / 2

    def first(z):
        dh = _d(h, z, 2)
        return (1 + p.c) * (dh[1] + z * dh[2])

    def second(z):
        df, dh = _d(f, z, 2), _d(h, z, 3)
        fp = guard(df[1], z, "f'")
        den = guard(dh[1] + z * dh[2], z, "h' + zh''")
        far = (p.beta - 1) * zgg(z) + z * df[2] / fp - (2 * z * dh[2] + z * z * dh[3]) / den
        return _blend(z, m, first(z) - 1, far) - k

    ineqs = [
        Inequality("first", lambda z: first(z) - half, half, strict=True),
        Inequality("second", second, half, strict=False),
    ]
    return p.with_(alpha=0, n=1, v=2, operator_kind="salagean"), "T4", ineqs, []


def _r3(f, g, h, p, grid):
    def expr(z):
        d = _d(f, z, 2)
        return z * d[2] / guard(d[1], z, "f'")

    eff = p.with_(alpha=0, beta=2, c=0, m=3.0, n=0)
    return eff, "none", [Inequality("main", expr, 2.0, strict=False)], []


def _r4(f, g, h, p, grid):
    ineqs = [Inequality("real_part", lambda z: -_d(f, z, 1)[1].real, 0.0, strict=True, pointwise=True)]
    return p, "none", ineqs, ["Alexander-Noshiro-Warshawski: Re f' > 0"]


_BUILDERS = {
    "C1": _c1, "C3": _c3, "C4": _c4, "C5": _c5, "C5_realcase": _c5, "C6": _c6, "C7": _c7,
    "C8": _c8, "C9": _c9, "C10": _c10, "R3": _r3, "R4": _r4,
}


def _equivalence_probe(f: Series, p: CriterionParams, grid: GridConfig) -> dict:
    """Compare, point by point, the real-part form with the modulus form it replaces."""
    from .sup import grid_points

    z = grid_points(grid)
    fp = _d(f, z, 1)[1]
    a, c, m = p.alpha.real, p.c.real, p.m
    real_form = fp.real > (m - c) / (a * (m + 1)) * np.abs(fp) ** 2
    mod_form = np.abs((1 + c) * fp / (fp - a) - 1 - (m - 1) / 2) < (m + 1) / 2
    agree = real_form == mod_form
    return {"points": int(z.size), "agreements": int(agree.sum()), "equivalent_on_grid": bool(agree.all())}


def eval_corollary(cid: str, f: Series, g: Series | None = None, h: Series | None = None,
                   params: CriterionParams = CriterionParams(), grid: GridConfig = GridConfig()) -> CriterionReport:
    """Evaluate a corollary/remark preset by id (``C1``..``C10``, ``R3``, ``R4``, ``R6``, ``C5_realcase``)."""
    if cid not in COROLLARIES:
        raise ValueError(f"unknown corollary {cid!r}; choose from {COROLLARIES}")
    need = ARITY[cid]
    for name, fn in (("g", g), ("h", h)):
        if name in need and fn is None:
            raise ValueError(f"{cid} requires {name}")
    f.require_normalized("f")
    for name, fn in (("g", g), ("h", h)):
        if name in need:
            fn.require_normalized(name)
    p = params

    if cid in ("C2", "R6"):
        from .theorems import eval_theorem2, eval_theorem4

        if cid == "C2":
            eff = p.with_(n=0, operator_kind="ruscheweyh")
            rep = eval_theorem2(f, g, h, eff, grid)
        else:
            eff = p.with_(alpha=0, beta=1, c=0, m=1.0, n=1, v=0, operator_kind="ruscheweyh")
            rep = eval_theorem4(f, g, f, eff, grid)
        rep.criterion = cid
    else:
        eff, family, ineqs, notes = _BUILDERS[cid](f, g, h, p, grid)
        cons = check_param_constraints(eff, family)
        rep = run_inequalities(cid, ineqs, cons, grid, notes)
        if cid == "C5_realcase":
            rep.extra["equivalence_probe"] = _equivalence_probe(f, eff, grid)
    rep.extra["effective_params"] = eff.to_dict()
    return rep
