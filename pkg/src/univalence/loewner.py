"""The Loewner chain behind the integral-operator criteria, and its checks.

With ``zeta = exp(-a t) z`` the chain is

    L(z, t) = zeta * Psi(zeta, t) ** (1/beta),
    Psi(zeta, t) = phi(zeta) + K(t) * psi(zeta)**(beta-1) * D(zeta),
    K(t) = beta (exp((a+b) t) - 1) / (1 + c),

where ``zeta**beta phi`` is the inner integral of ``F_beta``, ``psi = g/z``
and ``D`` is ``[T^n h]' - alpha`` (chain for T2) or
``(T^n f - alpha)/(T^v h - alpha)`` (chain for T4). The power is followed
continuously from ``Psi(0, 0) = 1``: first along ``t`` at the origin, then
along the ray to ``zeta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .criteria.params import CriterionParams, GridConfig
from .criteria.sup import SINGULAR_DELTA, grid_points
from .criteria.theorems import theorem2_parts, theorem4_parts
from .errors import BranchAmbiguity, DegenerateDenominator, SingularPoint, UnivalenceError
from .integral import IntegralOperatorInput, _unwrap_log, f_beta_point, inner_series
from .operators import apply_operator
from .series import Series, complex_power, differentiate, jet, shift_down

DEFAULT_T_SAMPLES = (0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class LoewnerConfig:
    a: float = 1.0
    b: float | None = None  # None: b = m * a
    t_samples: tuple = DEFAULT_T_SAMPLES
    dt: float = 1e-3
    grid: GridConfig = field(default_factory=lambda: GridConfig(n_radii=4, n_angles=16, max_radius=0.9))

    def __post_init__(self):
        if not self.a > 0 or (self.b is not None and not self.b > 0):
            raise ValueError("a and b must be positive")
        if not 0 < self.dt <= 1e-3:
            raise ValueError("dt must lie in (0, 1e-3]")
        ts = tuple(float(t) for t in self.t_samples)
        if not ts or ts[0] != 0 or any(u >= v for u, v in zip(ts, ts[1:])):
            raise ValueError("t_samples must be strictly increasing and start at 0")
        object.__setattr__(self, "t_samples", ts)

    def rates(self, params: CriterionParams):
        return self.a, (self.b if self.b is not None else params.m * self.a)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "t_samples": list(self.t_samples), "dt": self.dt,
                "grid": self.grid.to_dict()}


class LoewnerChain:
    """Precomputed series for one ``(f, g, h, params, cfg)`` chain.

    ``variant`` selects the chain for T2 (``"T2"``) or the ratio chain used
    for T4 (``"T4"``).
    """

    def __init__(self, f: Series, g: Series, h: Series, params: CriterionParams,
                 cfg: LoewnerConfig = LoewnerConfig(), variant: str = "T2"):
        if params.c == -1:
            raise ValueError("c = -1 is excluded")
        IntegralOperatorInput(f, g, params.beta)
        self.f, self.g, self.h = f, g, h
        self.params, self.cfg, self.variant = params, cfg, variant
        self.a, self.b = cfg.rates(params)
        beta = params.beta
        self.phi = inner_series(f, g, beta)
        self.gpow = complex_power(shift_down(g), beta - 1)
        p = params
        if variant == "T2":
            self._dT = differentiate(apply_operator(h, p.order, p.operator_kind))
            self.d0 = 1 - p.alpha
        elif variant == "T4":
            Tf = apply_operator(f, p.n, p.operator_kind)
            Th = apply_operator(h, p.v, p.operator_kind)
            if p.alpha == 0:
                Tf, Th = shift_down(Tf), shift_down(Th)
            self._Tf, self._Th = Tf, Th
            self.d0 = 1.0 + 0j
        else:
            raise ValueError("variant must be 'T2' or 'T4'")
        if variant == "T2":
            self._parts = theorem2_parts(f, g, h, params)
        else:
            self._parts = theorem4_parts(f, g, h, params)

    # -- building blocks ---------------------------------------------------
    def K(self, t):
        return self.params.beta * np.expm1((self.a + self.b) * t) / (1 + self.params.c)

    def dK(self, t):
        return self.params.beta * (self.a + self.b) * np.exp((self.a + self.b) * t) / (1 + self.params.c)

    def _D(self, zeta, nd=1):
        """``D`` and its derivative at ``zeta``."""
        if self.variant == "T2":
            j = jet(self._dT, zeta, nd)
            j[0] = j[0] - self.params.alpha
            return j
        alpha = self.params.alpha  # zero means the shifted P/z, Q/z series
        P, Q = jet(self._Tf, zeta, 1), jet(self._Th, zeta, 1)
        P[0] = P[0] - alpha
        Q[0] = Q[0] - alpha
        if np.any(np.abs(Q[0]) < SINGULAR_DELTA):
            raise SingularPoint("T^v h - alpha vanishes", list(np.ravel(zeta[np.abs(Q[0]) < SINGULAR_DELTA])))
        return np.stack([P[0] / Q[0], (P[1] * Q[0] - P[0] * Q[1]) / Q[0] ** 2])

    def psi_jet(self, zeta, t):
        """``Psi``, ``dPsi/dzeta`` and ``dPsi/dt|zeta`` at fixed ``t``."""
        ph = jet(self.phi, zeta, 1)
        gp = jet(self.gpow, zeta, 1)
        d = self._D(zeta)
        k = self.K(t)
        val = ph[0] + k * gp[0] * d[0]
        dz = ph[1] + k * (gp[1] * d[0] + gp[0] * d[1])
        return val, dz, self.dK(t) * gp[0] * d[0]

    def _origin_log(self, t, steps=64):
        s = np.linspace(0.0, t, steps + 1)
        vals = 1 + self.K(s) * self.d0
        return _unwrap_log(vals)[-1]

    def log_psi(self, z, t):
        """Branch-tracked ``log Psi(exp(-a t) z, t)`` for an array of ``z``."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        zeta = np.exp(-self.a * t) * z
        start = self._origin_log(t)
        for steps in (64, 512, 4096):
            rho = np.linspace(0.0, 1.0, steps + 1)
            vals = self.psi_jet(zeta[:, None] * rho[None, :], t)[0]
            try:
                return _unwrap_log(vals, axis=1, start=np.full(z.size, start))[:, -1]
            except BranchAmbiguity as exc:
                if np.any(np.abs(vals) < 1e-8):
                    raise
                last = exc
        raise last

    # -- chain quantities --------------------------------------------------
    def quotient(self, z, t):
        """``L(z, t) / z``, which stays away from zero at the origin."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        return np.exp(-self.a * t + self.log_psi(z, t) / self.params.beta)

    def value(self, z, t):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        return z * self.quotient(z, t)

    def _z_dz_quotient(self, z, t):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        zeta = np.exp(-self.a * t) * z
        val, dz, _ = self.psi_jet(zeta, t)
        return self.quotient(z, t) * (1 + zeta * dz / (self.params.beta * val))

    def z_dz(self, z, t):
        """``z dL/dz`` from the exact series derivative of ``Psi``."""
        return np.atleast_1d(np.asarray(z, dtype=np.complex128)) * self._z_dz_quotient(z, t)

    def _dt_quotient_exact(self, z, t):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        zeta = np.exp(-self.a * t) * z
        val, dz, dk = self.psi_jet(zeta, t)
        q = self.quotient(z, t)
        return q * (-self.a + (dk - self.a * zeta * dz) / (self.params.beta * val))

    def dt_exact(self, z, t):
        """Closed-form ``dL/dt``; used as an oracle for the finite differences."""
        return np.atleast_1d(np.asarray(z, dtype=np.complex128)) * self._dt_quotient_exact(z, t)

    def _dt_quotient_fd(self, z, t, dt=None):
        dt = self.cfg.dt if dt is None else dt

        def central(h):
            return (self.quotient(z, t + h) - self.quotient(z, t - h)) / (2 * h)

        return (4 * central(dt / 2) - central(dt)) / 3

    def dt_fd(self, z, t, dt=None):
        """Central difference in ``t``, Richardson-extrapolated once."""
        return np.atleast_1d(np.asarray(z, dtype=np.complex128)) * self._dt_quotient_fd(z, t, dt)

    def p(self, z, t, dt=None):
        """``p = (z dL/dz) / (dL/dt)`` and its Moebius image ``w = (p-1)/(p+1)``.

        Both derivatives are divided by ``z`` first so the origin is regular.
        """
        num = self._z_dz_quotient(z, t)
        den = self._dt_quotient_fd(z, t, dt)
        if np.any(np.abs(den) < SINGULAR_DELTA):
            raise DegenerateDenominator("dL/dt vanishes at a sample")
        pv = num / den
        return pv, (pv - 1) / (pv + 1)

    def G(self, z, t):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        zeta = np.exp(-self.a * t) * z
        E, B = self._parts
        s = np.exp(-(self.a + self.b) * t)
        return s * (E(zeta) + np.expm1((self.a + self.b) * t) * B(zeta))

    def H(self, z, t):
        return self.G(z, t) - (self.params.m - 1) / 2

    def w_from_G(self, z, t):
        Gv = self.G(z, t)
        a, b = self.a, self.b
        return ((1 + a) * Gv + 1 - b) / ((1 - a) * Gv + 1 + b)

    def a1(self, t):
        """Printed closed form of the linear coefficient, branch continuous from 1."""
        p = self.params
        a, b, beta = self.a, self.b, p.beta
        kap = self.d0 * beta / (1 + p.c)
        s = np.linspace(0.0, t, 257)
        inner = (1 - kap) * np.exp(-(a + b) * s) + kap
        lg = _unwrap_log(inner)[-1]
        return np.exp(((-a * beta + a + b) / beta) * t) * np.exp(lg / beta)


def chain_value(f, g, h, params, cfg, z, t, variant="T2"):
    return LoewnerChain(f, g, h, params, cfg, variant).value(z, t)


def a1(params, cfg, t, variant="T2"):
    """Closed form ``a_1(t)`` without building any series."""
    chain = object.__new__(LoewnerChain)
    chain.params, chain.cfg, chain.variant = params, cfg, variant
    chain.a, chain.b = cfg.rates(params)
    chain.d0 = (1 - params.alpha) if variant == "T2" else 1.0 + 0j
    return LoewnerChain.a1(chain, t)


def g_function(f, g, h, params, cfg, z, t, variant="T2"):
    return LoewnerChain(f, g, h, params, cfg, variant).G(z, t)


def h_function(f, g, h, params, cfg, z, t, variant="T2"):
    return LoewnerChain(f, g, h, params, cfg, variant).H(z, t)


def p_function(f, g, h, params, cfg, z, t, variant="T2"):
    return LoewnerChain(f, g, h, params, cfg, variant).p(z, t)


@dataclass
class ChainCheck:
    name: str
    passed: bool
    worst: float | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "worst": self.worst, "detail": self.detail}


@dataclass
class ChainReport:
    checks: list[ChainCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> ChainCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _guarded(name, fn):
    try:
        return fn()
    except UnivalenceError as exc:
        return ChainCheck(name, False, None, {"error": f"{type(exc).__name__}: {exc}"})


def validate_chain(f, g, h, params: CriterionParams, cfg: LoewnerConfig = LoewnerConfig(),
                   variant: str = "T2", anchor_tol: float = 1e-6) -> ChainReport:
    """Check the Loewner-chain conditions at every sampled ``(z, t)``.

    Checks: ``Re p > 0``; ``|H| < (m+1)/2`` (grid and origin);
    ``L(z, 0) = F_beta(z)`` against the quadrature route; ``|a_1(t)|``
    strictly increasing; and the two ``w`` formulations agreeing.
    """
    chain = LoewnerChain(f, g, h, params, cfg, variant)
    zs = grid_points(cfg.grid)
    ts = cfg.t_samples
    half = (params.m + 1) / 2

    def re_p():
        worst, where = np.inf, None
        wdiff = 0.0
        for t in ts:
            pv, w = chain.p(zs, t)
            k = int(np.argmin(pv.real))
            if pv.real[k] < worst:
                worst, where = float(pv.real[k]), (complex(zs[k]), t)
            wdiff = max(wdiff, float(np.max(np.abs(w - chain.w_from_G(zs, t)))))
        return ChainCheck("re_p_positive", worst > 0, worst,
                          {"argmin": [where[0].real, where[0].imag, where[1]], "w_formulation_diff": wdiff})

    def h_bound():
        worst, where = np.inf, None
        for t in ts:
            margin = half - np.abs(chain.H(zs, t))
            k = int(np.argmin(margin))
            if margin[k] < worst:
                worst, where = float(margin[k]), (complex(zs[k]), t)
        return ChainCheck("h_bound", worst > 0, worst, {"argmin": [where[0].real, where[0].imag, where[1]]})

    def h_origin():
        margins = [float(half - abs(chain.H(np.array([0j]), t)[0])) for t in ts]
        return ChainCheck("h_origin", min(margins) > 0, min(margins), {"margins": margins})

    def anchor():
        L0 = chain.value(zs, 0.0)
        F = f_beta_point(IntegralOperatorInput(f, g, params.beta), zs)
        diff = float(np.max(np.abs(L0 - F)))
        return ChainCheck("t0_anchor", diff <= anchor_tol, diff)

    def a1_growth():
        mods = [float(abs(chain.a1(t))) for t in ts]
        ok = all(u < v for u, v in zip(mods, mods[1:]))
        return ChainCheck("a1_increasing", ok, None, {"abs_a1": mods})

    def w_consistency():
        diff = 0.0
        for t in ts:
            _, w = chain.p(zs, t)
            diff = max(diff, float(np.max(np.abs(w - chain.w_from_G(zs, t)))))
        return ChainCheck("w_consistency", diff <= 1e-6, diff)

    checks = [_guarded(n, fn) for n, fn in (
        ("re_p_positive", re_p), ("h_bound", h_bound), ("h_origin", h_origin),
        ("t0_anchor", anchor), ("a1_increasing", a1_growth), ("w_consistency", w_consistency),
    )]
    return ChainReport(checks)
