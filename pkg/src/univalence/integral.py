"""The integral operator ``F_beta(z) = (beta * int_0^z g(u)**(beta-1) f'(u) du)**(1/beta)``.

Two routes: :func:`f_beta_series` builds the power series (the canonical
path), :func:`f_beta_point` integrates numerically along the ray from 0 to
``z`` and serves as an independent validator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .errors import BranchAmbiguity, OutsideDisk, ZeroBeta
from .series import (
    Series,
    complex_power,
    differentiate,
    evaluate,
    multiply,
    shift_down,
    shift_up,
)

BRANCH_DELTA = 1e-8
QUAD_EPSABS = 1e-10


@dataclass(frozen=True)
class IntegralOperatorInput:
    f: Series
    g: Series
    beta: complex

    def __post_init__(self):
        self.f.require_normalized("f")
        self.g.require_normalized("g")
        if self.beta == 0:
            raise ZeroBeta("beta must be non-zero")


def inner_series(f: Series, g: Series, beta: complex) -> Series:
    """``phi`` with ``beta * int_0^z g**(beta-1) f' = z**beta * phi(z)``, ``phi(0) = 1``.

    Writing ``g = z * psi`` the integrand is ``u**(beta-1) * q(u)`` with
    ``q = psi**(beta-1) f'``, so ``phi_k = beta * q_k / (beta + k)``.
    """
    if beta == 0:
        raise ZeroBeta("beta must be non-zero")
    psi = shift_down(g)
    q = multiply(complex_power(psi, beta - 1), differentiate(f))
    k = np.arange(q.order + 1)
    if np.any(beta + k == 0):
        raise ZeroBeta(f"beta = {beta} hits a pole of the term-wise integral")
    phi = beta * q.coeffs / (beta + k)
    phi[0] = 1.0
    return Series(phi)


def f_beta_series(inp: IntegralOperatorInput) -> Series:
    phi = inner_series(inp.f, inp.g, inp.beta)
    return shift_up(complex_power(phi, 1 / inp.beta))


def _unwrap_log(values: np.ndarray, axis: int = -1, start=None) -> np.ndarray:
    """Continuous logarithm along ``axis``; ``start`` fixes the first branch."""
    mod = np.abs(values)
    if np.any(mod < BRANCH_DELTA):
        raise BranchAmbiguity("tracked quantity passes within 1e-8 of zero")
    arg = np.unwrap(np.angle(values), axis=axis)
    if start is not None:
        first = np.take(arg, [0], axis=axis)
        want = np.imag(np.asarray(start))
        arg = arg + 2 * np.pi * np.round((np.expand_dims(want, axis) - first) / (2 * np.pi))
    steps = np.abs(np.diff(arg, axis=axis))
    if steps.size and steps.max() > np.pi / 2:
        raise BranchAmbiguity("argument changes too fast to follow the branch")
    return np.log(mod) + 1j * arg


class _RayPower:
    """``psi(u)**e`` along rays from 0, with the branch continued from ``psi(0) = 1``.

    The unwrapped argument of ``psi`` is tabulated on ``n_track`` points of each
    ray; a query at fraction ``s`` picks the ``2 pi`` multiple closest to the
    interpolated table value.
    """

    def __init__(self, psi: Series, ends: np.ndarray, exponent: complex, n_track: int = 512):
        self.psi = psi
        self.ends = ends
        self.exponent = exponent
        self.n = n_track
        s = np.linspace(0.0, 1.0, n_track + 1)
        vals = evaluate(psi, ends[:, None] * s[None, :])
        self.table = np.imag(_unwrap_log(vals, axis=1))

    def __call__(self, s: float) -> np.ndarray:
        vals = evaluate(self.psi, s * self.ends)
        pos = s * self.n
        i = min(int(pos), self.n - 1)
        w = pos - i
        ref = (1 - w) * self.table[:, i] + w * self.table[:, i + 1]
        arg = np.angle(vals)
        arg = arg + 2 * np.pi * np.round((ref - arg) / (2 * np.pi))
        return np.exp(self.exponent * (np.log(np.abs(vals)) + 1j * arg))


def _phi_by_quadrature(f: Series, g: Series, beta: complex, pts: np.ndarray) -> np.ndarray:
    """``phi(z) = beta * int_0^1 s**(beta-1) psi(sz)**(beta-1) f'(sz) ds`` at each point.

    The substitution ``s = v**kappa`` with ``kappa * Re(beta) > 1`` removes the
    endpoint singularity of ``s**(beta-1)``.
    """
    if beta.real <= 0:
        raise ValueError("quadrature route needs Re(beta) > 0")
    kappa = math.floor(1 / beta.real) + 1
    psi = shift_down(g)
    fp = differentiate(f)
    pw = _RayPower(psi, pts, beta - 1)

    def integrand(v):
        if v == 0.0:
            return np.zeros(pts.size, dtype=np.complex128)
        s = v ** kappa
        return kappa * v ** (kappa * beta - 1) * pw(s) * evaluate(fp, s * pts)

    res, _err = quad_vec(integrand, 0.0, 1.0, epsabs=QUAD_EPSABS, epsrel=1e-13, limit=4000)
    return beta * res


def f_beta_point(inp: IntegralOperatorInput, z, n_track: int = 16):
    """``F_beta(z)`` by adaptive quadrature on the ray ``u = t z``.

    The ``1/beta`` root is continued from ``F_beta(z) ~ z`` near the origin by
    sampling the accumulated integral at ``n_track`` points of the ray.
    Accepts a scalar or an array of points.
    """
    za = np.asarray(z, dtype=np.complex128)
    flat = za.ravel()
    if flat.size and np.max(np.abs(flat)) >= 1:
        raise OutsideDisk("F_beta is evaluated only inside the unit disk")
    beta = complex(inp.beta)
    t = np.linspace(0.0, 1.0, n_track + 1)[1:]
    pts = (flat[:, None] * t[None, :]).ravel()
    phi = _phi_by_quadrature(inp.f, inp.g, beta, pts).reshape(flat.size, n_track)
    phi = np.concatenate([np.ones((flat.size, 1), dtype=np.complex128), phi], axis=1)
    logphi = _unwrap_log(phi, axis=1)[:, -1]
    out = flat * np.exp(logphi / beta)
    return out.reshape(za.shape) if za.ndim else out[0]
