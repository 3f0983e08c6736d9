"""Supremum estimates of pointwise expressions over the unit disk."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import SingularPoint
from .params import GridConfig

SINGULAR_DELTA = 1e-9

_ZOOM_POINTS = 9
_ZOOM_SHRINK = 4.0
_ZOOM_STOP = 1e-9
_CANDIDATES = 6


def guard(den, z, what: str = "denominator", delta: float = SINGULAR_DELTA):
    """Raise :class:`SingularPoint` listing every ``z`` where ``|den| < delta``."""
    bad = np.abs(den) < delta
    if np.any(bad):
        pts = np.broadcast_to(np.asarray(z), np.shape(bad))[bad]
        raise SingularPoint(f"{what} below {delta:g}", [complex(p) for p in np.ravel(pts)])
    return den


def polar_grid(grid: GridConfig):
    """Radii (uniform in r**2) and angles of the tensor grid, origin excluded."""
    i = np.arange(1, grid.n_radii + 1)
    radii = grid.max_radius * np.sqrt(i / grid.n_radii)
    angles = 2 * np.pi * np.arange(grid.n_angles) / grid.n_angles
    return radii, angles


def grid_points(grid: GridConfig) -> np.ndarray:
    """All sample points: the origin followed by the row-major polar lattice."""
    radii, angles = polar_grid(grid)
    lattice = radii[:, None] * np.exp(1j * angles[None, :])
    return np.concatenate([[0j], lattice.ravel()])


@dataclass
class SupResult:
    sup_estimate: float
    argmax_z: complex
    grid_z: np.ndarray
    grid_values: np.ndarray


def _score(expr, z, center):
    v = expr(z)
    v = np.asarray(v)
    if np.iscomplexobj(v):
        if center is not None:
            v = v - center
        return np.abs(v)
    if center is not None:
        raise ValueError("center only applies to complex-valued expressions")
    return v.astype(float)


def _zoom(score, r0, t0, dr, dt, rmax):
    best_v, best_r, best_t = -np.inf, r0, t0
    while dr > _ZOOM_STOP or dt > _ZOOM_STOP:
        rs = np.clip(np.linspace(r0 - dr, r0 + dr, _ZOOM_POINTS), 0.0, rmax)
        ts = np.linspace(t0 - dt, t0 + dt, _ZOOM_POINTS)
        z = rs[:, None] * np.exp(1j * ts[None, :])
        v = score(z)
        k = np.unravel_index(np.argmax(v), v.shape)
        r0, t0 = rs[k[0]], ts[k[1]]
        if v[k] > best_v:
            best_v, best_r, best_t = v[k], r0, t0
        dr /= _ZOOM_SHRINK
        dt /= _ZOOM_SHRINK
    return best_v, best_r * np.exp(1j * best_t)


def sup_disk(expr: Callable, grid: GridConfig, center: complex | None = None) -> SupResult:
    """Estimate ``sup |expr(z) - center|`` over ``|z| <= grid.max_radius``.

    Complex-valued expressions are scored by modulus; real-valued ones are
    maximized as they are (used for pointwise inequalities written as
    ``lhs - rhs``). The coarse grid maximum is refined by iterated 9x9 zooms
    around the best few grid points. ``expr`` must accept arrays and may raise
    :class:`SingularPoint`.
    """
    score = lambda z: _score(expr, z, center)
    radii, angles = polar_grid(grid)
    pts = grid_points(grid)
    vals = score(pts)
    if np.any(np.isnan(vals)):
        raise SingularPoint("expression is undefined at grid points", list(pts[np.isnan(vals)]))

    best = int(np.argmax(vals))
    sup, argmax = float(vals[best]), complex(pts[best])

    lattice = vals[1:].reshape(grid.n_radii, grid.n_angles)
    order = np.argsort(lattice, axis=None)[::-1][:_CANDIDATES]
    dtheta = 2 * np.pi / grid.n_angles
    cands = [(0.0, 0.0, radii[0], np.pi)] if best == 0 else []
    for flat in order:
        i, j = divmod(int(flat), grid.n_angles)
        lo = radii[i - 1] if i > 0 else 0.0
        hi = radii[i + 1] if i + 1 < grid.n_radii else radii[i]
        cands.append((radii[i], angles[j], max(radii[i] - lo, hi - radii[i]), dtheta))
    for r0, t0, dr, dt in cands:
        v, z = _zoom(score, r0, t0, dr, dt, grid.max_radius)
        if v > sup:
            sup, argmax = float(v), complex(z)
    return SupResult(sup, argmax, pts, vals)
