"""Empirical injectivity checks, independent of any criterion.

``pairwise_injectivity`` samples pairs in a disk and, from the second point
of each pair, runs Newton's method on ``f(u) = f(z1)`` so that genuine second
preimages are found rather than hoped for. ``winding_count`` counts the zeros
of ``f - w`` inside a circle by the argument principle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import OnBoundaryValue

EPS_IMG = 1e-9
EPS_DOM = 1e-3
_NEWTON_STEPS = 40
_FD_STEP = 1e-6
_MAX_WINDING_POINTS = 1 << 20


@dataclass
class InjectivityReport:
    tested_pairs: int
    collisions: list = field(default_factory=list)  # (z1, z2, |f(z1) - f(z2)|)
    min_separation_ratio: float = float("inf")

    @property
    def injective(self) -> bool:
        return not self.collisions

    def to_dict(self) -> dict:
        return {
            "tested_pairs": self.tested_pairs,
            "collisions": [[[a.real, a.imag], [b.real, b.imag], d] for a, b, d in self.collisions],
            "min_separation_ratio": self.min_separation_ratio,
        }


def sample_disk(rng: np.random.Generator, radius: float, n: int) -> np.ndarray:
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def _derivative(fn, z):
    return (fn(z + _FD_STEP) - fn(z - _FD_STEP)) / (2 * _FD_STEP)


def pairwise_injectivity(
    fn: Callable,
    radius: float,
    n_pairs: int,
    seed: int,
    derivative: Callable | None = None,
    eps_img: float = EPS_IMG,
    eps_dom: float = EPS_DOM,
) -> InjectivityReport:
    """Look for ``z1 != z2`` in ``|z| <= radius`` with ``f(z1) = f(z2)``.

    ``fn`` must accept numpy arrays. ``derivative`` defaults to a central
    difference of ``fn``; it only steers Newton, collisions are always
    confirmed on ``fn`` itself.
    """
    if not radius < 1:
        raise ValueError("radius must be < 1")
    rng = np.random.default_rng(seed)
    z1 = sample_disk(rng, radius, n_pairs)
    z2 = sample_disk(rng, radius, n_pairs)
    w1, w2 = fn(z1), fn(z2)
    sep = np.abs(z1 - z2)
    ok = sep > 0
    ratio = float(np.min(np.abs(w1 - w2)[ok] / sep[ok])) if np.any(ok) else float("inf")

    dfn = derivative or (lambda z: _derivative(fn, z))
    u = z2.copy()
    with np.errstate(all="ignore"):
        for _ in range(_NEWTON_STEPS):
            live = np.abs(u) < 1
            if not np.any(live):
                break
            step = np.zeros_like(u)
            step[live] = (fn(u[live]) - w1[live]) / dfn(u[live])
            step[~np.isfinite(step)] = 0
            u = u - step
            u[np.abs(u) >= 1] = np.nan
    cand = np.isfinite(u) & (np.abs(u) <= radius)
    collisions = []
    if np.any(cand):
        idx = np.flatnonzero(cand)
        gap = np.abs(fn(u[idx]) - w1[idx])
        dist = np.abs(u[idx] - z1[idx])
        for i, gi, di in zip(idx, gap, dist):
            if gi < eps_img and di > eps_dom:
                collisions.append((complex(z1[i]), complex(u[i]), float(gi)))
    # raw pairs can collide directly as well
    direct = (np.abs(w1 - w2) < eps_img) & (sep > eps_dom)
    for i in np.flatnonzero(direct):
        collisions.append((complex(z1[i]), complex(z2[i]), float(abs(w1[i] - w2[i]))))
    return InjectivityReport(int(n_pairs), collisions, ratio)


def winding_count(fn: Callable, w: complex, radius: float, n_points: int = 256,
                  eps_img: float = EPS_IMG) -> int:
    """Number of solutions of ``f(z) = w`` in ``|z| < radius``.

    The circle is resampled with doubled density until every step of the
    argument is below ``pi/2``.
    """
    n = int(n_points)
    while True:
        theta = np.linspace(0.0, 2 * np.pi, n + 1)
        d = fn(radius * np.exp(1j * theta)) - w
        if np.any(np.abs(d) <= eps_img):
            raise OnBoundaryValue(f"the circle |z| = {radius} passes within {eps_img} of w")
        steps = np.angle(d[1:] / d[:-1])
        if np.max(np.abs(steps)) < np.pi / 2:
            return int(round(float(np.sum(steps)) / (2 * np.pi)))
        if n >= _MAX_WINDING_POINTS:
            raise OnBoundaryValue("argument steps did not resolve; w is too close to the image of the circle")
        n *= 2


@dataclass
class WindingReport:
    probes: list  # (w, count)

    @property
    def all_simple(self) -> bool:
        return all(c == 1 for _, c in self.probes)

    def to_dict(self) -> dict:
        return {"all_simple": self.all_simple,
                "counts": [c for _, c in self.probes],
                "values": [[w.real, w.imag] for w, _ in self.probes]}


def probe_winding(fn: Callable, radius: float, n_probes: int, seed: int, n_points: int = 256) -> WindingReport:
    """Winding counts at ``w = f(radius/2 * e^{i theta})`` for random angles."""
    rng = np.random.default_rng(seed)
    theta = 2 * np.pi * rng.random(n_probes)
    ws = fn(0.5 * radius * np.exp(1j * theta))
    return WindingReport([(complex(w), winding_count(fn, w, radius, n_points)) for w in ws])


@dataclass
class OracleReport:
    injectivity: InjectivityReport
    winding: WindingReport

    @property
    def consistent_with_univalence(self) -> bool:
        return self.injectivity.injective and self.winding.all_simple

    def to_dict(self) -> dict:
        return {"consistent_with_univalence": self.consistent_with_univalence,
                "injectivity": self.injectivity.to_dict(), "winding": self.winding.to_dict()}


def run_oracle(fn: Callable, radius: float = 0.95, n_pairs: int = 10_000, n_probes: int = 100,
               seed: int = 0, derivative: Callable | None = None) -> OracleReport:
    return OracleReport(pairwise_injectivity(fn, radius, n_pairs, seed, derivative),
                        probe_winding(fn, radius, n_probes, seed + 1))
