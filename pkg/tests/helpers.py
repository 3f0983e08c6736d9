"""Random fixture generators shared by the test modules."""
from __future__ import annotations

import numpy as np

from univalence.criteria import CriterionParams
from univalence.series import Series


def random_disk(rng, n, radius):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def random_polynomial(rng, degree, bound, order=None, complex_coeffs=True):
    """Normalized polynomial with ``|a_k| <= bound`` for ``2 <= k <= degree``."""
    c = np.zeros(degree + 1, dtype=complex)
    c[1] = 1
    if degree >= 2:
        if complex_coeffs:
            c[2:] = random_disk(rng, degree - 1, bound)
        else:
            c[2:] = rng.uniform(-bound, bound, degree - 1)
    return Series.from_coeffs(c, order if order is not None else degree)


def near_identity(rng, scale=0.08, degree=4, order=64):
    """``z`` plus a small perturbation whose coefficients shrink with the degree."""
    c = np.zeros(degree + 1, dtype=complex)
    c[1] = 1
    for k in range(2, degree + 1):
        c[k] = random_disk(rng, 1, scale / (k - 1))[0]
    return Series.from_coeffs(c, order)


def _inside(rng, center, radius, shrink=0.7):
    return center + random_disk(rng, 1, shrink * radius)[0]


def random_t2_params(rng, max_n=3):
    """Parameters satisfying the T2 parameter constraints with room to spare."""
    m = float(rng.uniform(0.6, 3.0))
    half = (m + 1) / 2
    alpha = complex(random_disk(rng, 1, 0.3)[0])
    target = _inside(rng, half, half)  # (1+c)/(1-alpha)
    c = complex(target * (1 - alpha) - 1)
    beta = complex(_inside(rng, half, half))
    return CriterionParams(alpha=alpha, beta=beta, c=c, m=m, n=int(rng.integers(0, max_n + 1)))


def random_t4_params(rng, max_n=3):
    m = float(rng.uniform(0.6, 3.0))
    half = (m + 1) / 2
    c = complex(_inside(rng, (m - 1) / 2, half))
    beta = complex(_inside(rng, half, half))
    return CriterionParams(alpha=0, beta=beta, c=c, m=m, n=int(rng.integers(0, max_n + 1)),
                           v=int(rng.integers(0, max_n + 1)))
