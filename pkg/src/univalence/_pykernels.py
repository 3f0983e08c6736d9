"""Pure numpy implementations of the hot kernels.

Same signatures and semantics as the compiled ``_ckernels`` module; used when
the extension is not built or ``UNIVALENCE_PURE_PYTHON`` is set.
"""
import math

import numpy as np


def horner_jet(coeffs, z, nd):
    """Values of a polynomial and its first ``nd`` derivatives at ``z``.

    Returns a complex array of shape ``(nd + 1, len(z))``; row ``j`` is the
    ``j``-th derivative.
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    acc = np.zeros((nd + 1, z.size), dtype=np.complex128)
    for k in range(c.size - 1, -1, -1):
        for j in range(nd, 0, -1):
            acc[j] = acc[j] * z + acc[j - 1]
        acc[0] = acc[0] * z + c[k]
    for j in range(2, nd + 1):
        acc[j] *= math.factorial(j)
    return acc


def cauchy(a, b, n):
    """First ``n + 1`` coefficients of the Cauchy product of ``a`` and ``b``."""
    a = np.asarray(a, dtype=np.complex128)[: n + 1]
    b = np.asarray(b, dtype=np.complex128)[: n + 1]
    out = np.zeros(n + 1, dtype=np.complex128)
    full = np.convolve(a, b)[: n + 1]
    out[: full.size] = full
    return out


def series_log(u):
    """Series logarithm of ``u`` with ``u[0] == 1``, from ``L' = u'/u``."""
    u = np.asarray(u, dtype=np.complex128)
    n = u.size - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    ks = np.arange(n + 1, dtype=np.float64)
    for k in range(1, n + 1):
        # k L_k = k u_k - sum_{j=1}^{k-1} j L_j u_{k-j}
        s = np.dot(ks[1:k] * out[1:k], u[k - 1:0:-1]) if k > 1 else 0.0
        out[k] = u[k] - s / k
    return out


def series_exp(a):
    """Series exponential of ``a`` with ``a[0] == 0``, from ``E' = a'E``."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.size - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    out[0] = 1.0
    ka = np.arange(n + 1, dtype=np.float64) * a
    for k in range(1, n + 1):
        out[k] = np.dot(ka[1:k + 1], out[k - 1::-1]) / k
    return out
