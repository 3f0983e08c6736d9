"""Ruscheweyh and Salagean derivative operators on normalized series."""
from __future__ import annotations

import math
import numbers

import numpy as np

from .errors import InvalidOrder
from .series import Series, complex_power, hadamard, shift_up, z_differentiate


def _is_integer(x) -> bool:
    return isinstance(x, numbers.Integral) or (isinstance(x, float) and x.is_integer())


def ruscheweyh_multipliers(lam: float, order: int) -> np.ndarray:
    """Multiplier of ``a_k`` under the Ruscheweyh derivative of order ``lam``.

    Entry ``k`` is ``C(k + lam - 1, k - 1) = Gamma(k + lam) / (Gamma(k) Gamma(lam + 1))``
    for ``k >= 1`` and 0 for ``k = 0``. Integer orders use exact binomials.
    """
    if not lam > -1:
        raise InvalidOrder(f"Ruscheweyh order must exceed -1, got {lam}")
    out = np.zeros(order + 1)
    if _is_integer(lam):
        n = int(lam)
        for k in range(1, order + 1):
            out[k] = float(math.comb(k + n - 1, n))
        return out
    base = math.lgamma(lam + 1)
    for k in range(1, order + 1):
        out[k] = math.exp(math.lgamma(k + lam) - math.lgamma(k) - base)
    return out


def ruscheweyh(f: Series, lam: float) -> Series:
    """``R^lam f``, the convolution of ``f`` with ``z / (1 - z)**(lam + 1)``."""
    f.require_normalized()
    return Series(ruscheweyh_multipliers(lam, f.order) * f.coeffs)


def ruscheweyh_kernel(lam: float, order: int) -> Series:
    """The series of ``z / (1 - z)**(lam + 1)`` built as a principal power."""
    if not lam > -1:
        raise InvalidOrder(f"Ruscheweyh order must exceed -1, got {lam}")
    one_minus_z = Series.from_coeffs([1.0, -1.0], order - 1)
    return shift_up(complex_power(one_minus_z, -(lam + 1)))


def ruscheweyh_by_convolution(f: Series, lam: float) -> Series:
    return hadamard(ruscheweyh_kernel(lam, f.order), f)


def salagean(f: Series, n: int) -> Series:
    """``S^n f``: ``n`` applications of ``z d/dz``."""
    f.require_normalized()
    if n < 0 or not _is_integer(n):
        raise InvalidOrder(f"Salagean order must be a non-negative integer, got {n}")
    out = f
    for _ in range(int(n)):
        out = z_differentiate(out)
    return out


def apply_operator(f: Series, order, kind: str = "ruscheweyh") -> Series:
    kind = kind.lower()
    if kind == "ruscheweyh":
        return ruscheweyh(f, order)
    if kind == "salagean":
        return salagean(f, order)
    raise ValueError(f"unknown operator kind {kind!r}")
