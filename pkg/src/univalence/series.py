"""Truncated power series with complex coefficients.

A :class:`Series` stores ``coeffs[k]``, the coefficient of ``z**k`` for
``k = 0..N``; ``N`` is the truncation order. Values are immutable and every
operation returns a new series truncated to the smallest operand order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .errors import NonUnitConstantTerm, NotNormalized, OutsideDisk

DEFAULT_ORDER = 64


@dataclass(frozen=True, eq=False)
class Series:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size < 1:
            raise ValueError("a series needs at least one coefficient")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], order: int | None = None) -> "Series":
        """Build from leading coefficients, zero-padding up to ``order``."""
        c = np.asarray(coeffs, dtype=np.complex128).ravel()
        if order is None:
            order = c.size - 1
        out = np.zeros(order + 1, dtype=np.complex128)
        n = min(c.size, order + 1)
        out[:n] = c[:n]
        return cls(out)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_normalized(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] == 1

    def require_normalized(self, name: str = "f") -> "Series":
        if not self.is_normalized:
            raise NotNormalized(f"{name} must satisfy {name}(0) = 0 and {name}'(0) = 1")
        return self

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs[: order + 1]) if order < self.order else self

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        nz = np.flatnonzero(self.coeffs)
        last = nz[-1] + 1 if nz.size else 1
        shown = ", ".join(f"{c:.6g}" for c in self.coeffs[: min(last, 8)])
        more = ", ..." if last > 8 else ""
        return f"Series([{shown}{more}], order={self.order})"

    def __add__(self, other):
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return Series(self.coeffs[: n + 1] + other.coeffs[: n + 1])
        c = self.coeffs.copy()
        c[0] += other
        return Series(c)

    __radd__ = __add__

    def __neg__(self):
        return Series(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return multiply(self, other)
        return Series(self.coeffs * other)

    __rmul__ = __mul__

    def __call__(self, z):
        return evaluate(self, z)


def multiply(a: Series, b: Series) -> Series:
    """Truncated Cauchy product."""
    n = min(a.order, b.order)
    return Series(kernels.cauchy(a.coeffs, b.coeffs, n))


def hadamard(f1: Series, f2: Series) -> Series:
    """Coefficientwise (Hadamard) product."""
    n = min(f1.order, f2.order)
    return Series(f1.coeffs[: n + 1] * f2.coeffs[: n + 1])


def differentiate(f: Series) -> Series:
    if f.order == 0:
        return Series([0.0])
    k = np.arange(1, f.order + 1)
    return Series(k * f.coeffs[1:])


def z_differentiate(f: Series) -> Series:
    return Series(np.arange(f.order + 1) * f.coeffs)


def integrate_from_zero(f: Series) -> Series:
    """Antiderivative vanishing at 0; the order grows by one."""
    out = np.zeros(f.order + 2, dtype=np.complex128)
    out[1:] = f.coeffs / np.arange(1, f.order + 2)
    return Series(out)


def shift_down(f: Series) -> Series:
    """``f(z) / z`` for a series with ``f(0) = 0``."""
    if f.coeffs[0] != 0:
        raise ValueError("f(0) must vanish to divide by z")
    return Series(f.coeffs[1:]) if f.order >= 1 else Series([0.0])


def shift_up(f: Series) -> Series:
    """``z * f(z)``; the order grows by one."""
    return Series(np.concatenate(([0.0], f.coeffs)))


def log_unit(u: Series) -> Series:
    """Series logarithm of a series with constant term exactly 1."""
    _check_unit(u)
    return Series(kernels.series_log(u.coeffs))


def exp_series(a: Series) -> Series:
    """``exp(a)`` for ``a(0) = 0``."""
    if a.coeffs[0] != 0:
        raise ValueError("exp_series needs a vanishing constant term")
    return Series(kernels.series_exp(a.coeffs))


def complex_power(u: Series, gamma: complex) -> Series:
    """Principal power ``u**gamma`` of a series with ``u(0) == 1``.

    Computed as ``exp(gamma * log u)`` where ``log u`` is the series logarithm
    vanishing at the origin.
    """
    _check_unit(u)
    if gamma == 0:
        return Series.from_coeffs([1.0], u.order)
    if gamma == 1:
        return u
    return Series(kernels.series_exp(gamma * kernels.series_log(u.coeffs)))


def _check_unit(u: Series) -> None:
    if abs(u.coeffs[0] - 1) > 0:
        raise NonUnitConstantTerm(f"constant term is {u.coeffs[0]!r}, expected exactly 1")


def evaluate(f: Series, z):
    """Horner evaluation at a point or array of points inside the unit disk."""
    return jet(f, z, 0)[0]


def jet(f: Series, z, nd: int = 0):
    """Value and first ``nd`` derivatives of ``f`` at ``z``.

    Scalar ``z`` gives a 1-D array of length ``nd + 1``; array ``z`` gives an
    array of shape ``(nd + 1,) + z.shape``.
    """
    za = np.asarray(z, dtype=np.complex128)
    if za.size and np.max(np.abs(za)) >= 1:
        raise OutsideDisk("evaluation is restricted to |z| < 1")
    out = kernels.horner_jet(f.coeffs, za.ravel(), nd)
    if za.ndim == 0:
        return out[:, 0]
    return out.reshape((nd + 1,) + za.shape)


# Named normalized functions --------------------------------------------------

def identity(order: int = DEFAULT_ORDER) -> Series:
    return Series.from_coeffs([0.0, 1.0], order)


def koebe(order: int = DEFAULT_ORDER) -> Series:
    """``z / (1 - z)**2 = sum k z**k``."""
    return Series(np.arange(order + 1, dtype=np.complex128))


def geometric(order: int = DEFAULT_ORDER) -> Series:
    """``z / (1 - z)``: every coefficient from ``z`` on equals 1."""
    c = np.ones(order + 1, dtype=np.complex128)
    c[0] = 0
    return Series(c)


def exp_normalized(order: int = DEFAULT_ORDER) -> Series:
    """``exp(z) - 1``."""
    c = np.array([0.0] + [math.exp(-math.lgamma(k + 1)) for k in range(1, order + 1)])
    return Series(c)


# coefficient growth exponent p (|a_k| ~ k**p) of builtins that do not decay
_GROWTH = {"koebe": 1, "geometric": 0}
MAX_AUTO_ORDER = 1 << 16


def adequate_order(radius: float, growth: float, tol: float = 1e-12) -> int:
    """Smallest order ``N`` with ``N**(growth+1) * radius**N <= tol``.

    This bounds the truncation error of the first derivative of a series
    whose coefficients grow like ``k**growth``.
    """
    if not 0 <= radius < 1:
        raise OutsideDisk("radius must lie in [0, 1)")
    if radius == 0:
        return DEFAULT_ORDER
    n = DEFAULT_ORDER
    lr = math.log(radius)
    while (growth + 1) * math.log(n) + n * lr > math.log(tol):
        n = int(n * 1.25) + 1
        if n >= MAX_AUTO_ORDER:
            return MAX_AUTO_ORDER
    return n


BUILTINS = {
    "identity": identity,
    "koebe": koebe,
    "geometric": geometric,
    "exp_normalized": exp_normalized,
}


def builtin(name: str, order: int | None = None, radius: float = 0.999) -> Series:
    """Named series; ``order=None`` picks a truncation fit for ``|z| <= radius``."""
    if name not in BUILTINS:
        raise ValueError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    if order is None:
        order = adequate_order(radius, _GROWTH[name]) if name in _GROWTH else DEFAULT_ORDER
    return BUILTINS[name](order)
