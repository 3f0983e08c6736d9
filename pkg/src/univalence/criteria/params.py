"""Criterion parameters, grid plans and parameter-constraint checks."""
from __future__ import annotations

import logging
import operator
from dataclasses import asdict, dataclass, field, replace

log = logging.getLogger(__name__)

OPERATOR_KINDS = ("ruscheweyh", "salagean")


@dataclass(frozen=True)
class CriterionParams:
    """Parameters shared by every criterion.

    ``n`` is the operator order applied to ``h`` (criteria T2, T3, T5) or ``f``
    (T4, T6); ``v`` is the second order used on ``h`` in T4/T6.
    ``lam`` overrides ``n`` with a real Ruscheweyh order when given.
    """

    alpha: complex = 0j
    beta: complex = 1 + 0j
    c: complex = 0j
    m: float = 1.0
    n: int = 0
    v: int = 0
    operator_kind: str = "ruscheweyh"
    lam: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "m", float(self.m))
        if self.operator_kind not in OPERATOR_KINDS:
            raise ValueError(f"operator_kind must be one of {OPERATOR_KINDS}")
        if not self.m > 0:
            raise ValueError("m must be positive")
        if int(self.n) != self.n or self.n < 0 or int(self.v) != self.v or self.v < 0:
            raise ValueError("n and v must be non-negative integers")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "v", int(self.v))

    @property
    def order(self):
        """Operator order used for the single-operator theorems."""
        return self.lam if self.lam is not None else self.n

    def with_(self, **kw) -> "CriterionParams":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("alpha", "beta", "c"):
            d[k] = [d[k].real, d[k].imag]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionParams":
        kw = dict(d)
        for k in ("alpha", "beta", "c"):
            if k in kw and isinstance(kw[k], (list, tuple)):
                kw[k] = complex(kw[k][0], kw[k][1])
        return cls(**kw)


@dataclass(frozen=True)
class GridConfig:
    """Polar sampling plan for the disk ``|z| <= max_radius``.

    Radii are uniform in ``r**2`` so the boundary is sampled densely; the
    origin is always included as a probe point.
    """

    n_radii: int = 64
    n_angles: int = 128
    max_radius: float = 0.999
    tolerance: float = 1e-9

    def __post_init__(self):
        if not 0 < self.max_radius < 1:
            raise ValueError("max_radius must lie in (0, 1)")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.n_radii < 1 or self.n_angles < 1:
            raise ValueError("grid needs at least one radius and one angle")

    def doubled(self) -> "GridConfig":
        return replace(self, n_radii=2 * self.n_radii, n_angles=2 * self.n_angles)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ConstraintCheck:
    label: str
    value: float | None
    bound: float | None
    relation: str
    holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ConstraintReport:
    family: str
    checks: list[ConstraintCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[ConstraintCheck]:
        return [c for c in self.checks if not c.holds]

    def message(self) -> str:
        return "; ".join(
            f"{c.label} violated ({c.value!r} {c.relation} {c.bound!r} is false)" for c in self.failures()
        )

    def to_dict(self) -> dict:
        return {"family": self.family, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def _cmp(label, value, bound, relation):
    ops = {"<": operator.lt, "<=": operator.le, "!=": operator.ne, ">": operator.gt}
    holds = ops[relation](value, bound)
    if isinstance(value, complex):
        value = [value.real, value.imag]
    if isinstance(bound, complex):
        bound = [bound.real, bound.imag]
    return ConstraintCheck(label, value, bound, relation, bool(holds))


def _beta_check(p: CriterionParams) -> ConstraintCheck:
    half = (p.m + 1) / 2
    return _cmp("|beta - (m+1)/2| < (m+1)/2", abs(p.beta - half), half, "<")


def check_param_constraints(params: CriterionParams, family: str) -> ConstraintReport:
    """Evaluate the parameter hypotheses of a criterion family.

    Families: ``T2`` (criteria T2, T3, T5), ``T4`` (T4, T6), ``C1``,
    ``C5`` and ``none``. Violations are reported, never raised.
    """
    p = params
    half = (p.m + 1) / 2
    rep = ConstraintReport(family)
    checks = rep.checks
    if family == "T2":
        checks.append(_cmp("alpha != 1", p.alpha, 1, "!="))
        checks.append(_cmp("c != -1", p.c, -1, "!="))
        if p.alpha != 1:
            val = abs((1 + p.c) / (1 - p.alpha) - half)
            checks.append(_cmp("|(1+c)/(1-alpha) - (m+1)/2| <= (m+1)/2", val, half, "<="))
        checks.append(_beta_check(p))
        if abs(p.c) > 1:
            log.warning("|c| = %g > 1; only the stated parameter constraints are enforced", abs(p.c))
    elif family == "T4":
        checks.append(_cmp("c != -1", p.c, -1, "!="))
        checks.append(_cmp("|c - (m-1)/2| <= (m+1)/2", abs(p.c - (p.m - 1) / 2), half, "<="))
        checks.append(_beta_check(p))
    elif family == "C1":
        checks.append(_cmp("|c| < 1", abs(p.c), 1.0, "<"))
        checks.append(_cmp("|beta - 1| < 1", abs(p.beta - 1), 1.0, "<"))
    elif family == "C5":
        real = p.alpha.imag == 0 and p.beta.imag == 0 and p.c.imag == 0
        checks.append(ConstraintCheck("alpha, beta, c real", None, None, "", real))
        a, c = p.alpha.real, p.c.real
        checks.append(_cmp("alpha < 0", a, 0.0, "<"))
        checks.append(_cmp("c != -1", c, -1.0, "!="))
        checks.append(_cmp("c <= m", c, p.m, "<="))
        checks.append(_cmp("-1 < c", -1.0, c, "<"))
        checks.append(_cmp("c <= m - alpha(m+1)", c, p.m - a * (p.m + 1), "<="))
        checks.append(_beta_check(p))
    elif family != "none":
        raise ValueError(f"unknown constraint family {family!r}")
    return rep
