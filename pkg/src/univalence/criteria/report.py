"""Result containers for criterion evaluations."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import SingularPoint
from .params import ConstraintReport, GridConfig
from .sup import sup_disk


def cpair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class Inequality:
    """One pointwise inequality ``lhs(z) (<|<=) bound`` to hold on the disk.

    ``expr`` returns either a complex quantity whose modulus is bounded by
    ``bound``, or (``pointwise=True``) the real excess ``lhs - rhs`` that must
    stay below zero.
    """

    label: str
    expr: Callable
    bound: float
    strict: bool
    pointwise: bool = False


@dataclass
class InequalityResult:
    label: str
    bound: float
    sup_estimate: float
    margin: float
    argmax_z: complex | None
    strict: bool
    satisfied: bool
    grid_z: np.ndarray | None = field(default=None, repr=False)
    grid_values: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "bound": self.bound,
            "sup_estimate": self.sup_estimate,
            "margin": self.margin,
            "argmax_z": None if self.argmax_z is None else cpair(self.argmax_z),
            "strict": self.strict,
            "satisfied": self.satisfied,
        }


@dataclass
class CriterionReport:
    criterion: str
    satisfied: bool
    params_ok: bool
    inequalities: list[InequalityResult]
    constraints: ConstraintReport
    singular_points: list[complex] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        """Smallest inequality margin (NaN when a singularity was hit)."""
        ms = [r.margin for r in self.inequalities]
        return float(min(ms)) if ms else float("nan")

    def inequality(self, label: str) -> InequalityResult:
        for r in self.inequalities:
            if r.label == label:
                return r
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "satisfied": self.satisfied,
            "params_ok": self.params_ok,
            "margin": self.margin,
            "inequalities": [r.to_dict() for r in self.inequalities],
            "constraints": self.constraints.to_dict(),
            "singular_points": [cpair(z) for z in self.singular_points],
            "notes": list(self.notes),
            "extra": self.extra,
        }


def run_inequalities(
    name: str,
    inequalities: list[Inequality],
    constraints: ConstraintReport,
    grid: GridConfig,
    notes=(),
) -> CriterionReport:
    tol = grid.tolerance
    results, singular = [], []
    for ineq in inequalities:
        try:
            sup = sup_disk(ineq.expr, grid)
        except SingularPoint as exc:
            singular.extend(exc.points)
            results.append(InequalityResult(ineq.label, ineq.bound, float("nan"), float("nan"), None, ineq.strict, False))
            continue
        margin = ineq.bound - sup.sup_estimate
        ok = margin > tol if ineq.strict else margin >= -tol
        results.append(
            InequalityResult(
                ineq.label, ineq.bound, sup.sup_estimate, margin, sup.argmax_z, ineq.strict, bool(ok),
                sup.grid_z, sup.grid_values,
            )
        )
    seen, uniq = set(), []
    for z in singular:
        if z not in seen:
            seen.add(z)
            uniq.append(z)
    satisfied = constraints.ok and not uniq and all(r.satisfied for r in results)
    return CriterionReport(name, bool(satisfied), constraints.ok, results, constraints, uniq, list(notes))
