"""Numerical evaluation of the univalence criteria over the unit disk."""
from .corollaries import ARITY, COROLLARIES, eval_corollary
from .params import (
    ConstraintReport,
    CriterionParams,
    GridConfig,
    check_param_constraints,
)
from .report import CriterionReport, Inequality, InequalityResult, run_inequalities
from .sup import SINGULAR_DELTA, SupResult, grid_points, guard, sup_disk
from .theorems import (
    eval_theorem2,
    eval_theorem3,
    eval_theorem4,
    eval_theorem5,
    eval_theorem6,
    theorem2_parts,
    theorem4_parts,
)

THEOREMS = {
    "T2": eval_theorem2,
    "T3": eval_theorem3,
    "T4": eval_theorem4,
    "T5": eval_theorem5,
    "T6": eval_theorem6,
}

CRITERIA = tuple(THEOREMS) + COROLLARIES


def evaluate_criterion(cid, f, g=None, h=None, params=CriterionParams(), grid=GridConfig()):
    """Dispatch a criterion id to its evaluator."""
    if cid in THEOREMS:
        if g is None or h is None:
            raise ValueError(f"{cid} requires f, g and h")
        return THEOREMS[cid](f, g, h, params, grid)
    return eval_corollary(cid, f, g, h, params, grid)


__all__ = [
    "ARITY", "COROLLARIES", "CRITERIA", "THEOREMS", "ConstraintReport", "CriterionParams",
    "CriterionReport", "GridConfig", "Inequality", "InequalityResult", "SINGULAR_DELTA", "SupResult",
    "check_param_constraints", "eval_corollary", "eval_theorem2", "eval_theorem3", "eval_theorem4",
    "eval_theorem5", "eval_theorem6", "evaluate_criterion", "grid_points", "guard", "run_inequalities",
    "sup_disk", "theorem2_parts", "theorem4_parts",
]
