"""Odometer cocycles into finite groups: evaluation, cohomology and coboundary decisions."""

from .coboundary import (
    CoboundaryAtLevel,
    CoboundaryVerdict,
    NeverCoboundary,
    Unsolvable,
    coboundary_decide_chain,
    coboundary_solve_at_level,
    cycle_sum,
)
from .essential_values import (
    EssentialValueSet,
    essential_values_bruteforce,
    essential_values_closed_form,
    essential_values_limit,
)
from .level_cocycle import (
    CocycleTable,
    LevelCocycle,
    Orientation,
    TransferFunction,
    coboundary_of,
    cohomologous_verify,
    evaluate,
    is_cocycle_exhaustive,
    reduce_target,
    restrict_target,
    verify_cocycle_identity,
)

__all__ = [
    "CoboundaryAtLevel",
    "CoboundaryVerdict",
    "CocycleTable",
    "EssentialValueSet",
    "LevelCocycle",
    "NeverCoboundary",
    "Orientation",
    "TransferFunction",
    "Unsolvable",
    "coboundary_decide_chain",
    "coboundary_of",
    "coboundary_solve_at_level",
    "cohomologous_verify",
    "cycle_sum",
    "essential_values_bruteforce",
    "essential_values_closed_form",
    "essential_values_limit",
    "evaluate",
    "is_cocycle_exhaustive",
    "reduce_target",
    "restrict_target",
    "verify_cocycle_identity",
]
