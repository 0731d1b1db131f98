"""Domain errors raised across the toolkit.

Every error is a ``ValueError`` so callers that only care about "bad input"
can catch that. Errors carry the offending data as attributes and render it
in the message, so a failed verification always names its first
counterexample.
"""

from __future__ import annotations

from typing import Any


class GroupError(ValueError):
    """Base class for group-table and D∞ errors."""


class InvalidGroupTable(GroupError):
    """A multiplication table fails the group axioms."""

    def __init__(self, reason: str, witness: tuple[int, ...] = ()) -> None:
        self.reason = reason
        self.witness = witness
        suffix = f" (witness {witness})" if witness else ""
        super().__init__(f"Invalid group table: {reason}{suffix}")


class NoSuchElement(GroupError):
    """No element of the requested order exists."""

    def __init__(self, order: int, group_order: int) -> None:
        self.order = order
        self.group_order = group_order
        super().__init__(f"No element of order {order} in a group of order {group_order}")


class AmbiguousOrientation(GroupError):
    """Both signs fit a sampled map equally badly."""

    def __init__(self, range_plus: int, range_minus: int, threshold: int) -> None:
        self.range_plus = range_plus
        self.range_minus = range_minus
        self.threshold = threshold
        super().__init__(
            f"Cannot choose an orientation: deviation range {range_plus} for +x and {range_minus} for -x "
            f"both exceed threshold {threshold}"
        )


class ChainError(ValueError):
    """Base class for divisibility chain and model errors."""


class InvalidChain(ChainError):
    """A chain description violates the multiplier constraints."""


class LevelMismatch(ChainError):
    """An object defined at one level was used with an incompatible level."""

    def __init__(self, needed: int, got: int, what: str = "model") -> None:
        self.needed = needed
        self.got = got
        super().__init__(f"{what} level {got} is below the required level {needed}")


class CocycleError(ValueError):
    """Base class for cocycle errors."""


class NonAbelianTarget(CocycleError):
    """A decision procedure that needs an abelian target got a nonabelian one."""

    def __init__(self, name: str, witness: tuple[int, int]) -> None:
        self.witness = witness
        super().__init__(f"Target group {name} is not abelian: elements {witness[0]} and {witness[1]} do not commute")


class NotSingleCoset(CocycleError):
    """Transfer values spread over more than one coset of the value subgroup."""

    def __init__(self, cosets: list[list[int]]) -> None:
        self.cosets = cosets
        super().__init__(f"Transfer values occupy {len(cosets)} cosets of the value subgroup: {cosets}")


class SkewError(ValueError):
    """Base class for skew product errors."""


class BaseMismatch(SkewError):
    """Two skew systems do not share base model and fibre group."""


class RigidityError(ValueError):
    """Base class for errors raised by the rigidity extractor."""


class NotEquivariant(RigidityError):
    """A candidate conjugacy does not intertwine the actions."""

    def __init__(self, generator: str, state: int, detail: str = "") -> None:
        self.generator = generator
        self.state = state
        extra = f": {detail}" if detail else ""
        super().__init__(f"Map is not equivariant for generator {generator} at state {state}{extra}")


class UnclassifiablePoint(RigidityError):
    """A state is neither orientation preserving nor reversing on the window."""

    def __init__(self, state: int, deviation_plus: int, deviation_minus: int, bound: int) -> None:
        self.state = state
        self.deviation_plus = deviation_plus
        self.deviation_minus = deviation_minus
        self.bound = bound
        super().__init__(
            f"State {state} is unclassifiable: deviations {deviation_plus} (from s^n) and "
            f"{deviation_minus} (from s^-n) against bound {bound}"
        )


class DefectNotInExpectedCoset(RigidityError):
    """A normalized defect value left its expected coset of the translation subgroup."""

    def __init__(self, state: int, exponent: int, value: Any, expected: str) -> None:
        self.state = state
        self.exponent = exponent
        self.value = value
        super().__init__(f"Normalized defect at state {state}, n={exponent} is {value}, expected {expected}")


class NonReflectionCoset(RigidityError):
    """The reflection product V(x)·c(t, x)⁻¹·V(tx)⁻¹ at some state is a translation."""

    def __init__(self, state: int, value: Any) -> None:
        self.state = state
        self.value = value
        super().__init__(f"Expected a reflection s^k t at state {state}, got {value}")


class NotConstant(RigidityError):
    """The reflection index varies across states."""

    def __init__(self, values: dict[int, list[int]]) -> None:
        self.values = values
        super().__init__(f"Reflection index is not constant: {values}")


class NotIdentityWitness(RigidityError):
    """The induced restriction needs the identity homeomorphism on induced models."""


class TransferUnsolvable(RigidityError):
    """A telescoping transfer does not close up around a cycle."""

    def __init__(self, cycle_sum: int, where: str = "") -> None:
        self.cycle_sum = cycle_sum
        loc = f" on {where}" if where else ""
        super().__init__(f"Transfer equation unsolvable{loc}: cycle sum {cycle_sum} != 0")


class VerificationFailed(RigidityError):
    """An exhaustive identity check found a counterexample."""

    def __init__(self, identity: str, counterexample: dict[str, Any]) -> None:
        self.identity = identity
        self.counterexample = counterexample
        super().__init__(f"Verification of {identity} failed at {counterexample}")


class InvalidWitness(VerificationFailed):
    """A coe witness violates its own invariants."""


class ConfigError(ValueError):
    """A configuration file or command line option failed validation."""
