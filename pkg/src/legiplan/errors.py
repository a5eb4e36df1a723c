"""Exception types shared across the package."""


class LegiplanError(Exception):
    """Base class for all errors raised by this package."""


class InvalidModel(LegiplanError):
    """An MDP definition violates its invariants (bad kernel, bad indices)."""


class InvalidSpec(LegiplanError):
    """A maze specification violates its invariants."""


class ParseError(LegiplanError):
    """A maze text document could not be parsed."""


class InfeasibleSampling(LegiplanError):
    """No (start, goal) pair satisfies the sampling constraints."""


class ImpossibleTransition(LegiplanError):
    """An observed transition has zero probability under the kernel."""


class EmptyTrajectory(LegiplanError):
    """A metric was asked to score a trajectory with no steps."""


class Divergence(LegiplanError):
    """Gradient ascent kept decreasing the objective despite step halving."""


class PlanningTimeout(LegiplanError):
    """A planner exceeded its wall-clock budget."""


class FixtureMissing(LegiplanError):
    """A benchmark references a maze fixture that does not exist."""


class InsufficientSamples(LegiplanError):
    """Balancing cannot meet the requested per-configuration quota.

    ``achievable`` maps configuration key -> number of paired samples
    actually available, so callers can retry with a feasible quota.
    """

    def __init__(self, message: str, achievable: dict | None = None):
        super().__init__(message)
        self.achievable = achievable or {}
