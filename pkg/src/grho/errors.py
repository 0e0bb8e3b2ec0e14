"""Exception hierarchy.

Input problems derive from :class:`GrhoError`; :class:`InternalCheckError`
marks failed self-checks (a bug, never bad input). The CLI maps the first to
exit code 1 and the second to exit code 2.
"""


class GrhoError(Exception):
    """Invalid input or a statistic that is undefined for the given data."""


class EmptyGroup(GrhoError):
    pass


class NegativeTime(GrhoError):
    pass


class NoFailures(GrhoError):
    pass


class TiesPresent(GrhoError):
    pass


class DegenerateVariance(GrhoError):
    """V = 0: at every failure time one of the two risk sets is empty."""

    def __init__(self, message="variance is zero", step=None):
        if step is not None:
            message = f"{message} (chain step {step})"
        super().__init__(message)
        self.step = step


class NotAdjacentPair(GrhoError):
    pass


class InconsistentWithinGroupOrder(GrhoError):
    pass


class ForcedTie(GrhoError):
    pass


class CapExceeded(GrhoError):
    pass


class AllDegenerate(GrhoError):
    pass


class InputFormatError(GrhoError):
    pass


class InternalCheckError(Exception):
    pass


class MonotonicityViolation(InternalCheckError):
    def __init__(self, message, step=None, scenario=None):
        super().__init__(f"step {step} ({scenario}): {message}")
        self.step = step
        self.scenario = scenario


class NoFeasible(InternalCheckError):
    pass
