"""Exception hierarchy shared by all solver modules.

The CLI maps these onto exit codes: invalid input -> 1, size-guard
refusal -> 2, internal invariant violation -> 3.
"""


class ConncutError(Exception):
    """Base class for all package errors."""


class InvalidInputError(ConncutError, ValueError):
    """Malformed graph, file, parameter, or precondition violation."""


class CycleInputError(InvalidInputError):
    """Raised when a degree-2 contraction is asked to handle a simple cycle;
    callers should use cycle_solve instead."""


class SizeGuardError(ConncutError, RuntimeError):
    """Instance exceeds a solver's practical size bound."""


class InvariantViolationError(ConncutError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class InfeasibleAssignmentError(InvalidInputError):
    """A truth assignment does not satisfy the source formula, so the
    corresponding gadget vertex set would be disconnected."""
