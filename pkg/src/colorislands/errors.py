"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: PreconditionError and its subclasses map
to exit 2, verification failures to exit 1, InternalInvariantError to exit 3.
"""


class ColorIslandsError(Exception):
    """Base class for all package errors."""


class PreconditionError(ColorIslandsError, ValueError):
    """A documented precondition of an operation was violated by the caller."""


class DegeneratePointSetError(PreconditionError):
    """The point set is not in general position; inputs are never perturbed."""


class InstanceFormatError(PreconditionError):
    """An instance or solution file failed to parse or violated the schema."""


class GenerationError(PreconditionError):
    """A generator could not produce a valid instance within its retry budget."""


class CapacityError(PreconditionError):
    """The requested dimension exceeds the build-time search cap."""


class HallInfeasibleError(PreconditionError):
    """Hall condition fails; carries the violated prefix length and classes."""

    def __init__(self, t, classes, message=None):
        self.t = t
        self.classes = tuple(classes)
        super().__init__(
            message
            or "no partition into disjoint colorful tuples exists: "
            f"classes {self.classes} exceed the prefix bound at t={t}"
        )


class MergeNotGuaranteedError(PreconditionError):
    """merge preconditions on (k, m) unmet; a safe merge is not guaranteed."""


class HypothesisViolatedError(PreconditionError):
    """three_cutting was called outside its halfplane hypothesis and the
    search found no partition; the caller should have split by a halfplane."""


class BudgetExceededError(ColorIslandsError):
    """A brute-force search hit its node budget.  Never conflated with
    nonexistence."""


class InternalInvariantError(ColorIslandsError):
    """A branch that the underlying theorems rule out was reached.
    Always a bug in this package, never a property of the input."""
