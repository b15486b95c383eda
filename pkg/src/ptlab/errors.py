"""Exception hierarchy shared by every ptlab module.

Separate classes exist so callers (and the CLI exit-code mapping) can
distinguish bad shapes from violated mathematical contracts from plain
numerical trouble.
"""


class PtlabError(Exception):
    """Base class for all errors raised by ptlab."""


class DimensionError(PtlabError):
    """Input has the wrong shape (non-square, mismatched sizes, empty)."""


class ContractError(PtlabError):
    """A documented precondition does not hold for the given input."""


class ConstraintError(PtlabError):
    """A parameter constraint is violated (e.g. metric existence bounds)."""


class NumericalError(PtlabError):
    """A numerical routine failed (singular solve, non-convergence)."""


class SingularCaseError(PtlabError):
    """A closed-form normalizer vanishes; the formula is degenerate here."""


class IndeterminateStructureError(PtlabError):
    """The answer depends on a tolerance call that cannot be certified."""
