"""Exception hierarchy shared by all polycond modules.

Every error carries a short machine-readable ``kind`` so the service layer
can map failures onto HTTP responses (and the CLI onto exit codes) without
string matching.
"""


class PolycondError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class ArgumentError(PolycondError):
    """A caller-supplied argument is out of range or malformed."""

    kind = "argument"


class DomainError(PolycondError):
    """The requested quantity is undefined at the given input (e.g. log of 0)."""

    kind = "domain"


class DegenerateInputError(PolycondError):
    """Structurally degenerate input: duplicate nodes, all-zero weights, ..."""

    kind = "degenerate"


class UnsupportedBasisError(PolycondError):
    """The operation is not defined for the polynomial's basis."""

    kind = "unsupported-basis"


class ModelViolationError(PolycondError):
    """A perturbation vector breaks its own stated bound."""

    kind = "model-violation"


class SingularityError(PolycondError):
    """A condition number is infinite (multiple root: p'(r) = 0)."""

    kind = "singularity"


class PrecisionError(PolycondError):
    """The working precision cannot resolve the requested quantity."""

    kind = "precision"
