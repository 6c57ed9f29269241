"""Exception hierarchy.

Precondition failures (the inputs do not satisfy what a construction needs)
are kept apart from verification failures (a construction produced something
that does not check out), because the CLI maps them to different exit codes.
"""


class VietorisError(Exception):
    pass


class EmptyInput(VietorisError, ValueError):
    pass


class OutOfRange(VietorisError, ValueError):
    pass


class NotACover(VietorisError, ValueError):
    pass


class ArityMismatch(VietorisError, ValueError):
    pass


class BudgetExceeded(VietorisError):
    pass


class PreconditionError(VietorisError):
    """The inputs are well formed but do not meet a construction's hypothesis."""


class NotFar(PreconditionError):
    pass


class NotFarEnough(PreconditionError):
    pass


class MeshTooCoarse(PreconditionError):
    pass


class VerificationFailed(VietorisError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
