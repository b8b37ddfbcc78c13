"""Exception hierarchy shared by every module.

Each exception carries a ``kind`` (the name used in structured error
output) and an optional ``details`` mapping with extra JSON-safe data.
"""


class TorsionKitError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    @property
    def kind(self):
        name = type(self).__name__
        return name[:-5] if name.endswith("Error") else name

    def to_json(self):
        out = {"error": self.kind, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


# exact linear algebra
class NonSquareError(TorsionKitError):
    pass


class NotInImageError(TorsionKitError):
    pass


# chain complexes
class ShapeMismatchError(TorsionKitError):
    pass


class NotAComplexError(TorsionKitError):
    pass


class MissingHomologyBasisError(TorsionKitError):
    pass


class BadHomologyBasisError(TorsionKitError):
    pass


class IndependenceViolatedError(TorsionKitError):
    pass


# presentations and representations
class UnknownGeneratorError(TorsionKitError):
    pass


class RelatorNotKilledError(TorsionKitError):
    pass


class NotAComplexAfterSpecializationError(NotAComplexError):
    pass


class SingularConjugatorError(TorsionKitError):
    pass


# exterior algebra / partition functions
class GenusMismatchError(TorsionKitError):
    pass


class NonNilpotentInputError(TorsionKitError):
    pass


class EulerDegreeZeroError(TorsionKitError):
    pass


class InvalidInputError(TorsionKitError):
    """Well-formed JSON whose content violates a file schema."""
