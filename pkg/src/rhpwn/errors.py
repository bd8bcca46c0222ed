"""Error types.  Each carries a short machine code used in CLI error JSON."""


class RhpwnError(Exception):
    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        for key, value in self.details.items():
            out[key] = value if isinstance(value, (int, bool, type(None))) else str(value)
        return out


class SymbolNotSupported(RhpwnError):
    code = "symbol-not-supported"


class BoundaryConditionViolated(RhpwnError):
    code = "boundary-condition-violated"


class DomainViolation(RhpwnError):
    code = "domain-violation"


class NotClosed(RhpwnError):
    code = "not-closed"


class NotACocycle(RhpwnError):
    code = "not-a-cocycle"


class OrderTooSmall(RhpwnError):
    code = "order-too-small"


class QuadratureFailure(RhpwnError):
    code = "quadrature-failure"


class MixedKindOperands(RhpwnError):
    code = "mixed-kind-operands"


class OutsideSector(RhpwnError):
    """Raised when generalized-v2 evaluation leaves the (B^n_0)-generated sector."""

    code = "outside-sector"


class NotHermitian(RhpwnError):
    """The vacuum rules produced a non-Hermitian inner-product matrix."""

    code = "not-hermitian"


class NonsensicalN(RhpwnError):
    code = "nonsensical-n"


class ParseError(RhpwnError):
    code = "parse-error"


class InvariantBreach(RhpwnError):
    """An internal consistency check failed.  Always a bug."""

    code = "invariant-breach"
