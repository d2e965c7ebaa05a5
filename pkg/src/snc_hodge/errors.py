"""Exception types.  Each carries a short machine-readable ``code``."""


class SncHodgeError(Exception):
    code = "error"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


class ContainmentViolation(SncHodgeError):
    code = "containment-violation"


class KindUnsupported(SncHodgeError):
    code = "kind-unsupported"


class NotInSpan(SncHodgeError):
    code = "not-in-span"


class DegeneratePairing(SncHodgeError):
    code = "degenerate-pairing"


class DegreeOutOfRange(SncHodgeError):
    code = "degree-out-of-range"


class TypeViolation(SncHodgeError):
    code = "type-violation"


class MissingHodgeBasis(SncHodgeError):
    code = "missing-hodge-basis"


class MissingCupData(SncHodgeError):
    code = "missing-cup-data"


class GluingMismatch(SncHodgeError):
    code = "gluing-mismatch"


class NotPure(SncHodgeError):
    code = "not-pure"


class InvalidParams(SncHodgeError):
    code = "invalid-params"


class SchemaError(SncHodgeError):
    code = "schema-error"


class DimensionCapExceeded(SncHodgeError):
    code = "dimension-cap"
