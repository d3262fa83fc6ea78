"""Exception types with stable machine-readable codes.

Every domain error raised by the library carries a ``code`` attribute; the
CLI serializes it into error JSON and maps it to exit status 2.
"""


class HermsigError(Exception):
    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class ZeroPolynomial(HermsigError):
    code = "ZeroPolynomial"


class NotSquarefree(HermsigError):
    code = "NotSquarefree"


class SignConditionDegenerate(HermsigError):
    code = "SignConditionDegenerate"


class EmptyConditions(HermsigError):
    code = "EmptyConditions"


class NotIsolating(HermsigError):
    code = "NotIsolating"


class NotFormallyReal(HermsigError):
    code = "NotFormallyReal"


class FieldMismatch(HermsigError):
    code = "FieldMismatch"


class ZeroElement(HermsigError):
    code = "ZeroElement"


class NotAnEmbedding(HermsigError):
    code = "NotAnEmbedding"


class ReducibleMinPoly(HermsigError):
    code = "ReducibleMinPoly"


class NotSymmetric(HermsigError):
    code = "NotSymmetric"


class PhiNotSymmetric(HermsigError):
    code = "PhiNotSymmetric"


class PhiSingular(HermsigError):
    code = "PhiSingular"


class NotInvertible(HermsigError):
    code = "NotInvertible"


class NotHermitian(HermsigError):
    code = "NotHermitian"


class SingularForm(HermsigError):
    code = "SingularForm"


class NilOrdering(HermsigError):
    code = "NilOrdering"


class OrderingDoesNotRestrict(HermsigError):
    code = "OrderingDoesNotRestrict"


class ExpectedNPMember(HermsigError):
    code = "ExpectedNPMember"


class ParseError(HermsigError):
    code = "ParseError"
