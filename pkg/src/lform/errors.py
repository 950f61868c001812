class LFormError(Exception):
    pass


class InputError(LFormError):
    """Bad user input. The CLI maps these to exit code 2."""


class InternalInconsistency(LFormError):
    """A theorem-level identity failed. The CLI maps this to exit code 3."""


# fields
class NonPrime(InputError): pass
class NonMonicModulus(InputError): pass
class ReducibleModulus(InputError): pass
class MalformedSpec(InputError): pass
class SpecMismatch(InputError): pass
class FieldTooLarge(InputError): pass
class FieldTooSmall(InputError): pass
class DivideByZero(LFormError, ZeroDivisionError): pass

# polynomials
class BothZero(InputError): pass
class DegreeTooSmall(InputError): pass
class ModuliNotCoprime(InputError): pass
class ZeroPolynomial(InputError): pass
class InexactDivision(InternalInconsistency): pass

# moore
class TupleTooSmall(InputError): pass
class ZeroEpsilon(InputError): pass
class DependentBasis(InputError): pass
class SingularTuple(InputError): pass

# forms
class NonSimplePole(InputError): pass
class PoleOutsideField(InputError): pass
class ZeroForm(InputError): pass
class DegreeMismatch(InputError): pass

# spaces
class DependentLeadingCoeffs(InputError): pass
class NotConstantCriterion(InputError): pass
class ZeroCriterion(InputError): pass
class PolesOutsideField(InputError): pass
class NonSimpleRoot(InputError): pass
class SingularMatrix(InputError): pass
class NonEtaleS(InputError): pass
class EtaNotInField(InputError): pass
class DependentTuple(InputError): pass
class MuNotInField(InputError): pass


class AuditFailure(InternalInconsistency):
    def __init__(self, item, expected=None, actual=None):
        super().__init__(f"{item}: expected {expected}, got {actual}")
        self.item, self.expected, self.actual = item, expected, actual


# char 2
class WrongCharacteristic(InputError): pass
class NotCoprime(InputError): pass
class DegreeDrop(InputError): pass
class CongruenceInsolvable(InternalInconsistency): pass
class NonPolynomialU(InternalInconsistency): pass

# classify
class NonSplitPencil(InputError): pass
class RepeatedRoot(InputError): pass
class PrecondViolation(InputError): pass
class InterpolationShortfall(InputError): pass
class InsufficientSamples(InputError): pass
class SearchSpaceTooLarge(InputError): pass
class MalformedInput(InputError): pass
