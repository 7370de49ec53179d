"""Exception hierarchy shared by every module."""


class QptError(Exception):
    """Base class for all library errors."""


class InputError(QptError):
    """Malformed or inconsistent user input."""


class VerificationError(QptError):
    """A computed object failed one of its defining identities."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


# numerics
class NotIdempotent(VerificationError):
    pass


class NotSelfAdjoint(VerificationError):
    pass


class SpectralGapViolation(VerificationError):
    pass


class NotCommuting(VerificationError):
    pass


class NotNormal(VerificationError):
    pass


# graphs / groups
class ParseError(InputError):
    pass


class GroupOrderCapExceeded(QptError):
    pass


class ElementNotInGroup(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotAbelian(InputError):
    pass


class TooLarge(QptError):
    pass


# cocycles / ueb
class CocycleViolation(VerificationError):
    def __init__(self, triple, residual=None):
        a, b, c = triple
        super().__init__(f"cocycle identity fails at ({a}, {b}, {c})", residual)
        self.triple = triple


class NonIntegerPhi(VerificationError):
    pass


class NotConjugating(InputError):
    pass


class NotUnitary(VerificationError):
    pass


class NotTraceOrthogonal(VerificationError):
    pass


class NotProjective(VerificationError):
    def __init__(self, pair, residual=None):
        super().__init__(f"U_a U_b is not a scalar multiple of U_ab for (a, b) = {pair}", residual)
        self.pair = pair


class PhaseSnapError(VerificationError):
    pass


class NondegeneracyRequired(InputError):
    pass


class RankMismatch(VerificationError):
    pass


# frobenius / qiso
class AxiomViolation(VerificationError):
    def __init__(self, axiom, residual):
        super().__init__(f"{axiom} fails with max residual {residual:.3e}", residual)
        self.axiom = axiom


class CenterMismatch(VerificationError):
    pass


class NotCommutative(InputError):
    pass


class NotBooleanAdjacency(VerificationError):
    pass


class PPMViolation(VerificationError):
    def __init__(self, identity, where, residual):
        super().__init__(f"{identity} fails at {where} (residual {residual:.3e})", residual)
        self.identity = identity
        self.where = where


class NotAutomorphisms(InputError):
    pass


class CocycleMismatch(VerificationError):
    pass


class ShapeMismatch(InputError):
    pass


class NonInteger(VerificationError):
    pass


class MismatchWithSplit(VerificationError):
    pass


# bcs
class UnsatisfiableConstraint(InputError):
    pass


class InvalidQuantumSolution(VerificationError):
    pass


class NotSignCovariant(VerificationError):
    pass


class NotIrreducible(VerificationError):
    pass
