"""
Exception hierarchy for conckit.
Every domain failure derives from ConckitError; the CLI prints the class name verbatim.
"""


class ConckitError(Exception):
    ''' Base class for all domain errors. '''


# Laurent polynomials
class NotSymmetrizable(ConckitError, ValueError):
    ''' No unit multiple ±t^k of the polynomial is symmetric. '''


# Braids and fixtures
class InvalidBraid(ConckitError, ValueError):
    pass


class NotAKnot(ConckitError, ValueError):
    ''' The braid closure has more than one component. '''


class Degenerate(ConckitError, ValueError):
    ''' det(V + V^T) vanishes, so V is not a knot Seifert matrix. '''


class FixtureError(ConckitError):
    pass


# Pattern calculus
class ParseError(ConckitError, ValueError):
    def __init__(self, message, position):
        super().__init__(f'{message} at position {position}')
        self.position = position


class NoDeclaredDual(ConckitError):
    def __init__(self, generator):
        super().__init__(f'generator {generator!r} has no declared dual')
        self.generator = generator


# Surgery diagrams
class InvalidDiagram(ConckitError, ValueError):
    pass


class NonIntegralCoefficient(ConckitError, ValueError):
    def __init__(self, component, coefficient):
        super().__init__(f'component {component!r} has non-integral coefficient {coefficient}')
        self.component = component


class InvalidFraction(ConckitError, ValueError):
    pass


class DivisionByZero(ConckitError, ZeroDivisionError):
    pass


class ChainAttachError(ConckitError, ValueError):
    pass


class OddHalving(ConckitError, ValueError):
    ''' A connected lift needs the blackboard coefficient b to be divisible by the cover degree. '''


class UnsupportedLift(ConckitError, ValueError):
    pass


# Lattices and certificates
class DimensionMismatch(ConckitError, ValueError):
    pass


class InvalidMatrix(ConckitError, ValueError):
    pass


class NotSymmetric(ConckitError, ValueError):
    pass


class KindMismatch(ConckitError, ValueError):
    pass


class SearchLimitExceeded(ConckitError):
    pass


class CertificateInvalid(ConckitError):
    pass


# Pipeline
class InvalidSignature(ConckitError, ValueError):
    pass


class InvalidPattern(ConckitError, ValueError):
    ''' A declared dual that is not an involution under the rewrite rules. '''
