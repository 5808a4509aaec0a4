'''
Exceptions raised by the torifan engine.

Library code raises; only the command line turns these into log messages
and exit codes.
'''


class TorifanError(ValueError):
    pass


# lattice
class ZeroVector(TorifanError):
    pass


class DependentGenerators(TorifanError):
    pass


class SingularMatrix(TorifanError):
    pass


# fan
class NonPrimitiveRay(TorifanError):
    pass


class DegenerateCone(TorifanError):
    pass


class OverlappingCones(TorifanError):
    pass


class NotPure(TorifanError):
    pass


class NotComplete(TorifanError):
    pass


class FlipNotDefined(TorifanError):
    pass


class OutsideSupport(TorifanError):
    pass


class NotPrimitive(TorifanError):
    pass


class BadParameters(TorifanError):
    pass


class BadWeights(TorifanError):
    pass


class PicardRankTooLarge(BadParameters):
    pass


# divisors, intersections, volumes
class DimensionMismatch(TorifanError):
    pass


class NotNef(TorifanError):
    pass


class Unbounded(TorifanError):
    pass


class NotProjective(TorifanError):
    pass


# mmp
class NotExtremal(TorifanError):
    pass


class NotRankTwo(TorifanError):
    pass


class IterationCapExceeded(TorifanError):
    pass


class ConsistencyError(TorifanError):
    '''Two code paths that must agree produced different answers.'''


# cli
class ParseError(TorifanError):
    pass
