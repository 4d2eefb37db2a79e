"""Exception hierarchy shared by every subpackage."""


class SemisimpError(Exception):
    """Base class for all errors raised by this package."""


# exact_linalg
class NonPrimeModulus(SemisimpError, ValueError):
    pass


class FieldMismatch(SemisimpError, ValueError):
    pass


class NonSquare(SemisimpError, ValueError):
    pass


class ShapeMismatch(SemisimpError, ValueError):
    pass


class NoSolution(SemisimpError, ValueError):
    pass


# groups
class OrderCapExceeded(SemisimpError):
    pass


class UnknownName(SemisimpError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class SylowTooLarge(SemisimpError):
    pass


# modrep
class ModuleMismatch(SemisimpError, ValueError):
    """Operands live over different groups or fields."""


class NotASubgroup(SemisimpError, ValueError):
    pass


class NotAPGroup(SemisimpError, ValueError):
    pass


class InvalidModule(SemisimpError, ValueError):
    """Generator matrices fail to define a representation."""


# decomp
class IndecomposabilityUnresolved(SemisimpError):
    pass


class DimCapExceeded(SemisimpError):
    pass


class IsoUndecided(SemisimpError):
    pass


# ssimp
class BudgetExceeded(SemisimpError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotUnique(SemisimpError):
    pass


class NegligibleInput(SemisimpError, ValueError):
    pass


# basedring
class Truncated(SemisimpError):
    pass


class NotCommutative(SemisimpError):
    pass


class ClusteringAmbiguous(SemisimpError):
    pass


class SearchTimeout(SemisimpError):
    pass


# qcase
class GenericOrder(SemisimpError, ValueError):
    pass
