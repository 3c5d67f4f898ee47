"""Exception hierarchy shared by all fradeco modules."""


class FradecoError(Exception):
    """Base class for all package errors."""


class Indeterminate(FradecoError):
    """A numerical rank decision had no clear singular-value gap."""


class SamplingFailed(FradecoError):
    pass


class ZeroColumn(FradecoError, ValueError):
    pass


class NotUnitQuaternion(FradecoError, ValueError):
    pass


class UnsupportedR(FradecoError, ValueError):
    pass


class OrderTooSmall(FradecoError, ValueError):
    pass


class NotRankDeficient(FradecoError):
    """The matrix M_r has full rank, so the tensor has no frame decomposition of length r."""


class SingularPoint(FradecoError):
    """M_r has rank below r - 2; the tensor lies on the singular locus."""


class RepeatedRoots(FradecoError):
    pass


class DecompositionFailed(FradecoError):
    pass


class ZeroGradient(FradecoError):
    pass


class NonConvergence(FradecoError):
    pass


class FullRank(FradecoError):
    pass


class RankTooLow(FradecoError):
    pass


class NotFound(FradecoError):
    pass


class UnknownEquation(FradecoError, KeyError):
    pass


class ShapeMismatch(FradecoError, ValueError):
    pass


class BudgetExceeded(FradecoError):
    pass
