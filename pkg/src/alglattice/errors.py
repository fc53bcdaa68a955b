"""Exception types raised across the package.

Each class name matches the diagnostic tag printed by the CLI.
"""


class AlgLatticeError(ValueError):
    """Base class for validation-type failures (CLI exit code 2)."""


class RankDeficient(AlgLatticeError):
    pass


class Singular(AlgLatticeError):
    pass


class NotPosDef(AlgLatticeError):
    pass


class DegreeTooLarge(AlgLatticeError):
    pass


class Reducible(AlgLatticeError):
    pass


class NotTotallyRamified(AlgLatticeError):
    pass


class ResidueDegreeNotOne(AlgLatticeError):
    pass


class NotCMField(AlgLatticeError):
    pass


class NotFound(AlgLatticeError):
    pass


class BudgetExceeded(AlgLatticeError):
    pass


class NotInLattice(AlgLatticeError):
    pass


class RegionTooLarge(BudgetExceeded):
    pass


class ConstellationTooLarge(BudgetExceeded):
    pass


class TotallyRealOnly(AlgLatticeError):
    pass


class InconsistencyError(RuntimeError):
    """An identity that must hold by construction failed (a bug, CLI exit code 1)."""


class IntegralityWarning(UserWarning):
    """alpha = 1/p requested for a code that is not self-orthogonal."""
