"""Exception types raised by the library."""


class SemistabError(Exception):
    """Base class for all library errors."""


class PreconditionError(SemistabError, ValueError):
    """An input violates a documented hypothesis of the operation."""


class RankDeficiencyError(PreconditionError):
    pass


class CapExceededError(SemistabError):
    """Group closure grew past the configured cap (suspected infinite group)."""


class BudgetExceededError(SemistabError):
    pass


class PrecisionError(SemistabError):
    """The working precision ell^k was exhausted before the computation finished."""
