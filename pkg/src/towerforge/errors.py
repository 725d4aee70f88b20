"""Exception types shared across the package."""


class TowerforgeError(Exception):
    """Base class for all towerforge-specific errors."""


class BudgetExceededError(TowerforgeError):
    """A configured compute budget (conductor bound, iteration cap) was exhausted."""


class FactorizationError(BudgetExceededError):
    """Complete factorization could not be certified within the iteration budget."""


class IntegralityError(TowerforgeError):
    """An exact product that must be a rational integer came out with a denominator."""


class PrecisionError(TowerforgeError):
    """A truncated local computation was asked to resolve more than it carries."""


class CofactorError(TowerforgeError):
    """A cofactor failed the p-th-power-of-a-unit precondition."""


class CacheMismatchError(TowerforgeError):
    """A cached value disagreed with its recomputation; the cache is never authoritative."""
