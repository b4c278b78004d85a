"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live over different coordinate counts, models, or degrees."""


class DomainError(ValueError):
    """An operator was applied outside its domain (bad power, uncertified
    input, non-vertical form, arity shortfall, ...)."""


class ConstructionError(ValueError):
    """A finite graded algebra failed its construction-time checks."""
