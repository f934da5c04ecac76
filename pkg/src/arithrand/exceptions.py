"""Exception types shared across the package."""


class CapacityError(ValueError):
    """A request exceeds a sieve, table or enumeration capacity."""


class BudgetError(CapacityError):
    """An enumeration would exceed its work budget.

    ``required`` holds the amount of work the request needs.
    """

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class ConstructionOverflow(ValueError):
    """A proof construction would index outside its truth table."""


class ConditionViolation(ValueError):
    """An input fails a structural hypothesis; ``witness`` locates the failure."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
