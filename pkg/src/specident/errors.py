class ShapeError(ValueError):
    """Matrix or partition dimensions do not fit the operation."""


class ContractError(ValueError):
    """An input violates an operation's precondition."""


class SizeGuardError(ValueError):
    """The input exceeds a brute-force size cap."""


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class NoUniqueSolutionError(ValueError):
    """The coefficient matrix of a linear system is rank deficient."""


class InconsistentSystemError(ValueError):
    """A linear system has no solution."""
