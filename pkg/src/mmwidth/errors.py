"""Exception types shared across the package."""


class MMWidthError(Exception):
    """Base class for all package errors."""


class InvalidInputError(MMWidthError, ValueError):
    """Malformed or out-of-domain input."""


class CapExceededError(MMWidthError):
    """An exact solver or enumerator was asked to exceed its resource cap."""


class ContradictionError(MMWidthError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class UnsupportedCaseError(InvalidInputError):
    """Valid input that falls in an explicitly unsupported degenerate case."""


class SplitValidationError(InvalidInputError):
    """A (clique, independent) candidate pair failed certification."""


class NotAPartitionError(SplitValidationError):
    """Clique and independent lists do not partition the vertex set."""


class CliqueViolationError(SplitValidationError):
    def __init__(self, u: int, v: int):
        super().__init__(f"clique vertices {u} and {v} are not adjacent")
        self.pair = (u, v)


class IndependenceViolationError(SplitValidationError):
    def __init__(self, u: int, v: int):
        super().__init__(f"independent vertices {u} and {v} are adjacent")
        self.pair = (u, v)
