"""Exception types shared across the package."""


class CodeError(ValueError):
    """A code or permutation does not satisfy an operation's precondition."""


class EnumerationTooLarge(CodeError):
    def __init__(self, dim: int, cap: int):
        self.dim = dim
        self.cap = cap
        super().__init__(f"dimension {dim} too large for exhaustive enumeration (cap {cap})")


class NotInInvariantModule(ValueError):
    """A polynomial failed the exact membership test for the Gleason-type module."""


class VerificationError(RuntimeError):
    """A computed object failed an internal consistency check."""
