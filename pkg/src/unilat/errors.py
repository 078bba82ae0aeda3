"""Exception hierarchy shared by the library and the command line."""


class LatticeError(ValueError):
    """A domain precondition was violated (exit code 1 on the command line)."""


class InputError(LatticeError):
    """Malformed input: bad shapes, non-integer entries, composite moduli."""


class ParseError(InputError):
    """A text file could not be parsed (exit code 2)."""


class BudgetExceeded(LatticeError):
    """An enumeration hit its node cap. Never silently truncated (exit code 3)."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes
