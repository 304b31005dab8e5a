"""Exception types raised by the gva package."""


class GvaError(Exception):
    """Base class for every error raised by this package."""


class UnboundVariable(GvaError):
    def __init__(self, variables):
        self.variables = frozenset(variables)
        names = ", ".join(sorted(v.name for v in self.variables))
        super().__init__(f"unbound variable(s): {names}")


class DomainOverlap(GvaError):
    pass


class PreconditionViolation(GvaError):
    pass


class PoolMissingInput(GvaError):
    pass


class NondeterministicFa(GvaError):
    pass


class NotWinning(GvaError):
    pass


class DslSyntaxError(GvaError):
    """Raised by the automaton parser; carries a 1-based line and column."""

    def __init__(self, line, col, expected, found=""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        where = f" but found {found!r}" if found else ""
        super().__init__(f"{line}:{col}: expected {expected}{where}")
