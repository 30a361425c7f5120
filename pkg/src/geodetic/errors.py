"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GeodeticError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDigraph(GeodeticError, ValueError):
    """Raised when arcs violate the digraph invariants."""


class SelfLoop(InvalidDigraph):
    def __init__(self, u: int):
        super().__init__(f"SelfLoop({u})")
        self.u = u


class DuplicateArc(InvalidDigraph):
    def __init__(self, u: int, v: int):
        super().__init__(f"DuplicateArc({u},{v})")
        self.u, self.v = u, v


class IndexOutOfRange(InvalidDigraph, IndexError):
    def __init__(self, value: int, n: int):
        super().__init__(f"IndexOutOfRange({value}, n={n})")
        self.value, self.n = value, n


class NotATree(GeodeticError):
    """The underlying simple graph is not a tree."""


class HasTwoCycle(GeodeticError):
    def __init__(self, u: int, v: int):
        super().__init__(f"HasTwoCycle({u},{v})")
        self.u, self.v = u, v


class PreconditionViolated(GeodeticError):
    pass


class InvalidInstance(GeodeticError, ValueError):
    pass


class InfeasibleParameters(GeodeticError, ValueError):
    pass


class StructuralMismatch(GeodeticError):
    def __init__(self, check: str, detail: str = ""):
        msg = f"StructuralMismatch({check})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.check, self.detail = check, detail


class ParseError(GeodeticError, ValueError):
    """Malformed instance file. ``context`` names the offending field or line."""

    def __init__(self, message: str, context: str = ""):
        super().__init__(f"ParseError({context}): {message}" if context else f"ParseError: {message}")
        self.context = context
