"""Exception hierarchy shared by all tropmod modules."""

from __future__ import annotations


class TropmodError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(TropmodError, ValueError):
    """A graph description violates a structural invariant."""


class DuplicateLegLabel(InvalidGraph):
    pass


class BadLegLabels(InvalidGraph):
    """Leg labels are not exactly ``{1, ..., n}``."""


class Disconnected(InvalidGraph):
    pass


class NegativeWeight(InvalidGraph):
    pass


class DanglingEndpoint(InvalidGraph):
    """An edge or leg refers to a vertex that was never declared."""


class UnknownVertex(TropmodError, KeyError):
    pass


class UnknownEdge(TropmodError, KeyError):
    pass


class NotStable(TropmodError, ValueError):
    pass


class DegenerateSignature(TropmodError, ValueError):
    """Raised when ``2g - 2 + n < 1``."""


class NotTrivalent(TropmodError, ValueError):
    pass


class NoPath(TropmodError, RuntimeError):
    """No zig-zag exists; for valid input this means the enumeration is incomplete."""


class InvalidCurve(TropmodError, ValueError):
    """Bad length data on a tropical curve or cone point."""


class BadMarking(TropmodError, ValueError):
    pass


class ParseError(TropmodError, ValueError):
    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
