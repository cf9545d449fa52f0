"""Exception types shared across the package.

Every domain failure derives from PosetError so callers (notably the CLI)
can catch one class.  Parser-raised errors carry a 1-based ``line`` number;
the same attribute is attached to semantic errors detected while parsing.
"""


class PosetError(Exception):
    """Base class for all errors raised by this package."""

    line: int | None = None


# --- construction of posets -------------------------------------------------

class DuplicateLabel(PosetError):
    pass


class UnknownLabel(PosetError):
    pass


class CycleDetected(PosetError):
    """The given pairs admit no antisymmetric closure."""


class ZeroSize(PosetError):
    pass


# --- partitions --------------------------------------------------------------

class EmptyBlock(PosetError):
    pass


class OverlappingBlocks(PosetError):
    pass


class IncompleteCover(PosetError):
    pass


class UnknownBlockName(PosetError):
    pass


# --- quasiorders and maps ----------------------------------------------------

class NotAnExtension(PosetError):
    """The quasiorder does not contain the base partial order."""


class MissingAssignment(PosetError):
    pass


class NotOrderPreserving(PosetError):
    pass


class NotSurjective(PosetError):
    pass


# --- search guards and internal checks ---------------------------------------

class BoundExceeded(PosetError):
    """An exhaustive search was requested beyond its configured size guard."""


class InternalInvariantViolation(PosetError):
    """A property that must hold by theorem failed; indicates a library bug."""


class ParseError(PosetError):
    """Malformed input text; ``line`` locates the first offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(message)
        self.line = line
