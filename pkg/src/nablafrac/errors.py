"""Exception hierarchy.

Every error raised on purpose by the library derives from ``NablaError``;
the CLI maps input errors (``ValueError`` subclasses) onto exit code 2 and
runtime failures (``RuntimeError`` subclasses) onto exit code 1.
"""


class NablaError(Exception):
    pass


class PoleError(NablaError, ValueError):
    """Argument sits on a pole of the gamma function."""


class DomainTooSmall(NablaError, ValueError):
    pass


class BaseMismatch(NablaError, ValueError):
    """Grid function is not based where the operator expects it."""


class IntegerOrderWithDirectMethod(NablaError, ValueError):
    pass


class InvalidOrder(NablaError, ValueError):
    pass


class InvalidParams(NablaError, ValueError):
    pass


class InvalidSpec(NablaError, ValueError):
    pass


class ShapeMismatch(NablaError, ValueError):
    pass


class ParseError(NablaError, ValueError):
    pass


class SolverFailure(NablaError, RuntimeError):
    pass


class TruncationError(NablaError, RuntimeError):
    """Series did not reach its truncation certificate within the term budget."""
