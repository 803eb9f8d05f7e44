from __future__ import annotations


class ProxlatError(ValueError):
    """Base class for all errors raised by proxlat."""


class ParseError(ProxlatError):
    """Malformed input text. Carries the location when it is known."""

    def __init__(self, message: str, *, path=None, line=None, token=None):
        self.path = path
        self.line = line
        self.token = token
        super().__init__(message)

    def __str__(self):
        msg = super().__str__()
        where = []
        if self.path is not None:
            where.append(str(self.path))
        if self.line is not None:
            where.append(f"line {self.line}")
        if where:
            return f"{':'.join(where)}: {msg}"
        return msg


class ValidationError(ProxlatError):
    """A structure failed its defining inequalities.

    ``violations`` lists every failing instance, each a :class:`Violation`.
    """

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)

    def report(self) -> str:
        lines = [str(self)]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


class UnsupportedFragmentError(ProxlatError):
    """Operation only defined for {0,1}-valued inputs."""


class SizeError(ProxlatError):
    """Brute-force enumeration would exceed the configured bound."""
