"""Exception hierarchy shared by the library and the CLI."""


class SoftDressError(Exception):
    """Base class for every error raised by softdress."""


class DomainError(SoftDressError, ValueError):
    """An input violates a physical or mathematical precondition."""


class ContractViolation(SoftDressError, ArithmeticError):
    """A numerical post-condition failed (PSD loss, truncation leakage, ...)."""


class ConfigError(SoftDressError):
    """Base class for run-configuration problems (CLI exit code 2)."""

    kind = "config"

    def __init__(self, message, *, key=None, line=None):
        super().__init__(message)
        self.key = key
        self.line = line

    def as_dict(self):
        return {"kind": self.kind, "key": self.key, "line": self.line, "message": str(self)}


class ConfigSyntaxError(ConfigError):
    kind = "syntax"


class UnknownKeyError(ConfigError):
    kind = "unknown_key"


class BoundViolationError(ConfigError):
    kind = "bound_violation"
