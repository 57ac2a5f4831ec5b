"""Exception types shared across the package.

The command line maps these onto exit codes, so library code should raise
the most specific one that applies rather than a bare ValueError.
"""


class FormatError(ValueError):
    """A file or config could not be parsed.  Carries an optional line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedError(ValueError):
    """A request outside the supported surface (bad name, system, p, ...)."""


class InfeasibleError(ValueError):
    """A decomposition problem with no feasible point for the given chain."""


class NumericalError(RuntimeError):
    """A numerical routine failed (singular system, eigensolver breakdown)."""
