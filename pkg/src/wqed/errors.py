"""Exception hierarchy shared across the package."""


class WQEDError(Exception):
    """Base class for all errors raised by wqed."""


class ParameterError(WQEDError, ValueError):
    """A physical parameter is outside its allowed domain."""


class TruncationError(WQEDError, RuntimeError):
    """A truncated Hilbert space is too small for the requested accuracy."""


class NumericalError(WQEDError, RuntimeError):
    """A linear-algebra or integration step failed or lost accuracy."""


class AmbiguousSteadyStateError(NumericalError):
    """The generator has more than one stationary state."""


class ZeroOccupationError(NumericalError, ZeroDivisionError):
    """A correlation function was normalised by a vanishing photon flux."""


class UnsupportedCaseError(WQEDError, NotImplementedError):
    """The requested closed form or field combination is not available."""


class ConfigError(WQEDError, ValueError):
    """Base class for run-configuration problems."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class UnknownKeyError(ConfigError):
    pass


class MissingKeyError(ConfigError):
    pass


class UnitSuffixError(ConfigError):
    pass


class MalformedNumberError(ConfigError):
    pass
