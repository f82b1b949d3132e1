"""Exception hierarchy shared by every module."""


class GTorusError(Exception):
    """Base class for all errors raised by the package."""


class RankDeficient(GTorusError):
    pass


class NotInChart(GTorusError):
    pass


class ZeroVector(GTorusError):
    pass


class NotAdmissible(GTorusError):
    pass


class NotAComplex(GTorusError):
    pass


class UnknownStratum(GTorusError):
    pass


class InputError(GTorusError):
    """Malformed user input (JSON, flags). Carries an optional location."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(GTorusError):
    pass
