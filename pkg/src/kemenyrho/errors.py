"""Exception hierarchy.

Everything raised on bad input derives from :class:`KemenyError` (itself a
``ValueError``), so callers can catch one type. The CLI maps
:class:`UsageError` subclasses to exit code 1 and everything else to 2.
"""


class KemenyError(ValueError):
    pass


class UsageError(KemenyError):
    """Bad configuration or command-line usage."""


class ConfigError(UsageError):
    pass


class SizeError(KemenyError):
    pass


class InvalidValueError(KemenyError):
    pass


class DegenerateInputError(KemenyError):
    """Input has no variation (e.g. every observation tied)."""


class FormatError(KemenyError):
    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class ParseError(KemenyError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column
