"""Exception types shared across the package."""


class TimexError(ValueError):
    """Base class for every error raised by timexnorm."""


class MalformedDct(TimexError):
    pass


class MalformedValue(TimexError):
    pass


class RangeExceeded(TimexError):
    pass


class UnknownFestivity(TimexError, KeyError):
    pass


class CatalogError(TimexError):
    """Raised when a rule catalog fails validation."""

    def __init__(self, findings):
        self.findings = list(findings)
        lines = "; ".join(str(f) for f in self.findings)
        super().__init__(f"invalid rule catalog: {lines}")


class FormatError(TimexError):
    """A corpus line that does not have the expected shape."""

    def __init__(self, line_no, message, line=""):
        self.line_no = line_no
        self.message = message
        self.line = line
        super().__init__(f"line {line_no}: {message}")


class XmlError(TimexError):
    pass


class LengthMismatch(TimexError):
    pass


class SizeExceeded(TimexError):
    pass
