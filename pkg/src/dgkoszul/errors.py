"""Shared exception types."""


class NotAComplexError(Exception):
    """Boundaries are not contained in cycles (d^2 != 0 somewhere)."""


class UnboundedWindowError(Exception):
    """A construction needed a bounded window and none was available."""


class WindowNotCertifiedError(Exception):
    """The requested window cannot be certified against truncation effects."""


class OverflowAccessError(Exception):
    """A product beyond the declared truncation bound was requested."""


class CharacteristicUnsupportedError(Exception):
    """The builder requires a field of characteristic zero."""


class NotATwistingCochainError(Exception):
    """A twisted differential failed to square to zero."""


class MixedSidesError(Exception):
    """Brace operands live on different sides or over different structures."""


class StructureParseError(Exception):
    """Structure file rejected; carries line and column of the offence."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
