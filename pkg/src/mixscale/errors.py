"""Exception hierarchy shared by every module."""


class MixscaleError(Exception):
    """Base class for all package errors."""


class ValidationError(MixscaleError, ValueError):
    """An argument violates an operation's precondition."""


class MeanNotZeroError(ValidationError):
    """A negative-order Sobolev norm was requested for a field with nonzero mean."""


class FieldFormatError(MixscaleError, ValueError):
    """A MIXFIELD file could not be parsed."""


class MalformedHeaderError(FieldFormatError):
    pass


class NonFiniteEntryError(FieldFormatError):
    pass


class ShapeMismatchError(FieldFormatError):
    pass
