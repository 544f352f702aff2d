"""Exception hierarchy shared by all modules."""


class ApolarError(Exception):
    """Base class for every error raised by :mod:`apolar`."""


class FieldError(ApolarError, ValueError):
    """Invalid field specification or a value that does not belong to the field."""


class DimensionMismatchError(ApolarError, ValueError):
    pass


class ParseError(ApolarError, ValueError):
    """Base class for errors while reading a form from text."""


class FormSyntaxError(ParseError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InhomogeneousFormError(ParseError):
    def __init__(self, degrees):
        degrees = sorted(set(degrees))
        super().__init__(
            "form is not homogeneous: terms of degrees " + ", ".join(map(str, degrees))
        )
        self.degrees = degrees


class VariableIndexError(ParseError):
    pass


class ZeroFormError(ParseError):
    """The zero polynomial was given where a nonzero form is required."""


class ActionCharacteristicError(ApolarError, ValueError):
    """Differentiation was requested in a characteristic where it degenerates."""


class DependentFormsError(ApolarError, ValueError):
    pass


class OverlapMismatchError(ApolarError, ArithmeticError):
    """The two independent computations of the overlap dimension disagree."""


class InsufficientFieldError(ApolarError, ValueError):
    pass


class ConfigError(ApolarError, ValueError):
    pass
