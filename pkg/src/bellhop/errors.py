"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An operation was asked to exceed its configured enumeration/size limit."""


class ExpressionParseError(ValueError):
    """Input text could not be parsed; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class QuadratureError(RuntimeError):
    """Quadrature failed to meet the requested tolerance."""

    def __init__(self, message: str, value: float, achieved: float):
        super().__init__(f"{message}: achieved error estimate {achieved:.3e}")
        self.value = value
        self.achieved = achieved
