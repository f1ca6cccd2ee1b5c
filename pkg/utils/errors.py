from typing import Optional


class PowerGraphError(Exception):
    """Base class for every error raised by the utils package"""


class GroupError(PowerGraphError, ValueError):
    pass


class CapExceededError(PowerGraphError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} has size {size}, above the cap of {cap}")
        self.size = size
        self.cap = cap


class SpectrumError(PowerGraphError, ValueError):
    pass


class NonIntegralSpectrumError(SpectrumError):
    pass


class ParseError(PowerGraphError, ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
