"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates a documented precondition."""


class Graph6Error(ValueError):
    """Malformed graph6 record."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CapacityError(ValueError):
    """Exhaustive enumeration or simulation would exceed the size guard."""


class OptimizationError(RuntimeError):
    """The objective raised during an optimizer iteration."""

    def __init__(self, iteration: int, cause: BaseException):
        super().__init__(f"objective failed at iteration {iteration}: {cause}")
        self.iteration = iteration
