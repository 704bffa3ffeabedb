"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument violates an operation's documented precondition."""


class CapacityError(DomainError):
    """A register would exceed the 16-qubit simulation cap."""


class FormatError(ValueError):
    """A byte stream is not a valid PGM file.

    Carries the byte offset at which parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
