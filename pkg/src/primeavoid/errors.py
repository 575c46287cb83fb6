"""Exception types shared across the library."""


class CapacityError(Exception):
    """Raised when there are too few covering primes for the offsets."""

    def __init__(self, message, needed=None, available=None):
        super().__init__(message)
        self.needed = needed
        self.available = available


class SearchExhausted(Exception):
    """Raised when a progression search hits its step budget."""

    def __init__(self, message, steps=0, tests=0):
        super().__init__(message)
        self.steps = steps
        self.tests = tests


class DocumentError(Exception):
    """Raised when a certificate document cannot be parsed."""
