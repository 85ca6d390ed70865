"""Exception types shared across the library."""


class MacaulayLibError(Exception):
    """Base class for all library errors."""


class PosetError(MacaulayLibError):
    """Invalid poset construction or poset argument."""


class OrderError(MacaulayLibError):
    """Invalid order construction or order argument."""


class RingError(MacaulayLibError):
    """Invalid ring specification or a failed ring build."""


class ResourceLimitError(MacaulayLibError):
    """A configured resource cap was exceeded."""


class SearchBudgetExceeded(MacaulayLibError):
    """Order search exhausted its node budget before reaching a verdict."""
