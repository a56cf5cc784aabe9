"""Exception types shared across the package."""


class ResourceLimitError(ValueError):
    """Raised when a request exceeds a documented size or memory cap."""
