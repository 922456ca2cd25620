"""Exceptions shared across the package."""


class ResourceLimitError(RuntimeError):
    """A configured size guard would be exceeded."""
