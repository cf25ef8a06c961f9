"""Shared exception types."""


class ResourceCapError(RuntimeError):
    """A configured enumeration or size cap would be exceeded."""
