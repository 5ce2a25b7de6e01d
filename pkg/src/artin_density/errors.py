"""Exception hierarchy shared by every module."""


class ArtinError(Exception):
    """Base class for errors raised by :mod:`artin_density`."""


class DomainError(ArtinError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ResourceError(ArtinError):
    """A computation would exceed a configured size, precision or time budget."""


class ToleranceError(ResourceError):
    """A certified enclosure cannot be made as narrow as requested."""
