"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """A mathematical hypothesis of the requested operation is not satisfied."""


class ParseError(ValueError):
    """A quiver/representation text file is malformed."""
