"""Exception hierarchy shared by the library and the CLI exit codes."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ShapeError(DomainError):
    """Rank or degree of an input does not match what the operation expects."""


class SchemaError(ValueError):
    """Serialized input does not conform to the expected JSON layout."""
