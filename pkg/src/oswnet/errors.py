class OswError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(OswError, ValueError):
    """An input parameter is outside its valid range."""


class UnknownVertexError(OswError, KeyError):
    """A coordinate triple is not a vertex of the graph in question."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
