"""
Exception hierarchy shared by every toolkit module.

The command-line frontend maps these onto its exit-code contract:
usage / input problems exit 2, guard violations exit 3.
"""


class ToolkitError(ValueError):
    """Base class for all rejections raised by the toolkit."""


class GraphError(ToolkitError):
    """A vertex or vertex set is not part of the graph, or the graph is malformed."""


class GraphFormatError(ToolkitError):
    """An edge-list, name table or JSON document could not be parsed."""


class NameGrammarError(GraphFormatError):
    """Vertex-name text does not follow the x<base>^a.b / u<level>^a.b grammar."""


class ColoringError(ToolkitError):
    """A colouring or partition is partial, out of range or breaks its own parameters."""


class PreconditionError(ToolkitError):
    """A documented precondition of an operation does not hold."""


class GuardExceededError(ToolkitError):
    """An instance is larger than the configured size guard allows."""


class ConfigError(ToolkitError):
    """A settings file named explicitly could not be found."""
