"""Exception hierarchy shared across the package."""


class EcographError(Exception):
    """Base class for all package-specific errors."""


class EmptyInput(EcographError):
    """Edge-list input produced no nodes and no edges."""


class ParseError(EcographError):
    """Malformed edge-list or node-list file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InvalidBijection(EcographError):
    """Relabeling map is not a total injection on the graph's nodes."""


class TooSmall(EcographError):
    """Graph does not meet a metric's minimum-size precondition."""


class NoEdges(EcographError):
    """Community detection requires at least one edge."""


class UnassignedNode(EcographError):
    """Community partition leaves a node without a community."""


class DegenerateClub(EcographError):
    """Fewer than two nodes qualify for the rich-club subgraph."""


class MissingField(EcographError):
    """A formula requires a bundle field that is absent."""


class OutOfBound(EcographError):
    """Value lies outside the documented theoretical range."""


class BadK(EcographError):
    """Sweep index k outside [1, 200]."""


class RetryExhausted(EcographError):
    """Generator could not hit the size bounds within the retry budget."""


class BadCorpusShape(EcographError):
    """Effectiveness input is not a complete 1..n ranking series."""


class MissingFamily(EcographError):
    """Corpus directory lacks a requested sweep family."""
