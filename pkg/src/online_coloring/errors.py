"""Exception hierarchy shared by all modules."""


class ColoringError(Exception):
    """Base class for every error raised by this package."""


class GraphValidationError(ColoringError):
    """A graph violates the simple-graph invariants."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class NotBipartiteError(ColoringError):
    """The input contains an odd cycle; ``cycle`` lists its vertices in order."""

    def __init__(self, cycle, message=None):
        self.cycle = tuple(cycle)
        super().__init__(message or f"graph is not bipartite: odd cycle {self.cycle}")


class ParameterError(ColoringError, ValueError):
    """Invalid parameter combination for a generator or sampler."""


class DomainError(ColoringError, ValueError):
    """A bound was evaluated outside the range where it is stated."""


class ConfigurationError(ColoringError):
    """An algorithm was run without the inputs it requires."""


class ProtocolViolation(ColoringError):
    """An online algorithm returned an illegal color."""

    def __init__(self, step, vertex, color, reason):
        self.step = step
        self.vertex = vertex
        self.color = color
        super().__init__(f"step {step}: vertex {vertex} got color {color!r}: {reason}")


class EdgeListFormatError(ColoringError, ValueError):
    """Malformed edge-list text; ``line`` is 1-based."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
