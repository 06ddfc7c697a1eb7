"""Exception hierarchy. Every error raised on purpose derives from CoreWalkError."""


class CoreWalkError(Exception):
    pass


class ConfigError(CoreWalkError, ValueError):
    """Inconsistent or out-of-range configuration."""


class ParseError(CoreWalkError, ValueError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyGraphError(CoreWalkError, ValueError):
    pass


class DecompositionError(CoreWalkError, ValueError):
    pass


class EmptyCoreError(CoreWalkError, ValueError):
    pass


class IsolatedShellError(CoreWalkError, RuntimeError):
    """Nodes that cannot be reached from any embedded node during propagation."""

    def __init__(self, nodes, message=None):
        self.nodes = sorted(int(v) for v in nodes)
        shown = ", ".join(map(str, self.nodes[:20]))
        if len(self.nodes) > 20:
            shown += ", ..."
        super().__init__(message or f"{len(self.nodes)} node(s) have no path to the embedded set: [{shown}]")


class TrainingError(CoreWalkError, ValueError):
    pass


class DegenerateTrainingError(TrainingError):
    pass


class SplitError(CoreWalkError, ValueError):
    pass


class FeatureError(CoreWalkError, ValueError):
    pass


class DegeneratePCAError(CoreWalkError, ValueError):
    pass
