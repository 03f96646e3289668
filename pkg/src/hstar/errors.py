"""Exception and warning types raised across the package."""


class HstarError(Exception):
    """Base class for all errors raised by hstar."""


class ParseError(HstarError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ZeroAdjacencyDegree(HstarError, ValueError):
    """A normalized matrix was requested for a vertex with no neighbours."""

    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has zero adjacency degree")


class NoConvergence(HstarError, ArithmeticError):
    def __init__(self, iterations: int, residual: float | None = None):
        self.iterations = iterations
        self.residual = residual
        msg = f"eigensolver did not converge after {iterations} iterations"
        if residual is not None:
            msg += f" (residual {residual:.3e})"
        super().__init__(msg)


class Disconnected(HstarError, ValueError):
    """Laplacian has a numerically repeated zero eigenvalue."""

    def __init__(self, zero_multiplicity: int):
        self.zero_multiplicity = zero_multiplicity
        super().__init__(
            f"hypergraph is disconnected ({zero_multiplicity} zero Laplacian eigenvalues); "
            "partition each component separately"
        )


class DegenerateFiedler(UserWarning):
    """The Fiedler eigenvalue is repeated, so the Fiedler vector is not unique."""


class ConnectivityWarning(UserWarning):
    pass


class OverlappingStars(UserWarning):
    pass


class UnbalancedWeight(HstarError, ValueError):
    pass


class InfeasibleProfile(HstarError, ValueError):
    pass


class InvalidPlan(HstarError, ValueError):
    pass


class NotUniform(InvalidPlan):
    pass


class DimensionMismatch(HstarError, ValueError):
    pass
