"""Exception types shared across the package."""


class SumnetError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeModulus(SumnetError):
    """Field construction was attempted with a composite or invalid modulus."""


class DivisionByZero(SumnetError, ZeroDivisionError):
    """Multiplicative inverse of zero was requested."""


class DimensionMismatch(SumnetError, ValueError):
    """Matrix or vector operands do not conform."""


class GraphError(SumnetError):
    """Base class for seed-graph validation failures."""


class ParseError(GraphError):
    """Edge-list text is malformed."""


class NotSimple(GraphError):
    """Graph has a self loop or a duplicate edge."""


class Disconnected(GraphError):
    """Graph is not connected."""


class IsTree(GraphError):
    """Graph has fewer edges than vertices, so it contains no cycle."""


class OddDegreeVertex(GraphError):
    """A closed trail through every edge needs all degrees even."""


class InvalidCycle(SumnetError):
    """Supplied cycle is not a chordless minimum-length cycle of the seed."""


class NotRegular(SumnetError):
    """Closed-form assignment for regular graphs applied to a non-regular graph."""


class NotBiregular(SumnetError):
    """Closed-form assignment for biregular bipartite graphs does not apply."""


class MissingVariable(SumnetError):
    """An assignment lacks a value for some edge endpoint."""


class InfeasibleAssignment(SumnetError):
    """Code synthesis was handed an assignment that violates its constraints."""


class CharacteristicMismatch(SumnetError):
    """A fixture code was requested over a field it is not designed for."""


class StateSpaceTooLarge(SumnetError):
    """Exhaustive verification would enumerate more states than the guard allows."""


class NonLinearPlan(SumnetError):
    """A decoding plan contains a step the algebraic verifier cannot compose."""
