"""Exception hierarchy shared by every topo_sensing module."""


class TopoSensingError(Exception):
    """Base class for all errors raised by the toolkit."""


# ---------- linear algebra ----------

class NonHermitianInput(TopoSensingError, ValueError):
    pass


class ConvergenceFailure(TopoSensingError):
    pass


class InvalidOccupation(TopoSensingError, ValueError):
    pass


# ---------- model construction ----------

class InvalidSize(TopoSensingError, ValueError):
    pass


class InvalidParams(TopoSensingError, ValueError):
    pass


# ---------- estimation ----------

class NegativeResult(TopoSensingError):
    pass


class DegenerateDistribution(TopoSensingError, ValueError):
    pass


class StateCrossing(TopoSensingError):
    pass


class ShapeMismatch(TopoSensingError, ValueError):
    pass


# ---------- edge states ----------

class InvalidZ(TopoSensingError, ValueError):
    pass


class InvalidR(TopoSensingError, ValueError):
    pass


class OutsideTopologicalPhase(TopoSensingError, ValueError):
    pass


class NoGapIsolation(TopoSensingError):
    pass


class NoLowerBand(TopoSensingError):
    pass


class NonMonotonic(TopoSensingError):
    pass


# ---------- many-body ----------

class DimensionMismatch(TopoSensingError, ValueError):
    pass


class NotAProjector(TopoSensingError, ValueError):
    pass


class AllExcluded(TopoSensingError):
    pass


class OddL(TopoSensingError, ValueError):
    pass


class AtCriticality(TopoSensingError, ValueError):
    pass


class GaplessInput(TopoSensingError, ValueError):
    pass


# ---------- fitting / estimation ----------

class IllConditioned(TopoSensingError):
    pass


class FlatLikelihood(TopoSensingError):
    pass


# ---------- CLI ----------

class ConfigError(TopoSensingError, ValueError):
    pass
