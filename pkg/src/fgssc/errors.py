"""Exception hierarchy shared across the package and mapped to CLI exit codes."""


class ClusteringError(Exception):
    """Base class for all package-specific failures."""


class DegenerateData(ClusteringError):
    """Data-driven parameter formulas are undefined (zero column norms / inner products)."""


class SingularSystem(ClusteringError):
    """The A-step linear system is numerically singular."""


class MaskExhausted(ClusteringError):
    """Greedy pruning removed more of the trusted set than the configured budget."""


class DisconnectedDegenerate(ClusteringError):
    """Affinity graph has more isolated vertices than the cluster budget allows."""


class LengthMismatch(ClusteringError):
    """Label vectors of different lengths were compared."""


class ParseError(ClusteringError):
    """An input file could not be parsed."""


class DimensionMismatch(ClusteringError):
    """Shapes of related inputs (matrix / mask / header) disagree."""


class InfeasibleAssignment(ClusteringError):
    """Random point-to-subspace assignment failed the per-subspace count constraint."""


class UnknownModel(ClusteringError):
    """Requested parameter schedule or synthetic model is not defined."""


class InconsistentResolution(ClusteringError):
    """Face images disagree in resolution or are not divisible by the target."""
