"""clusterdiam: diameter approximation for weighted graphs by progressive
cluster growing, with a delta-stepping SSSP baseline and round/work
accounting for benchmark comparisons."""

from .baseline import (
    SsspResult,
    TuneResult,
    delta_stepping,
    iterated_sssp_lower,
    sssp_diameter_upper,
    tune_delta,
)
from .clustering import ClusteringResult, cluster, cluster2
from .diameter import (
    DiameterEstimate,
    QuotientGraph,
    approximate_diameter,
    build_quotient,
    default_tau,
    quotient_diameter,
)
from .engine import RunMetrics, StepBudget
from .errors import (
    CacheError,
    ClusterdiamError,
    ConsistencyError,
    ParseError,
    SizeLimitError,
    ValidationError,
)
from .generators import generate_mesh, generate_rmat, generate_roads_product
from .graph import Graph, WeightModel, assign_weights, build_graph, connected_components
from .graphio import load_graph_file, save_graph_file
from .oracle import (
    OracleReport,
    dijkstra,
    exact_diameter,
    hop_radius,
    optimal_cluster_radius,
)
from .rng import Rng

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Graph",
    "WeightModel",
    "Rng",
    "RunMetrics",
    "StepBudget",
    "ClusteringResult",
    "DiameterEstimate",
    "QuotientGraph",
    "SsspResult",
    "TuneResult",
    "build_graph",
    "assign_weights",
    "connected_components",
    "generate_mesh",
    "generate_rmat",
    "generate_roads_product",
    "load_graph_file",
    "save_graph_file",
    "cluster",
    "cluster2",
    "approximate_diameter",
    "build_quotient",
    "quotient_diameter",
    "default_tau",
    "delta_stepping",
    "tune_delta",
    "sssp_diameter_upper",
    "iterated_sssp_lower",
    "OracleReport",
    "dijkstra",
    "exact_diameter",
    "optimal_cluster_radius",
    "hop_radius",
    "ClusterdiamError",
    "ValidationError",
    "ParseError",
    "SizeLimitError",
    "ConsistencyError",
    "CacheError",
]
