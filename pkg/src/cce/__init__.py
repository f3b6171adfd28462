"""Connection center evolution (CCE) clustering."""

__version__ = "0.1.0"

from .analysis import Platform, detect_platforms, skipped_counts, suggest_counts
from .errors import CCEError, InputError, ParameterError, ValidationError
from .evolution import (
    ClusterSnapshot,
    EvolutionTrace,
    PowerState,
    StopReason,
    assign_points,
    filter_noise,
    find_centers,
    iter_evolution,
    power_step,
    run_evolution,
)
from .similarity import (
    PointSet,
    RouteNetwork,
    SimilarityMatrix,
    auto_sigma,
    from_matrix,
    from_routes,
    gaussian_kernel,
    njw_normalize,
)
from .spectral import (
    EigenEstimate,
    TheoremReport,
    diag_sqrt_direction,
    principal_eigenvector,
    verify_theorem,
)
