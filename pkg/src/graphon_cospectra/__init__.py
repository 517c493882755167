"""Exact spectral and homomorphism-density analysis of step graphons."""

from .cospectral import (
    DiscriminationReport,
    InapproxCertificate,
    discriminate,
    inapprox_check,
    is_cospectral,
    profiles_match,
    theorem42_demo,
    verify_gap_formula,
)
from .cutnorm import CutNormCertificate, cut_distance_upper, cut_norm_exact, mean_gap_lower_bound
from .densities import (
    CycleProfile,
    cycle_density_spectral,
    cycle_profile,
    density_direct,
    graph_density_consistency,
    hom_count,
)
from .errors import EigensolverError, GraphonError, GuardExceeded, Refusal, SpectraMismatch
from .graphon import (
    Partition,
    SimpleGraph,
    StepGraphon,
    common_refinement,
    graph_to_graphon,
    l1_norm,
    l2_norm_sq,
)
from .sampling import SampleSpec, convergence_report, sample_graph
from .spectral import (
    Intertwiner,
    SpectralDecomposition,
    Spectrum,
    build_intertwiner,
    decompose,
    parseval_residual,
    spectra_equal,
)

__version__ = "0.1.0"
