"""Entanglement structure of pure states of N distinguishable particles."""

__version__ = "0.1.0"

from .state_model import (
    Bipartition,
    DensityOperator,
    DimensionError,
    DuplicateIndexError,
    EntanglementError,
    HermiticityError,
    NormalizationError,
    OverlapError,
    ParticleError,
    ParticleSet,
    PartitionError,
    PositivityError,
    ProjectorError,
    PureState,
    ShapeError,
    SubsetError,
    TraceError,
    build_pure_state,
    make_cut,
    state_from_vector,
    validate_density,
)
from .linalg import (
    SchmidtSpectrum,
    numerical_rank,
    purity,
    reduce,
    reduce_density,
    schmidt,
    tensor_product,
    tensor_pure,
    von_neumann_entropy,
)
from .analysis import (
    AnalysisTolerances,
    Category,
    ClassLabel,
    EntanglementReport,
    PairwiseGraph,
    Partiality,
    PartialityFlag,
    Partition,
    UtterWitness,
    classify,
    factor_pure,
    finest_partition,
    full_report,
    is_product_bipartition,
    is_product_density,
    is_rank_one_reduced,
    is_utterly_entangled,
    pairwise_graph,
    partiality,
)
from .measurement import Projector, basis_projector, project, vector_projector
from .corpus import (
    SpinPositionEncoding,
    state_double_star,
    state_ghz_positions,
    state_star,
)

__all__ = [
    "AnalysisTolerances",
    "Bipartition",
    "Category",
    "ClassLabel",
    "DensityOperator",
    "DimensionError",
    "DuplicateIndexError",
    "EntanglementError",
    "EntanglementReport",
    "HermiticityError",
    "NormalizationError",
    "OverlapError",
    "PairwiseGraph",
    "Partiality",
    "PartialityFlag",
    "ParticleError",
    "ParticleSet",
    "Partition",
    "PartitionError",
    "PositivityError",
    "Projector",
    "ProjectorError",
    "PureState",
    "SchmidtSpectrum",
    "ShapeError",
    "SpinPositionEncoding",
    "SubsetError",
    "TraceError",
    "UtterWitness",
    "basis_projector",
    "build_pure_state",
    "classify",
    "factor_pure",
    "finest_partition",
    "full_report",
    "is_product_bipartition",
    "is_product_density",
    "is_rank_one_reduced",
    "is_utterly_entangled",
    "make_cut",
    "numerical_rank",
    "pairwise_graph",
    "partiality",
    "project",
    "purity",
    "reduce",
    "reduce_density",
    "schmidt",
    "state_double_star",
    "state_from_vector",
    "state_ghz_positions",
    "state_star",
    "tensor_product",
    "tensor_pure",
    "validate_density",
    "vector_projector",
    "von_neumann_entropy",
]
