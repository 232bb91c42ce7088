"""Exact linear algebra for weight filtrations, graded pairings, and
multi-index blowup modules.

Everything is computed over the rationals (optionally Gaussian rationals)
with no floating point anywhere; every verdict comes with a finite witness
or certificate that can be re-checked independently.
"""

from .exact import (
    GaussianRational,
    Matrix,
    PositivityCertificate,
    QuotientPresentation,
    Subspace,
    exp_nilpotent,
    image_of,
    is_positive_definite,
    kernel_of,
    quotient_presentation,
)
from .filtration import (
    Filtration,
    FiltrationCompatibility,
    IndexLattice,
    IteratedGradedMismatch,
    MultiFiltration,
    SubobjectCompatibility,
    compatible_filtrations,
    compatible_subobjects,
    graded_piece,
    iterated_graded,
    total_graded_dimension,
)
from .rees import (
    FlatnessCertificate,
    KoszulComplexData,
    ReesModule,
    RegularityCertificate,
    compatibility_via_flatness,
    is_flat,
    is_regular_sequence,
    koszul_complex,
    koszul_homology,
    rees_of,
)
from .monodromy import (
    CenteredFiltration,
    GradedSumReport,
    IteratedWeightReport,
    NilpotentOperator,
    NonexistenceCertificate,
    RelativeMonodromyResult,
    UndeterminedRelativeFiltration,
    WeightAxiomFailure,
    graded_sum_decomposition,
    jordan_chain_basis,
    mf_property,
    monodromy_filtration,
    relative_monodromy,
    verify_weight_axioms,
)
from .lefschetz import (
    GradedBilinearStructure,
    GradedSpace,
    PolarizationReport,
    PolarizationRouteDisagreement,
    RationalHodgeStructure,
    Sl2Action,
    grading_is_monodromy,
    hodge_typing_check,
    lefschetz_decomposition_check,
    merge_slots,
    polarization_check,
    primitive_parts,
    sl2_complete,
    weil_w,
)
from .nearby import (
    DoubleComplexModel,
    MonodromicModule,
    NilsIsoReport,
    NilssonExtension,
    NilssonFactor,
    nils_iso_check,
    nils_map,
    nilsson_tensor,
    two_path_compare,
)
from .fixtures import (
    TensorJordanFixture,
    VkFixture,
    fixture_Vk,
    fixture_nilsson,
    fixture_summary,
    fixture_tensor_jordan,
)
from .document import (
    Document,
    DocumentError,
    emit_report,
    parse,
    parse_scalar,
    run_task,
    scalar_to_str,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Matrix",
    "PositivityCertificate",
    "QuotientPresentation",
    "Subspace",
    "exp_nilpotent",
    "image_of",
    "is_positive_definite",
    "kernel_of",
    "quotient_presentation",
    "Filtration",
    "FiltrationCompatibility",
    "IndexLattice",
    "IteratedGradedMismatch",
    "MultiFiltration",
    "SubobjectCompatibility",
    "compatible_filtrations",
    "compatible_subobjects",
    "graded_piece",
    "iterated_graded",
    "total_graded_dimension",
    "FlatnessCertificate",
    "KoszulComplexData",
    "ReesModule",
    "RegularityCertificate",
    "compatibility_via_flatness",
    "is_flat",
    "is_regular_sequence",
    "koszul_complex",
    "koszul_homology",
    "rees_of",
    "CenteredFiltration",
    "GradedSumReport",
    "IteratedWeightReport",
    "NilpotentOperator",
    "NonexistenceCertificate",
    "RelativeMonodromyResult",
    "UndeterminedRelativeFiltration",
    "WeightAxiomFailure",
    "graded_sum_decomposition",
    "jordan_chain_basis",
    "mf_property",
    "monodromy_filtration",
    "relative_monodromy",
    "verify_weight_axioms",
    "GradedBilinearStructure",
    "GradedSpace",
    "PolarizationReport",
    "PolarizationRouteDisagreement",
    "RationalHodgeStructure",
    "Sl2Action",
    "grading_is_monodromy",
    "hodge_typing_check",
    "lefschetz_decomposition_check",
    "merge_slots",
    "polarization_check",
    "primitive_parts",
    "sl2_complete",
    "weil_w",
    "DoubleComplexModel",
    "MonodromicModule",
    "NilsIsoReport",
    "NilssonExtension",
    "NilssonFactor",
    "nils_iso_check",
    "nils_map",
    "nilsson_tensor",
    "two_path_compare",
    "TensorJordanFixture",
    "VkFixture",
    "fixture_Vk",
    "fixture_nilsson",
    "fixture_summary",
    "fixture_tensor_jordan",
    "Document",
    "DocumentError",
    "emit_report",
    "parse",
    "parse_scalar",
    "run_task",
    "scalar_to_str",
]
