"""Mixed-volume profiles of polytopes and numerical verification of
difference-body inequalities (Godbersen-type bounds, Rogers-Shephard
identities, the unbalanced difference-body certificate for n = 4, 5).
"""

from .certificate import (
    CertificateResult,
    certificate,
    certificate_grid,
    symmetric_weight_monotonicity,
    verify_certificate_combination,
)
from .constructions import (
    LiftedBodyC,
    LiftedBodyT,
    build_C,
    build_diag_C,
    build_T,
    conv_union,
    diag_projection,
    diag_section,
    polar_sum_body,
    project_T,
    section_T,
    unbalanced_difference_body,
)
from .engine import (
    MixedVolumeProfile,
    blend_volume,
    godbersen_ratios,
    mixed_volume_profile,
    polarization_mixed_volume,
)
from .errors import (
    BadSpec,
    DegenerateInput,
    DegenerateSection,
    DimensionMismatch,
    EmptyIntersection,
    EmptySection,
    GeometryError,
    IllConditioned,
    NumericalFailure,
    OriginNotInterior,
    Unbounded,
    VerificationFailure,
    ZeroScale,
)
from .kernel import (
    AffineSubspace,
    HPolytope,
    VPolytope,
    centroid,
    contains_point,
    convex_hull,
    coordinate_subspace,
    h_to_v,
    intersect,
    load_body,
    minkowski_sum,
    negate,
    polar,
    polar_h,
    project,
    save_body,
    scale,
    section,
    subspace_from_span,
    same_vertex_set,
    translate,
    v_to_h,
    volume,
)
from .reporting import RunConfig, run_sweep
from .verifiers import (
    InequalityReport,
    verify_alexandrov,
    verify_average_corollary,
    verify_lemma_C,
    verify_markov_corollary,
    verify_milman_pajor,
    verify_remark_EL,
    verify_rs_difference,
    verify_secproj,
    verify_strange,
    verify_theorem_sum,
    verify_unbalanced,
)
from .zoo import BodySpec, generate, recenter

__version__ = "0.1.0"
