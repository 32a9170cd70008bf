"""Maximum matchings in 1-planar drawings: drawings, saturation, patches and extremal families."""

from __future__ import annotations

from .drawing import (
    Cell,
    Diagnostics,
    Drawing,
    DrawingError,
    Embedding,
    components_minus,
    has_all_kite_edges,
    is_three_connected,
    kite_edge_status,
    parse_drawing,
    serialize,
    validate,
)
from .generators import (
    GeneratedInstance,
    GeneratorError,
    apex_pairing,
    attach_triangle,
    bipyramid,
    face_coloring,
    family,
    insert_k4,
    insert_k4x,
    insert_k6,
)
from .matching import (
    DeficiencyWitness,
    Graph,
    MatchingCertificate,
    MatchingError,
    brute_force_deficiency,
    check_theorem_bound,
    matching_number,
    max_matching,
    verify_witness,
)
from .patches import (
    GammaS,
    Patch,
    PatchDecomposition,
    PatchError,
    WeightAssignment,
    build_gamma_s,
    check_weight_lower_bounds,
    compute_weights,
    covering_checks,
    decompose_patches,
    deficiency_bound,
    region_structure,
    small_patch_shape,
)
from .saturation import (
    SaturationError,
    check_proper_cell,
    check_saturation,
    enumerate_insertions,
    is_simple_saturated,
    triangulate,
)

__version__ = "0.1.0"
