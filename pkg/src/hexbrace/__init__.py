"""hexbrace: hexagon graphs of cubic graphs, safe perfect matchings /
directed cycle double covers, brace machinery, and generation of hexagon
graphs from the 8-vertex ladder by simple augmentations."""

from .graphs import (
    Bipartition,
    CubicWitness,
    DisconnectedError,
    Edge,
    GraphError,
    LabeledGraph,
    Matching,
    NotBipartiteError,
    NotCubicError,
    bipartition,
    bridged10_graph,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    edge,
    enumerate_perfect_matchings,
    find_bridges,
    find_bridges_bruteforce,
    find_perfect_matching,
    parse_graph,
    perfect_matching_exists_bipartite,
    petersen_graph,
    prism_graph,
    validate_cubic,
)
from .hexagon import (
    BlueMatching,
    DcdcCertificate,
    FaceSet,
    HexagonGraph,
    RotationSystem,
    all_rotation_systems,
    blue_matchings,
    build_hexagon_graph,
    check_hexagon_invariants,
    euler_genus,
    extract_dcdc,
    find_safe_matching,
    hexagon_to_dot,
    hexagon_to_json,
    induced_face,
    is_safe,
    matching_to_rotation,
    mdw_cycles,
    rotation_to_matching,
    trace_faces,
    verify_dcdc,
)
from .brace import (
    AugmentationStep,
    AugmentationTrace,
    BraceReport,
    augment_type1,
    augment_type2,
    augment_type3_4,
    expand,
    generate_base,
    is_brace,
    replay_trace,
)
from .earsquare import (
    Ear,
    EarSquareGraph,
    NotMatchingCoveredError,
    OddEarDecomposition,
    check_ear_square,
    check_square_graph,
    graph_paths,
    matching_paths,
    odd_ear_decomposition,
    verify_decomposition,
)
from .eargen import (
    GenerationError,
    PipelineResult,
    UnreachableCaseError,
    build_q1,
    classify_configuration,
    classify_instance,
    double_augmentation,
    extend_ear,
    generate_hexagon_trace,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
