"""Order-induced proximities and their graphs, plus a triangulation pipeline
that orders video-frame features by MNC area or centroid-cycle length."""

__version__ = "0.1.0"

from .errors import ValidationError
from .order import (
    CyclicOrder,
    PartialOrder,
    TotalOrder,
    cyclic_from_total,
    load_order,
    order_from_json,
    triple_holds,
    validate_cyclic_order,
    validate_partial_order,
    validate_total_order,
)
from .proximity import (
    ProximityValue,
    PropertyReport,
    chain_between,
    check_properties,
    near,
    near_cyclic,
    near_partial,
    near_total,
)
from .graph import (
    DirectedGraph,
    check_equivalence,
    export,
    hasse,
    order_graph,
    proximity_graph,
    transitive_reduction,
)
from .geometry import Point2, Triangle, Triangulation, centroid, delaunay, orientation_angle, triangle_area
from .nerve import (
    MaximalCycle,
    NerveCluster,
    SpokeComplex,
    find_mncs,
    maximal_cycle,
    mnc_area,
    spoke_complex,
)
from .frames import (
    FramePairRecord,
    FrameSet,
    OrderedChain,
    chain_graph,
    frame_subgraph,
    generate_frames,
    ingest_frames,
    order_by_cycle_length,
    order_by_mnc_area,
)
from .estimator import FrameChainOrderer
