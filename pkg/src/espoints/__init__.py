"""Exact tools for convex subsets of planar point sets in general position.

Integer orientation predicates, cups and caps, the region order with its
chain/antichain split, an exact largest-convex-subset oracle, extremal
constructions, and the cap / support-region extraction pipeline.
"""

from .constructions import (
    GeneratorSpec,
    es_lower_bound_set,
    extremal_cupcap_set,
    generate,
    parabola_points,
    random_general_position,
)
from .cupcap import (
    Color,
    CupCap,
    CupCapTable,
    Kind,
    TransitiveColoring,
    cupcap_threshold,
    find_cup_or_cap,
    is_cap,
    is_cup,
    longest_cap,
    longest_cup,
    transitive_clique,
)
from .errors import (
    ContractViolation,
    DegenerateInput,
    EspointsError,
    Insufficient,
    NotFound,
    ScheduleMiss,
    ThresholdUnmet,
    VerificationFailed,
)
from .geometry import (
    Orientation,
    Point,
    PointSet,
    convex_hull,
    find_collinear_triple,
    is_convex_position,
    is_general_position,
    orientation,
)
from .oracle import (
    ConvexWitness,
    contains_convex_ngon,
    largest_convex_subset,
    largest_convex_subset_exhaustive,
    verify_witness,
)
from .order import ChainAntichain, RegionOrder, Tag, dilworth_split, precedes
from .pipeline import Mode, PipelineParams, extract, params_for

__version__ = "0.1.0"
