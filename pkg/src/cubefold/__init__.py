"""Hyperplane calculus on finite median graphs: foldings, swellings, and
factorization of parallel-preserving maps."""

from .cubulation import Cubulation, Orientation, Wall, Wallspace, cubulate, walls_from_hyperplanes
from .equivariance import (
    InducedAction,
    SymmetryGroup,
    equivariant_fold,
    equivariant_swell,
    factorize_equivariant,
    orbit_of_pairs,
    trivial_group,
    verify_group,
)
from .errors import (
    CubefoldError,
    DomainMismatch,
    EdgeCollapsed,
    GroupTooLarge,
    HalfspacesUnavailable,
    ImagesDiffer,
    MissingFourthCorner,
    NotAutomorphism,
    NotEdgePreserving,
    NotEquivariant,
    NotFactorizable,
    NotInContact,
    NotMedian,
    NotTangent,
    NotWellDefined,
    ParallelBroken,
    ParseError,
    UnknownVertex,
)
from .factorize import FactorizationTrace, Move, factorize, fold_unique_pair
from .fold import FoldResult, factor_through_fold, first_fold, fold_collection, fold_pair, parity_wall
from .formats import (
    export_dot,
    read_graph,
    read_group,
    read_map,
    write_graph,
    write_graph_text,
    write_group_text,
    write_map,
    write_map_text,
)
from .graph import Graph, build_graph, distance, interval, is_isomorphic
from .hyperplanes import (
    Hyperplane,
    HyperplaneRelation,
    canonical_involution,
    class_label,
    contact_pairs,
    edge_class,
    hyperplanes,
    pair_separators,
    parse_class_label,
    relation,
    separating_hyperplanes,
    tangent_pairs,
    transverse_pairs,
)
from .median import (
    MedianReport,
    SubmedianCertificate,
    convex_hull,
    is_convex,
    is_median,
    median,
    median_hull,
    require_median,
    submedian_certificate,
)
from .morphism import MapClass, PPMap, classify, compose, find_violation, identity_map, is_chiasmatic, validate
from .swell import SwellResult, extend_through_swell, swell_collection, swell_pair

__all__ = [name for name in dir() if not name.startswith("_")]
