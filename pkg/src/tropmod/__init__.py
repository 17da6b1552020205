"""Stable weighted graphs with labeled legs, tropical curves, and moduli strata."""

from .canonical import (
    AutGroup,
    CanonicalForm,
    automorphism_group,
    canonical_form,
    canonical_graph,
    canonical_key,
    is_isomorphic,
)
from .contraction import ContractionResult, contract, covers, leq, resolve_to_trivalent
from .dual import (
    NodalCurveDesc,
    component_degrees,
    dual_graph,
    is_stable_curve,
    stabilize_curve,
    stratum_dims,
)
from .enumeration import (
    StrataPoset,
    codim1_connected,
    enumerate_all,
    enumerate_trivalent,
    f_vector,
    ht_path,
)
from .graph import (
    HalfEdge,
    StabilityReport,
    WeightedGraph,
    check_stable,
    first_betti,
    genus,
    stability_degree,
    validate,
    valence,
)
from .metric import (
    INF,
    ConePoint,
    TropicalCurve,
    face_contract,
    fiber,
    is_isometric,
    separate_legs,
    stabilize,
)

__version__ = "0.1.0"
