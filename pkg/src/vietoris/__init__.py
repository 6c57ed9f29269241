"""Exact hyperspace constructions for homeomorphism groups of [0, 1] and the Cantor set."""
from .cantor import CantorHomeo, cantor_compose, cantor_graph, cantor_inverse
from .certificates import (
    build_cover_certificate,
    build_r_certificate,
    uniform_cover,
    verify_cover_certificate,
    verify_r_certificate,
)
from .errors import (
    MeshTooCoarse,
    NotACover,
    NotFar,
    NotFarEnough,
    PreconditionError,
    VerificationFailed,
    VietorisError,
)
from .geometry import CoverTuple, IntervalUnion, StaircaseCurve, hausdorff, mesh, normalize
from .homeo import PLHomeo, compose, evaluate, farness, graph, image, inverse, preimage, sup_dist
from .hyperspace import (
    CurveFamily,
    SetFamilyTuple,
    SimplexPoint,
    TupleFamily,
    act_curve,
    act_tuple,
    curve_hausdorff,
    diag_deviation,
    family_hausdorff,
)

__version__ = "0.1.0"

__all__ = [
    "CantorHomeo",
    "CoverTuple",
    "CurveFamily",
    "IntervalUnion",
    "MeshTooCoarse",
    "NotACover",
    "NotFar",
    "NotFarEnough",
    "PLHomeo",
    "PreconditionError",
    "SetFamilyTuple",
    "SimplexPoint",
    "StaircaseCurve",
    "TupleFamily",
    "VerificationFailed",
    "VietorisError",
    "act_curve",
    "act_tuple",
    "build_cover_certificate",
    "build_r_certificate",
    "cantor_compose",
    "cantor_graph",
    "cantor_inverse",
    "compose",
    "curve_hausdorff",
    "diag_deviation",
    "evaluate",
    "family_hausdorff",
    "farness",
    "graph",
    "hausdorff",
    "image",
    "inverse",
    "mesh",
    "normalize",
    "preimage",
    "sup_dist",
    "uniform_cover",
    "verify_cover_certificate",
    "verify_r_certificate",
]
