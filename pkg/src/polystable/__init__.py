"""Exact dual intersection complexes and skeletons of poly-stable pairs."""

from .extended import INF, fmt_q, parse_q
from .errors import CompositionError, DescriptorError, DomainError, ValidationError
from .polysimplex import (
    ExtendedPolySimplex,
    PolySimplex,
    PSMorphism,
    apply_morphism,
    classify,
    compose,
    enumerate_faces,
    factorize_metric,
    identity,
    inverse,
)
from .geometry import (
    RealizationPoint,
    affine,
    contains,
    eval_affine,
    pullback_affine,
    realize_morphism,
)
from .strata import (
    PairDescriptor,
    least_stratum,
    restriction_maps,
    standard_descriptor,
    validate_descriptor,
)
from .complex import (
    ComplexPoint,
    DescentData,
    StrictDualComplex,
    chart_change,
    coequalize,
    face_intersection,
    open_face_of,
    points_equal,
)
from .series import Coeff
from .skeleton import (
    StandardPairModel,
    closure_membership,
    flow,
    flow_injectivity_window,
    make_point,
    normalize_poly,
    reduction_stratum,
    seminorm_eval,
    sigma,
    star_eval,
    tau,
    trop,
)

__version__ = "0.1.0"
