"""Longitudinal profiles and road surface elevation."""

from .control import (
    ControlVectorSet,
    menger_curvature,
    pin_control_vectors,
    sample_control_vectors,
    select_control_vectors,
)
from .surface import (
    IntersectionElevation,
    LinkElevation,
    ProfileCurve,
    certify,
    elevate_link,
    fit_profile,
    flatten_intersection,
    stitch_junctions,
)
