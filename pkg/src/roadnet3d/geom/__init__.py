from .bezier import CubicBezier, cubic_bezier_from_tangents
from .bspline import MonotoneCurvatureSpline, PiecewiseBSpline, fit_bspline_monotone_curvature
from .curves import CurveView, ParamCurve, Polyline, arc_length_parameterize, offset_polyline
from .fillet import Arc, solve_offset_crossing, tangency_residual, tangent_circle_fillet
from .simplify import douglas_peucker, douglas_peucker_indices

__all__ = [
    "Arc",
    "CubicBezier",
    "CurveView",
    "MonotoneCurvatureSpline",
    "ParamCurve",
    "PiecewiseBSpline",
    "Polyline",
    "arc_length_parameterize",
    "cubic_bezier_from_tangents",
    "douglas_peucker",
    "douglas_peucker_indices",
    "fit_bspline_monotone_curvature",
    "offset_polyline",
    "solve_offset_crossing",
    "tangency_residual",
    "tangent_circle_fillet",
]
