"""Profile curves, flat intersections and the elevation of Link surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InfeasibleFit
from ..geom.bspline import MonotoneCurvatureSpline
from ..terrain.heightfield import sample_elevation
from .control import pin_control_vectors


@dataclass(eq=False)
class ProfileCurve:
    """Fitted h(s) over [0, length] with its dense-sweep certificates."""

    seg_axis_id: int
    spline: object  # PiecewiseBSpline
    length: float
    max_curvature: float = 0.0
    max_slope: float = 0.0
    residual: float = 0.0
    pins: dict = field(default_factory=dict)
    control: object = None
    fit_params: dict = field(default_factory=dict)

    def __call__(self, s):
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.length)
        z = np.asarray(self.spline(s), dtype=float)
        # pinned end values hold bit for bit so seams share vertices
        if "start" in self.pins:
            z = np.where(s == 0.0, self.pins["start"], z)
        if "end" in self.pins:
            z = np.where(s == self.length, self.pins["end"], z)
        return float(z) if z.ndim == 0 else z

    def slope(self, s):
        return self.spline.slope(np.clip(s, 0.0, self.length))

    def curvature(self, s):
        return self.spline.curvature(np.clip(s, 0.0, self.length))

    def sweep(self, step=0.05):
        return self.spline.sweep(step)


def certify(spline, step=0.05):
    """Max |kappa| and max |dh/ds| over a dense sweep including piece breaks."""
    s = spline.sweep(step)
    return float(np.abs(spline.curvature(s)).max()), float(np.abs(spline.slope(s)).max())


def fit_profile(cv, kappa_max=0.1, slope_max=0.08, fit_tolerance=0.5, max_pieces=64,
                seg_axis_id=None, **pins):
    """Fit a ProfileCurve to a ControlVectorSet; ``pins`` as in the estimator."""
    sid = cv.source if seg_axis_id is None else seg_axis_id
    est = MonotoneCurvatureSpline(kappa_max=kappa_max, slope_max=slope_max,
                                  fit_tolerance=fit_tolerance, max_pieces=max_pieces)
    try:
        est.fit(cv.s, cv.h, **pins)
    except InfeasibleFit as exc:
        raise InfeasibleFit(str(exc), f"seg_axis_{sid}") from exc
    k, g = certify(est.spline_)
    if k > kappa_max * (1 + 1e-6) or (slope_max is not None and g > slope_max * (1 + 1e-6)):
        raise InfeasibleFit(f"certificate failed: curvature {k:.6g}, slope {g:.6g}", f"seg_axis_{sid}")
    names = {"start_value": "start", "end_value": "end"}
    return ProfileCurve(
        seg_axis_id=sid, spline=est.spline_, length=float(cv.s[-1]), max_curvature=k, max_slope=g,
        residual=est.residual_, control=cv,
        pins={names[key]: float(v) for key, v in pins.items() if key in names and v is not None},
        fit_params={"kappa_max": kappa_max, "slope_max": slope_max,
                    "fit_tolerance": fit_tolerance, "max_pieces": max_pieces},
    )


@dataclass(frozen=True)
class IntersectionElevation:
    intersection_id: int
    z: float


def flatten_intersection(intersection, hf) -> IntersectionElevation:
    """Constant elevation: mean of the terrain at the 2k boundary vertices."""
    poly = np.asarray(intersection.polygon, dtype=float)
    h = np.asarray(sample_elevation(hf, poly[:, 0], poly[:, 1]), dtype=float)
    return IntersectionElevation(intersection.id, float(np.mean(h)))


class LinkElevation:
    """z(p) = C(s*) where s* is the arc length of the nearest seg axis point."""

    def __init__(self, seg_axis, profile):
        self.curve = seg_axis.curve
        self.profile = profile

    def station(self, p):
        return self.curve.nearest(np.asarray(p, dtype=float))[0]

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        if p.ndim == 1:
            return float(self.profile(self.station(p)))
        return np.array([float(self.profile(self.station(q))) for q in p])


def elevate_link(link, profile, net=None, seg_axis=None):
    """Elevation function over the Link's polygon."""
    if seg_axis is None:
        seg_axis = net.seg_axes[link.seg_axis_id]
    return LinkElevation(seg_axis, profile)


def stitch_junctions(net, profiles, intersection_elevations):
    """Refit profiles so every junction end meets its Intersection's z exactly.

    The end slope is pinned to zero as well, matching the flat intersection.
    Returns a new dict seg_axis id -> ProfileCurve.
    """
    z_of = {e.intersection_id: e.z for e in intersection_elevations.values()} \
        if isinstance(intersection_elevations, dict) else \
        {e.intersection_id: e.z for e in intersection_elevations}
    out = {}
    for sa in net.seg_axes:
        prof = profiles[sa.id]
        pins = {}
        if sa.start_intersection is not None:
            pins["start_value"] = z_of[sa.start_intersection]
            pins["start_slope"] = 0.0
        if sa.end_intersection is not None:
            pins["end_value"] = z_of[sa.end_intersection]
            pins["end_slope"] = 0.0
        if not pins or _already_pinned(prof, pins):
            out[sa.id] = prof
            continue
        fp = prof.fit_params
        cv = pin_control_vectors(prof.control, pins.get("start_value"), pins.get("end_value"))
        try:
            out[sa.id] = fit_profile(cv, seg_axis_id=sa.id, **fp, **pins)
        except InfeasibleFit as exc:
            seam = f"seg_axis_{sa.id}@intersections({sa.start_intersection},{sa.end_intersection})"
            raise InfeasibleFit(f"pinning to intersection elevation failed: {exc}", seam) from exc
    return out


def _already_pinned(prof, pins):
    ends = {"start": 0.0, "end": prof.length}
    for key, v in pins.items():
        where, kind = key.split("_")
        s = ends[where]
        have = prof(s) if kind == "value" else float(prof.slope(s))
        if have != v:
            return False
    return True
