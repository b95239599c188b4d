"""Semantic road network entities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import InvalidParams
from ..geom.curves import Polyline


@dataclass
class Road:
    id: str
    axis: Polyline
    width: float
    design_speed: float
    lanes_per_link: Optional[int] = None
    lane_width: Optional[float] = None
    source_ids: tuple = ()

    def __post_init__(self):
        if not isinstance(self.axis, Polyline):
            self.axis = Polyline.cleaned(self.axis)
        if not self.width > 0:
            raise InvalidParams(f"road width must be positive, got {self.width}", self.id)
        if not self.design_speed >= 0:
            raise InvalidParams(f"design speed must be >= 0, got {self.design_speed}", self.id)
        if not self.source_ids:
            self.source_ids = (self.id,)


@dataclass
class CenterlineSet:
    """Input road center axes plus the global design parameters.

    ``u`` is the side-way force coefficient, ``i`` the superelevation and
    ``l_dis`` the intersection size threshold in meters.
    """

    roads: list
    u: float = 0.10
    i: float = 0.05
    l_dis: float = 30.0

    def __post_init__(self):
        if not self.u + self.i > 0:
            raise InvalidParams(f"u + i must be positive, got {self.u + self.i}")
        if not self.l_dis > 0:
            raise InvalidParams(f"L_dis must be positive, got {self.l_dis}")


@dataclass
class SegAxis:
    id: int
    road_id: str
    geometry: Polyline
    links: tuple
    width: float
    s_range: tuple  # arc-length interval on the road's smoothed curve
    start_intersection: Optional[int] = None
    end_intersection: Optional[int] = None
    curve: object = field(default=None, repr=False, compare=False)

    @property
    def length(self):
        return self.s_range[1] - self.s_range[0]


@dataclass
class Link:
    id: int
    seg_axis_id: int
    side: str  # "left" | "right" of the road direction
    boundary: Polyline
    polygon: np.ndarray
    from_intersection: Optional[int] = None
    to_intersection: Optional[int] = None

    @property
    def half_width_sign(self):
        return 1.0 if self.side == "left" else -1.0


@dataclass
class Arm:
    """A road end attached to an intersection."""

    road_index: int
    at_end: bool
    s_cut: float  # arc length of the retained cut on the road curve
    plus_link: int = -1
    minus_link: int = -1


@dataclass
class Intersection:
    id: int
    polygon: np.ndarray  # (2k, 2) clockwise
    links: tuple  # n_i1..n_i2k, clockwise, "+" links at odd positions (1-based)
    arms: list
    seams: list  # per arm: (plus vertex, axis point, minus vertex)
    nodes: tuple = ()

    @property
    def k(self):
        return len(self.arms)

    @property
    def centroid(self):
        return self.polygon.mean(axis=0)


@dataclass
class FilletRecord:
    junction: int
    road_a: int
    s_a: float
    road_b: int
    s_b: float
    arc: object
    side_a: float  # +1 if the fillet touches the left boundary of road a (road direction)
    side_b: float


@dataclass(frozen=True)
class Relation:
    intersection: int
    link: int
    sign: str


@dataclass
class RoadNetwork2D:
    roads: list
    curves: list
    seg_axes: list
    links: list
    intersections: list
    relations: list
    fillets: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def link(self, link_id):
        return self.links[link_id]

    def relation_sign(self, intersection_id, link_id):
        for r in self.relations:
            if r.intersection == intersection_id and r.link == link_id:
                return r.sign
        return None
