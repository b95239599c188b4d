"""2D road network construction."""

from .build import assemble_intersection, build_network, is_convex_cw, trim_segment_ends
from .design import cluster_intersection_points, fillet_radius, smooth_centerlines
from .types import (
    Arm,
    CenterlineSet,
    FilletRecord,
    Intersection,
    Link,
    Relation,
    Road,
    RoadNetwork2D,
    SegAxis,
)
from .io import centerlines_to_geojson, load_centerlines, roads_from_geojson
