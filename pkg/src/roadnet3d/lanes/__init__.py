"""Traffic lanes derived from the semantic network."""

from .graph import (
    Connector,
    ILane,
    LaneGraph,
    LLane,
    build_connectors,
    build_lane_graph,
    generate_i_lanes,
    generate_l_lanes,
)
