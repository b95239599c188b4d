"""Road network compiler: centerlines + heightfield -> semantic network, 3D meshes, lane graph."""

__version__ = "0.1.0"
