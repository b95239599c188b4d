"""Elevation rasters: loading, sampling and road segmentation."""

from .heightfield import HeightField, sample_elevation
from .io import load_heightfield, read_asc, read_pgm, write_asc, write_pgm
from .mask import RoadMask, segment_elevation
