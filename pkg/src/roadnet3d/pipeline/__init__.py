"""Pipeline driver, mesh generation, exports and CLI."""

from .config import PipelineConfig
from .export import export_obj, export_profile_csv, export_semantic_json, network_document
from .mesh import RoadMesh, build_mesh, fan_triangulate, strip_triangles
from .run import PipelineResult, run_pipeline
from .validate import validate_outputs
