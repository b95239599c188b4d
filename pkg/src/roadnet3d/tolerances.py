from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class ToleranceSet:
    """Numeric knobs used across the pipeline. All lengths in meters."""

    snap: float = 0.5
    min_separation: float = 1e-9
    sample_step: float = 1.0
    offset_step: float = 1.0
    dp_epsilon: float = 0.01
    parallel_angle: float = 1e-3
    fit_tolerance: float = 0.5
    max_pieces: int = 64
    convexity_eps: float = 1e-9
    convex_push_step: float = 0.5
    convex_max_iter: int = 400
    merge_angle_deg: float = 5.0
    min_link_length: float = 1.0

    def with_overrides(self, **kwargs):
        known = {f.name for f in fields(self)}
        return replace(self, **{k: v for k, v in kwargs.items() if k in known and v is not None})

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = ToleranceSet()
