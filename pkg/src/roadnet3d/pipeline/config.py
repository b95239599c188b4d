"""Pipeline configuration."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

from ..errors import InputError, InvalidParams
from ..tolerances import DEFAULT_TOLERANCES, ToleranceSet


@dataclass
class PipelineConfig:
    centerlines: Optional[str] = None
    heightfield: Optional[str] = None
    out: str = "out"
    texture: Optional[str] = None  # ortho image, passed through to the material
    ortho_georef: Optional[list] = None  # [x0, y0, W, H] of the ortho image
    u: float = 0.10
    i: float = 0.05
    l_dis: float = 30.0
    smooth_spacing: float = 2.0
    ds: float = 5.0
    slope_max: float = 0.08
    kappa_max: float = 0.1
    dkappa_max: float = 0.1
    lane_width: float = 3.5
    lanes_per_link: int = 1
    dp_epsilon: float = 0.01
    mesh_step: float = 2.0
    threads: int = 1
    flat_elevation: Optional[float] = None  # use a constant terrain when no height field is given
    tolerances: ToleranceSet = field(default_factory=lambda: DEFAULT_TOLERANCES)

    def __post_init__(self):
        checks = {
            "u + i": (self.u + self.i, 0.0), "l_dis": (self.l_dis, 0.0), "ds": (self.ds, 0.0),
            "slope_max": (self.slope_max, 0.0), "kappa_max": (self.kappa_max, 0.0),
            "dkappa_max": (self.dkappa_max, 0.0), "lane_width": (self.lane_width, 0.0),
            "mesh_step": (self.mesh_step, 0.0), "smooth_spacing": (self.smooth_spacing, 0.0),
        }
        for name, (value, lo) in checks.items():
            if not value > lo:
                raise InvalidParams(f"{name} must be > {lo:g}, got {value}")
        if self.lanes_per_link < 1 or self.threads < 1:
            raise InvalidParams("lanes_per_link and threads must be >= 1")
        if self.dp_epsilon < 0:
            raise InvalidParams(f"dp_epsilon must be >= 0, got {self.dp_epsilon}")
        if self.ortho_georef is not None and (len(self.ortho_georef) != 4 or min(self.ortho_georef[2:]) <= 0):
            raise InvalidParams("ortho_georef must be [x0, y0, width, height] with positive size")
        if isinstance(self.tolerances, dict):
            self.tolerances = DEFAULT_TOLERANCES.with_overrides(**self.tolerances)
        if self.tolerances.dp_epsilon != self.dp_epsilon:
            self.tolerances = self.tolerances.with_overrides(dp_epsilon=self.dp_epsilon)

    def check_inputs(self):
        for name in ("centerlines", "heightfield"):
            p = getattr(self, name)
            if p is not None and not Path(p).exists():
                raise InputError(f"{name} file {p} does not exist")
        if self.centerlines is None:
            raise InputError("no centerline input given")
        if self.heightfield is None and self.flat_elevation is None:
            raise InputError("no height field given (use flat_elevation for constant terrain)")

    @classmethod
    def from_json(cls, path, **overrides):
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise InputError(f"cannot read config {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"config {path} is not valid JSON: {exc.msg}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParams(f"unknown config keys: {sorted(unknown)}")
        base = Path(path).parent
        for key in ("centerlines", "heightfield", "texture"):
            if data.get(key) and not Path(data[key]).is_absolute():
                data[key] = str(base / data[key])
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def as_dict(self):
        d = asdict(self)
        d["tolerances"] = self.tolerances.as_dict()
        return d
