"""Raster readers: ESRI ASCII grids and PGM images with a JSON sidecar."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

from ..errors import FormatError, MissingGeoreference
from .heightfield import HeightField

_ASC_KEYS = {"ncols", "nrows", "xllcorner", "yllcorner", "xllcenter", "yllcenter", "cellsize", "nodata_value"}


def _fill_nodata(grid, nodata):
    mask = ~np.isfinite(grid)
    if nodata is not None:
        mask |= grid == nodata
    if mask.all():
        raise FormatError("height grid holds only NODATA cells")
    if mask.any():
        idx = ndimage.distance_transform_edt(mask, return_distances=False, return_indices=True)
        grid = grid[tuple(idx)]
    return grid


def read_asc(path) -> HeightField:
    path = Path(path)
    try:
        lines = path.read_text().split("\n")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    header = {}
    k = 0
    while k < len(lines):
        parts = lines[k].split()
        if not parts:
            k += 1
            continue
        key = parts[0].lower()
        if key not in _ASC_KEYS:
            break
        if len(parts) != 2:
            raise FormatError(f"{path}: malformed header line {lines[k]!r}")
        header[key] = float(parts[1])
        k += 1
    for key in ("ncols", "nrows", "cellsize"):
        if key not in header:
            raise FormatError(f"{path}: header lacks {key}")
    if not ({"xllcorner", "yllcorner"} <= header.keys() or {"xllcenter", "yllcenter"} <= header.keys()):
        raise MissingGeoreference(f"{path}: header lacks xllcorner/yllcorner")
    ncols, nrows, c = int(header["ncols"]), int(header["nrows"]), header["cellsize"]
    try:
        values = np.array(" ".join(lines[k:]).split(), dtype=float)
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric grid value") from exc
    if values.size != ncols * nrows:
        raise FormatError(f"{path}: expected {ncols * nrows} values, found {values.size}")
    if "xllcorner" in header:
        origin = (header["xllcorner"], header["yllcorner"])
    else:
        origin = (header["xllcenter"] - c / 2, header["yllcenter"] - c / 2)
    grid = values.reshape(nrows, ncols)[::-1]  # file rows run north to south
    grid = _fill_nodata(grid, header.get("nodata_value"))
    return HeightField(grid, c, origin)


def write_asc(hf: HeightField, path):
    lines = [
        f"ncols {hf.width}", f"nrows {hf.height}",
        f"xllcorner {hf.origin[0]:.6f}", f"yllcorner {hf.origin[1]:.6f}",
        f"cellsize {hf.cellsize:.6f}", "NODATA_value -9999",
    ]
    for row in hf.grid[::-1]:
        lines.append(" ".join(f"{v:.6f}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_pgm(path) -> HeightField:
    path = Path(path)
    sidecar = path.with_suffix(".geo.json")
    if not sidecar.exists():
        raise MissingGeoreference(f"{path}: sidecar {sidecar.name} not found")
    try:
        geo = json.loads(sidecar.read_text())
        origin = tuple(float(v) for v in geo["origin"])
        cellsize = float(geo["cellsize"])
    except (ValueError, KeyError, TypeError) as exc:
        raise MissingGeoreference(f"{sidecar}: needs origin [x, y] and cellsize") from exc
    scale = float(geo.get("scale", 1.0))
    offset = float(geo.get("offset", 0.0))
    try:
        with Image.open(path) as im:
            pixels = np.array(im, dtype=float)
    except (OSError, UnidentifiedImageError) as exc:
        raise FormatError(f"cannot read {path} as PGM: {exc}") from exc
    if pixels.ndim != 2:
        raise FormatError(f"{path}: expected a gray-scale image")
    return HeightField(pixels[::-1] * scale + offset, cellsize, origin)


def write_pgm(hf: HeightField, path, scale=1.0, offset=0.0):
    """Write a 16-bit PGM plus sidecar; elevations are quantized to ``scale``."""
    path = Path(path)
    pix = np.rint((hf.grid[::-1] - offset) / scale)
    if pix.min() < 0 or pix.max() > 65535:
        raise FormatError("elevations do not fit 16-bit pixels with this scale/offset")
    dtype = np.uint8 if pix.max() <= 255 else np.uint16
    Image.fromarray(pix.astype(dtype)).save(path, format="PPM")
    path.with_suffix(".geo.json").write_text(json.dumps(
        {"origin": list(hf.origin), "cellsize": hf.cellsize, "scale": scale, "offset": offset}, indent=2))


def load_heightfield(path, format=None) -> HeightField:
    """Load ``.asc`` or ``.pgm`` (with ``<name>.geo.json``)."""
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    if not path.exists():
        raise FormatError(f"height field {path} does not exist")
    if fmt == "asc":
        return read_asc(path)
    if fmt == "pgm":
        return read_pgm(path)
    raise FormatError(f"unsupported height field format {fmt!r}")
