"""Config parsing and result serialization: JSON in, CSV/SVG out.

One strict JSON schema carries zipper systems in and out of the package:

    {
      "dimension": n,
      "maps": [{"linear": n x n rows, "translation": n numbers}, ...],
      "vertices": m+1 rows of n numbers,
      "signature": m zeros/ones,
      "lineNodes": m+1 numbers (optional; defaults to uniform)
    }

Unknown keys are rejected with a :class:`ParseError` naming the key, and
wrong shapes with a :class:`ShapeError` naming the field, so a config that
loads is a config that means what it says.  Lifted systems serialize to
the same schema, which is what lets the lift output feed back into every
other command.  All emitters write deterministic bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionUnsupported, ParseError, ShapeError, ZipperViolation
from .geometry import AffineMap
from .zipper import line_zipper, validate_zipper

#: Top-level schema: required keys and the one optional key.
_REQUIRED_KEYS = ("dimension", "maps", "vertices", "signature")
_OPTIONAL_KEYS = ("lineNodes",)


@dataclass(frozen=True, eq=False)
class ZipperConfig:
    """Parsed zipper description, shape-checked but not yet validated."""

    dimension: int
    maps: tuple[AffineMap, ...]
    vertices: np.ndarray
    signature: tuple[int, ...]
    line_nodes: np.ndarray | None = None

    def __eq__(self, other):
        if not isinstance(other, ZipperConfig):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.signature == other.signature
            and len(self.maps) == len(other.maps)
            and all(
                np.array_equal(a.linear, b.linear)
                and np.array_equal(a.translation, b.translation)
                for a, b in zip(self.maps, other.maps)
            )
            and np.array_equal(self.vertices, other.vertices)
            and (
                (self.line_nodes is None and other.line_nodes is None)
                or (
                    self.line_nodes is not None
                    and other.line_nodes is not None
                    and np.array_equal(self.line_nodes, other.line_nodes)
                )
            )
        )


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ShapeError(field, f"field {field!r} must be a number")
    return float(value)


def _number_list(value, field, length=None):
    if not isinstance(value, list):
        raise ShapeError(field, f"field {field!r} must be an array of numbers")
    if length is not None and len(value) != length:
        raise ShapeError(field, f"field {field!r} must have length {length}")
    return [_number(v, field) for v in value]


def _matrix(value, field, dim):
    if not isinstance(value, list) or len(value) != dim:
        raise ShapeError(field, f"field {field!r} must be {dim} rows of {dim} numbers")
    return [_number_list(row, field, dim) for row in value]


def parse_config(text):
    """Parse strict JSON config text into a :class:`ZipperConfig`.

    Raises :class:`ParseError` (with line and column) for malformed JSON or
    unknown keys, and :class:`ShapeError` naming the offending field for
    shape or type problems.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ShapeError("<root>", "config must be a JSON object")
    allowed = set(_REQUIRED_KEYS) | set(_OPTIONAL_KEYS)
    for key in raw:
        if key not in allowed:
            raise ParseError(f"unknown key {key!r}")
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ShapeError(key, f"missing required field {key!r}")

    dimension = raw["dimension"]
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ShapeError("dimension", "field 'dimension' must be a positive integer")

    raw_maps = raw["maps"]
    if not isinstance(raw_maps, list) or not raw_maps:
        raise ShapeError("maps", "field 'maps' must be a nonempty array")
    maps = []
    for k, entry in enumerate(raw_maps):
        field = f"maps[{k}]"
        if not isinstance(entry, dict):
            raise ShapeError(field, f"field {field!r} must be an object")
        for key in entry:
            if key not in ("linear", "translation"):
                raise ParseError(f"unknown key {key!r} in {field}")
        if "linear" not in entry or "translation" not in entry:
            raise ShapeError(field, f"field {field!r} needs 'linear' and 'translation'")
        linear = _matrix(entry["linear"], f"{field}.linear", dimension)
        translation = _number_list(entry["translation"], f"{field}.translation", dimension)
        maps.append(AffineMap(linear, translation))
    count = len(maps)

    raw_vertices = raw["vertices"]
    if not isinstance(raw_vertices, list) or len(raw_vertices) != count + 1:
        raise ShapeError("vertices", f"field 'vertices' must have {count + 1} rows")
    vertices = np.array(
        [_number_list(row, f"vertices[{k}]", dimension) for k, row in enumerate(raw_vertices)]
    )

    raw_signature = raw["signature"]
    if not isinstance(raw_signature, list) or len(raw_signature) != count:
        raise ShapeError("signature", f"field 'signature' must have length {count}")
    signature = []
    for bit in raw_signature:
        if isinstance(bit, bool) or not isinstance(bit, int) or bit not in (0, 1):
            raise ShapeError("signature", "field 'signature' entries must be 0 or 1")
        signature.append(bit)

    line_nodes = None
    if "lineNodes" in raw:
        line_nodes = np.array(_number_list(raw["lineNodes"], "lineNodes", count + 1))
        line_nodes.setflags(write=False)

    vertices.setflags(write=False)
    return ZipperConfig(
        dimension=dimension,
        maps=tuple(maps),
        vertices=vertices,
        signature=tuple(signature),
        line_nodes=line_nodes,
    )


def config_to_json(config):
    """Serialize a config to canonical JSON text (round-trips exactly)."""
    payload = {
        "dimension": config.dimension,
        "maps": [
            {
                "linear": [[float(v) for v in row] for row in mp.linear],
                "translation": [float(v) for v in mp.translation],
            }
            for mp in config.maps
        ],
        "vertices": [[float(v) for v in row] for row in config.vertices],
        "signature": list(config.signature),
    }
    if config.line_nodes is not None:
        payload["lineNodes"] = [float(v) for v in config.line_nodes]
    return json.dumps(payload, indent=2) + "\n"


def config_from_system(zipper, line=None):
    """Describe a validated zipper (and optionally its line nodes) as a config."""
    return ZipperConfig(
        dimension=zipper.dimension,
        maps=zipper.maps,
        vertices=zipper.vertices,
        signature=zipper.signature,
        line_nodes=None if line is None else line.nodes,
    )


def build_system(config):
    """Validate a parsed config into a (Zipper, LineZipper) pair.

    Tries per-map contraction first and falls back to the eventual mode
    (word length 8), so lifted systems load through the same path; the
    chosen mode is recorded on the returned zipper.  Line nodes default to
    a uniform split.
    """
    try:
        zipper = validate_zipper(config.maps, config.vertices, config.signature)
    except ZipperViolation as exc:
        report = exc.report
        if report is None or any(
            v.condition != "contraction" for v in report.violations
        ):
            raise
        zipper = validate_zipper(
            config.maps, config.vertices, config.signature,
            contraction="eventual", word_length=8,
        )
    count = len(config.maps)
    nodes = (
        np.linspace(0.0, 1.0, count + 1)
        if config.line_nodes is None
        else config.line_nodes
    )
    return zipper, line_zipper(nodes, config.signature)


def format_number(value):
    """Shortest decimal that round-trips to the same float."""
    value = float(value)
    if value == 0.0:
        return "0"
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def export_csv(polyline, path):
    """Write a polyline as CSV with header ``t,x1,...,xd``.

    The ``t`` column is present exactly when the polyline carries
    parameters.  Numbers use shortest round-trip decimals and rows end with
    a bare newline, so identical input gives identical bytes.
    """
    points = polyline.points
    dim = points.shape[1]
    columns = [f"x{j + 1}" for j in range(dim)]
    lines = []
    if polyline.params is not None:
        lines.append(",".join(["t"] + columns))
        for t, row in zip(polyline.params, points):
            lines.append(",".join([format_number(t)] + [format_number(v) for v in row]))
    else:
        lines.append(",".join(columns))
        for row in points:
            lines.append(",".join(format_number(v) for v in row))
    data = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(data)


@dataclass(frozen=True)
class RenderSpec:
    """How to draw a polyline: subdivision depth, canvas, projection."""

    depth: int = 12
    width: int = 800
    height: int = 600
    stroke_width: float = 1.0
    projection: tuple[int, int] | None = None

    def __post_init__(self):
        if self.depth > 30 or self.depth < 0:
            raise ValueError(f"depth must lie in 0..30, got {self.depth}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")


def _projected_axes(dim, projection):
    if projection is not None:
        if len(projection) != 2 or any(not 0 <= a < dim for a in projection):
            raise DimensionUnsupported(
                f"projection {projection} does not select two axes of R^{dim}"
            )
        return tuple(projection)
    if dim in (2, 3):
        return (0, 1)
    raise DimensionUnsupported(
        f"cannot draw {dim}-dimensional data without a two-axis projection"
    )


def export_svg(polyline, spec, path):
    """Write a polyline as a single-element SVG document.

    The drawing fits the data bounding box with a 5% margin and flips the
    vertical axis into mathematical orientation.  Output bytes are
    deterministic for identical input.
    """
    axes = _projected_axes(polyline.points.shape[1], spec.projection)
    xs = polyline.points[:, axes[0]]
    ys = polyline.points[:, axes[1]]
    spans = []
    bounds = []
    for coords in (xs, ys):
        low, high = float(coords.min()), float(coords.max())
        span = high - low
        pad = 0.05 * span if span > 0.0 else 0.5
        bounds.append((low - pad, high + pad))
        spans.append(span + 2.0 * pad)
    px = (xs - bounds[0][0]) / spans[0] * spec.width
    py = spec.height - (ys - bounds[1][0]) / spans[1] * spec.height
    points = " ".join(
        f"{format_number(x)},{format_number(y)}" for x, y in zip(px, py)
    )
    document = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">\n'
        f'  <polyline fill="none" stroke="black" '
        f'stroke-width="{format_number(spec.stroke_width)}" points="{points}"/>\n'
        "</svg>\n"
    )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(document)
