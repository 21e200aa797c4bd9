"""Deterministic scene serialization and polygon-mesh export.

A SceneDoc is the full snapshot a viewer needs: rotation matrix, stack and
layout parameters, every laid-out slice mesh, and the parallel-coordinates
channel values.  Serialization is canonical: fixed key order, floats
rendered with 17 significant digits (bit-exact double round-trip), so equal
snapshots produce byte-identical documents and golden files diff cleanly.

Mesh export writes Wavefront OBJ: slice points as ``p``, segments as ``l``,
polygons as planar ``f`` faces, all in world coordinates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .geom4 import Rotation4
from .multislice import (
    CHANNEL_COLORS,
    CHANNEL_NAMES,
    LayoutParams,
    ParallelCoords,
    SlicePlacement,
    SliceStackConfig,
)
from .slicer import SliceMesh, SlicePoint, SlicePolygon, SliceSegment

SCHEMA_VERSION = "1"

# Fixed axes-triad descriptor shown in the viewer's corner.
AXES_GLYPH = {"x": "red", "y": "green", "z": "blue"}


class SceneFormatError(Exception):
    """The document is structurally malformed; the message names where."""


class SceneVersionError(Exception):
    """The document's schema_version is not supported."""


class EmptyMeshError(Exception):
    """Mesh export requested for a slice with no geometry."""


@dataclass(frozen=True)
class SceneDoc:
    """Immutable snapshot of a laid-out slice stack."""

    polytope_name: str
    rotation: Rotation4
    stack: SliceStackConfig
    layout: LayoutParams
    slices: tuple[tuple[SlicePlacement, SliceMesh], ...]
    parallel_coords: ParallelCoords
    schema_version: str = SCHEMA_VERSION


def canonical_number(value) -> str:
    """Render an int exactly or a float with 17 significant digits.

    The float form always contains '.' or 'e' so the type survives a parse
    round-trip; 17 digits make the round-trip bit-exact for doubles.
    """
    if isinstance(value, bool):
        raise TypeError("booleans have no canonical number form")
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite number cannot be serialized: {value!r}")
    text = format(value, ".17g")
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def _is_scalar(value) -> bool:
    return isinstance(value, (str, int, float))


def _emit(value, pretty: bool, pad: str, out: list[str]) -> None:
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        inner = pad + "  "
        items = list(value.items())
        if pretty:
            out.append("{\n")
            for i, (key, item) in enumerate(items):
                out.append(f'{inner}{json.dumps(key)}: ')
                _emit(item, pretty, inner, out)
                out.append(",\n" if i < len(items) - 1 else "\n")
            out.append(pad + "}")
        else:
            out.append("{")
            for i, (key, item) in enumerate(items):
                if i:
                    out.append(",")
                out.append(f"{json.dumps(key)}:")
                _emit(item, pretty, pad, out)
            out.append("}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        if not pretty or all(_is_scalar(v) for v in items):
            sep = ", " if pretty else ","
            out.append("[")
            for i, item in enumerate(items):
                if i:
                    out.append(sep)
                _emit(item, False, pad, out)
            out.append("]")
        else:
            inner = pad + "  "
            out.append("[\n")
            for i, item in enumerate(items):
                out.append(inner)
                _emit(item, pretty, inner, out)
                out.append(",\n" if i < len(items) - 1 else "\n")
            out.append(pad + "]")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, float)):
        out.append(canonical_number(value))
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_canonical(obj, pretty: bool = False) -> str:
    """Canonical JSON text: insertion key order, 17-digit floats."""
    out: list[str] = []
    _emit(obj, pretty, "", out)
    return "".join(out)


def scene_to_jsonable(doc: SceneDoc) -> dict:
    """SceneDoc as plain dicts/lists in canonical key order."""
    slices = []
    for placement, mesh in doc.slices:
        slices.append(
            {
                "w_value": mesh.w_value,
                "placement": {
                    "slice_index": placement.slice_index,
                    "world_offset": list(placement.world_offset),
                    "scale": placement.scale,
                },
                "points": [[p.edge_id, p.t, *p.pos3] for p in mesh.points],
                "segments": [[s.face_id, *s.endpoints] for s in mesh.segments],
                "polygons": [[poly.cell_id, *poly.ring] for poly in mesh.polygons],
            }
        )
    return {
        "schema_version": doc.schema_version,
        "polytope_name": doc.polytope_name,
        "rotation": list(doc.rotation.flat()),
        "stack": {
            "delta_w": doc.stack.delta_w,
            "count": doc.stack.count,
            "w_origin": doc.stack.w_origin,
            "focus_steps": doc.stack.focus_steps,
        },
        "layout": {
            "spacing": doc.layout.spacing,
            "curvature": doc.layout.curvature,
            "plane_height": doc.layout.plane_height,
        },
        "slices": slices,
        "parallel_coords": {
            "channels": list(CHANNEL_NAMES),
            "colors": list(CHANNEL_COLORS),
            "values": [list(v) for v in doc.parallel_coords.values],
        },
        "axes_glyph": dict(AXES_GLYPH),
    }


def write_scene(doc: SceneDoc) -> bytes:
    """Pretty canonical document; identical snapshots give identical bytes."""
    return (dumps_canonical(scene_to_jsonable(doc), pretty=True) + "\n").encode("utf-8")


def scene_line(doc: SceneDoc) -> str:
    """Single-line canonical form, for line-delimited message channels."""
    return dumps_canonical(scene_to_jsonable(doc), pretty=False)


def _need(obj: dict, key: str, kind, path: str):
    if not isinstance(obj, dict):
        raise SceneFormatError(f"{path}: expected an object")
    if key not in obj:
        raise SceneFormatError(f"{path}: missing key {key!r}")
    value = obj[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SceneFormatError(f"{path}.{key}: expected a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SceneFormatError(f"{path}.{key}: expected an integer")
        return value
    if not isinstance(value, kind):
        raise SceneFormatError(f"{path}.{key}: expected {kind.__name__}")
    return value


def _number_row(row, width: int, path: str) -> list[float]:
    if not isinstance(row, list) or len(row) != width:
        raise SceneFormatError(f"{path}: expected a list of {width} numbers")
    values = []
    for v in row:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SceneFormatError(f"{path}: expected a list of {width} numbers")
        values.append(float(v))
    return values


def _index_row(row, path: str) -> list[int]:
    if not isinstance(row, list):
        raise SceneFormatError(f"{path}: expected a list of integers")
    for v in row:
        if isinstance(v, bool) or not isinstance(v, int):
            raise SceneFormatError(f"{path}: expected a list of integers")
    return row


def _read_slice(entry, path: str) -> tuple[SlicePlacement, SliceMesh]:
    w_value = _need(entry, "w_value", float, path)
    placement_obj = _need(entry, "placement", dict, path)
    offset = _number_row(
        _need(placement_obj, "world_offset", list, f"{path}.placement"),
        3,
        f"{path}.placement.world_offset",
    )
    placement = SlicePlacement(
        slice_index=_need(placement_obj, "slice_index", int, f"{path}.placement"),
        w_value=w_value,
        world_offset=(offset[0], offset[1], offset[2]),
        scale=_need(placement_obj, "scale", float, f"{path}.placement"),
    )

    points = []
    for i, row in enumerate(_need(entry, "points", list, path)):
        if not isinstance(row, list) or len(row) != 5:
            raise SceneFormatError(f"{path}.points[{i}]: expected [edge_id, t, x, y, z]")
        edge_id = row[0]
        if isinstance(edge_id, bool) or not isinstance(edge_id, int):
            raise SceneFormatError(f"{path}.points[{i}]: edge_id must be an integer")
        t, x, y, z = _number_row(row[1:], 4, f"{path}.points[{i}]")
        points.append(SlicePoint(edge_id=edge_id, t=t, pos3=(x, y, z)))

    segments = []
    for i, row in enumerate(_need(entry, "segments", list, path)):
        ids = _index_row(row, f"{path}.segments[{i}]")
        if len(ids) != 3:
            raise SceneFormatError(f"{path}.segments[{i}]: expected [face_id, p_i, p_j]")
        if not all(0 <= p < len(points) for p in ids[1:]):
            raise SceneFormatError(f"{path}.segments[{i}]: point index out of range")
        segments.append(SliceSegment(face_id=ids[0], endpoints=(ids[1], ids[2])))

    polygons = []
    for i, row in enumerate(_need(entry, "polygons", list, path)):
        ids = _index_row(row, f"{path}.polygons[{i}]")
        if len(ids) < 4:
            raise SceneFormatError(
                f"{path}.polygons[{i}]: expected [cell_id, ...ring of >= 3]"
            )
        if not all(0 <= p < len(points) for p in ids[1:]):
            raise SceneFormatError(f"{path}.polygons[{i}]: point index out of range")
        polygons.append(SlicePolygon(cell_id=ids[0], ring=tuple(ids[1:])))

    mesh = SliceMesh(
        w_value=w_value,
        points=tuple(points),
        segments=tuple(segments),
        polygons=tuple(polygons),
    )
    return placement, mesh


def scene_from_jsonable(obj) -> SceneDoc:
    """Validate a parsed document and rebuild the SceneDoc."""
    if not isinstance(obj, dict):
        raise SceneFormatError("$: expected a top-level object")
    version = _need(obj, "schema_version", str, "$")
    if version != SCHEMA_VERSION:
        raise SceneVersionError(
            f"unsupported schema_version {version!r}; supported: {SCHEMA_VERSION!r}"
        )

    rotation_row = _number_row(_need(obj, "rotation", list, "$"), 16, "$.rotation")
    stack_obj = _need(obj, "stack", dict, "$")
    layout_obj = _need(obj, "layout", dict, "$")
    try:
        stack = SliceStackConfig(
            delta_w=_need(stack_obj, "delta_w", float, "$.stack"),
            count=_need(stack_obj, "count", int, "$.stack"),
            w_origin=_need(stack_obj, "w_origin", float, "$.stack"),
            focus_steps=_need(stack_obj, "focus_steps", int, "$.stack"),
        )
        layout = LayoutParams(
            spacing=_need(layout_obj, "spacing", float, "$.layout"),
            curvature=_need(layout_obj, "curvature", float, "$.layout"),
            plane_height=_need(layout_obj, "plane_height", float, "$.layout"),
        )
    except ValueError as exc:
        raise SceneFormatError(f"$.stack/layout: {exc}") from exc

    slices = tuple(
        _read_slice(entry, f"$.slices[{i}]")
        for i, entry in enumerate(_need(obj, "slices", list, "$"))
    )

    pc_obj = _need(obj, "parallel_coords", dict, "$")
    channels = _need(pc_obj, "channels", list, "$.parallel_coords")
    colors = _need(pc_obj, "colors", list, "$.parallel_coords")
    if tuple(channels) != CHANNEL_NAMES or tuple(colors) != CHANNEL_COLORS:
        raise SceneFormatError(
            "$.parallel_coords: channel/color tags differ from x/y/z/w "
            "red/green/blue/yellow"
        )
    values = tuple(
        tuple(_number_row(row, 4, f"$.parallel_coords.values[{i}]"))
        for i, row in enumerate(_need(pc_obj, "values", list, "$.parallel_coords"))
    )

    return SceneDoc(
        polytope_name=_need(obj, "polytope_name", str, "$"),
        rotation=Rotation4.from_flat(rotation_row),
        stack=stack,
        layout=layout,
        slices=slices,
        parallel_coords=ParallelCoords(values=values),
        schema_version=version,
    )


def read_scene(data) -> SceneDoc:
    """Inverse of write_scene; malformed input raises with a location."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SceneFormatError(f"not UTF-8 at byte {exc.start}") from exc
    else:
        text = data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(
            f"malformed document at byte {exc.pos} "
            f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from exc
    return scene_from_jsonable(obj)


def export_mesh(
    mesh: SliceMesh, placement: SlicePlacement, rotation: Rotation4 | None = None
) -> bytes:
    """Wavefront OBJ of one slice in world coordinates.

    Vertex order follows mesh point order; ``p``/``l``/``f`` records follow
    point/segment/polygon order, 1-based.  An empty mesh has nothing to
    export and raises :class:`EmptyMeshError` so callers can skip the file.
    """
    if mesh.is_empty():
        raise EmptyMeshError(f"slice at w = {mesh.w_value} is empty")
    ox, oy, oz = placement.world_offset
    s = placement.scale
    lines = [f"# slice mesh, w_value {canonical_number(mesh.w_value)}"]
    if rotation is not None:
        lines.append(
            "# rotation " + " ".join(canonical_number(v) for v in rotation.flat())
        )
    lines.append(
        f"# points {len(mesh.points)} segments {len(mesh.segments)} "
        f"polygons {len(mesh.polygons)}"
    )
    for p in mesh.points:
        x, y, z = p.pos3
        lines.append(
            "v "
            + " ".join(
                canonical_number(v) for v in (ox + s * x, oy + s * y, oz + s * z)
            )
        )
    for i in range(len(mesh.points)):
        lines.append(f"p {i + 1}")
    for seg in mesh.segments:
        a, b = seg.endpoints
        lines.append(f"l {a + 1} {b + 1}")
    for poly in mesh.polygons:
        lines.append("f " + " ".join(str(i + 1) for i in poly.ring))
    return ("\n".join(lines) + "\n").encode("utf-8")
