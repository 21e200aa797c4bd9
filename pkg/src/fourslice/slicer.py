"""Cross sections of a positioned 4-polytope by hyperplanes w = c.

Edges crossing the hyperplane yield slice points (drawn as balls), face
groups with two crossed perimeter edges yield segments (bars), and each
cell's segments chain into one closed convex polygon (semi-transparent
face).  All functions are pure; slices at different c values can run in
parallel with no shared state.

Degeneracy handling: a vertex within ``DEGENERACY_EPS`` of the hyperplane is
treated as lying infinitesimally on the positive side (symbolic
perturbation).  Every face then crosses on exactly 0 or 2 perimeter edges
and every sliced cell closes into a single ring, with no special-case mesh
elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geom4 import Rotation4, Vec4
from .polytope4 import Polytope4, rotated_positions

DEGENERACY_EPS = 1e-9

# Reference directions for normalizing polygon winding, tried in order when
# the ring normal is perpendicular to the previous one.
_ORIENT_REFS = (2, 1, 0)  # z, then y, then x component of the ring normal


class ConsistencyError(Exception):
    """The sliced combinatorics contradict themselves (broken perturbation)."""


@dataclass(frozen=True, slots=True)
class SlicePoint:
    """Crossing of one edge: parameter t from the lower-indexed endpoint."""

    edge_id: int
    t: float
    pos3: tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class SliceSegment:
    """Crossing of one face group; endpoints index into the mesh point list."""

    face_id: int
    endpoints: tuple[int, int]


@dataclass(frozen=True, slots=True)
class SlicePolygon:
    """Convex planar ring from one cell; ring entries index mesh points."""

    cell_id: int
    ring: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SliceMesh:
    """One 3-D cross section; empty when the hyperplane misses the polytope."""

    w_value: float
    points: tuple[SlicePoint, ...]
    segments: tuple[SliceSegment, ...]
    polygons: tuple[SlicePolygon, ...]

    def is_empty(self) -> bool:
        return not self.points


def slice_edges(positions, edges, c: float) -> list[SlicePoint]:
    """Slice points on edges whose endpoints straddle w = c.

    ``positions`` are already-rotated vertex coordinates.  An edge parallel
    to the hyperplane (both endpoints on one side, or both within the
    degeneracy band) emits nothing.
    """
    sides = [v.w - c >= -DEGENERACY_EPS for v in positions]
    points: list[SlicePoint] = []
    for eid, (i, j) in enumerate(edges):
        if sides[i] == sides[j]:
            continue
        a = positions[i]
        b = positions[j]
        t = (c - a.w) / (b.w - a.w)
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        s = 1.0 - t
        points.append(
            SlicePoint(
                edge_id=eid,
                t=t,
                pos3=(s * a.x + t * b.x, s * a.y + t * b.y, s * a.z + t * b.z),
            )
        )
    return points


def slice_faces(points, group_edges) -> list[SliceSegment]:
    """One segment per face group with exactly two crossed perimeter edges.

    ``group_edges`` lists each group's perimeter edge ids
    (``Polytope4.group_edges``).  A group with one or three crossed edges is
    impossible under consistent vertex sides and raises
    :class:`ConsistencyError`.
    """
    on_edge: dict[int, int] = {pt.edge_id: idx for idx, pt in enumerate(points)}
    segments: list[SliceSegment] = []
    for gid, perimeter in enumerate(group_edges):
        hits = [on_edge[e] for e in perimeter if e in on_edge]
        if not hits:
            continue
        if len(hits) != 2:
            raise ConsistencyError(
                f"face group {gid} crossed on {len(hits)} edges, expected 2"
            )
        segments.append(SliceSegment(face_id=gid, endpoints=(hits[0], hits[1])))
    return segments


def slice_cells(points, segments, cell_groups) -> list[SlicePolygon]:
    """Chain each cell's segments end-to-end into one closed convex ring.

    ``cell_groups`` lists the face-group ids bounding each cell
    (``Polytope4.cell_groups``).  Ring winding is normalized against the
    +z reference direction (falling back to +y, then +x, for perpendicular
    polygons) and each ring starts at its smallest point index.
    """
    seg_of_group: dict[int, SliceSegment] = {s.face_id: s for s in segments}
    polygons: list[SlicePolygon] = []
    for cid, groups in enumerate(cell_groups):
        cell_segs = [seg_of_group[g] for g in groups if g in seg_of_group]
        if not cell_segs:
            continue
        if len(cell_segs) < 3:
            raise ConsistencyError(
                f"cell {cid} has {len(cell_segs)} segments, cannot close a ring"
            )
        ring = _chain_ring(cid, cell_segs)
        ring = _normalize_ring(points, ring)
        polygons.append(SlicePolygon(cell_id=cid, ring=ring))
    return polygons


def _chain_ring(cid: int, segs) -> tuple[int, ...]:
    adjacency: dict[int, list[int]] = {}
    for seg in segs:
        a, b = seg.endpoints
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    if any(len(n) != 2 for n in adjacency.values()):
        raise ConsistencyError(f"cell {cid}: open chain in slice segments")
    start = min(adjacency)
    ring = [start]
    prev, cur = start, min(adjacency[start])
    while cur != start:
        ring.append(cur)
        n0, n1 = adjacency[cur]
        prev, cur = cur, (n1 if n0 == prev else n0)
    if len(ring) != len(segs):
        raise ConsistencyError(f"cell {cid}: segments split into multiple chains")
    return tuple(ring)


def _normalize_ring(points, ring: tuple[int, ...]) -> tuple[int, ...]:
    # Newell normal of the ring polygon
    nx = ny = nz = 0.0
    count = len(ring)
    for k in range(count):
        x0, y0, z0 = points[ring[k]].pos3
        x1, y1, z1 = points[ring[(k + 1) % count]].pos3
        nx += (y0 - y1) * (z0 + z1)
        ny += (z0 - z1) * (x0 + x1)
        nz += (x0 - x1) * (y0 + y1)
    normal = (nx, ny, nz)
    scale = max(abs(nx), abs(ny), abs(nz))
    key = 0.0
    for component in _ORIENT_REFS:
        key = normal[component]
        if abs(key) > 1e-12 * scale:
            break
    if key < 0.0:
        ring = ring[::-1]
    pivot = ring.index(min(ring))
    return ring[pivot:] + ring[:pivot]


def slice_positions(polytope: Polytope4, positions, c: float) -> SliceMesh:
    """Slice an already-positioned polytope; used to amortize rotation work."""
    points = slice_edges(positions, polytope.edges, c)
    if not points:
        return SliceMesh(w_value=c, points=(), segments=(), polygons=())
    segments = slice_faces(points, polytope.group_edges)
    polygons = slice_cells(points, segments, polytope.cell_groups)
    return SliceMesh(
        w_value=c,
        points=tuple(points),
        segments=tuple(segments),
        polygons=tuple(polygons),
    )


def slice_polytope(polytope: Polytope4, r: Rotation4, c: float) -> SliceMesh:
    """Cross-section of the rotated polytope by the hyperplane w = c.

    Output ordering is deterministic: points by edge index, segments by
    face-group index, polygons by cell index.
    """
    return slice_positions(polytope, rotated_positions(polytope, r), c)
