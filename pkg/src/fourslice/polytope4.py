"""Convex 4-polytopes: combinatorial structure plus base coordinates.

A polytope stores its faces as triangles.  Non-triangular faces (the
hypercube's squares) are split into triangles sharing a *face group* id, so
downstream geometry has a single code path; the group is the unit that
behaves like one face for counting and slicing.  Cells reference faces by
index and form closed 3-D boundaries.

Instances are immutable after construction and safe to share across threads;
derived incidence tables are cached lazily.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property

from .geom4 import Rotation4, Vec4, apply

Edge = tuple[int, int]
Face = tuple[int, int, int]


@dataclass(frozen=True)
class Polytope4:
    """Immutable 4-polytope with triangular faces in coplanar groups.

    ``face_groups[i]`` is the group id of ``faces[i]``; group ids are
    contiguous from 0.  For a simplex every triangle is its own group; for
    the hypercube each square contributes two triangles with one group id.
    """

    name: str
    vertices: tuple[Vec4, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    face_groups: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]

    @cached_property
    def group_count(self) -> int:
        return max(self.face_groups) + 1 if self.face_groups else 0

    @cached_property
    def edge_ids(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def group_edges(self) -> tuple[tuple[int, ...], ...]:
        """Perimeter edge ids per face group.

        A side that appears once among a group's triangles is on the group
        perimeter; a side appearing twice is an internal split diagonal.
        """
        sides: dict[int, Counter] = defaultdict(Counter)
        for fid, (a, b, c) in enumerate(self.faces):
            g = self.face_groups[fid]
            sides[g].update(((a, b), (a, c), (b, c)))
        result = []
        for g in range(self.group_count):
            perimeter = sorted(
                self.edge_ids[s]
                for s, count in sides[g].items()
                if count == 1 and s in self.edge_ids
            )
            result.append(tuple(perimeter))
        return tuple(result)

    @cached_property
    def cell_groups(self) -> tuple[tuple[int, ...], ...]:
        """Distinct face-group ids per cell, each sorted ascending."""
        result = []
        for cell in self.cells:
            groups = {
                self.face_groups[fid] for fid in cell if 0 <= fid < len(self.faces)
            }
            result.append(tuple(sorted(groups)))
        return tuple(result)

    @cached_property
    def face_to_cells(self) -> tuple[tuple[int, ...], ...]:
        owners: list[list[int]] = [[] for _ in self.faces]
        for cid, cell in enumerate(self.cells):
            for fid in cell:
                if 0 <= fid < len(self.faces):
                    owners[fid].append(cid)
        return tuple(tuple(o) for o in owners)

    @cached_property
    def cell_vertex_sets(self) -> tuple[frozenset[int], ...]:
        result = []
        for cell in self.cells:
            verts: set[int] = set()
            for fid in cell:
                if 0 <= fid < len(self.faces):
                    verts.update(self.faces[fid])
            result.append(frozenset(verts))
        return tuple(result)


@dataclass(frozen=True)
class CheckFailure:
    name: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[CheckFailure, ...]


def make_pentachoron(edge_length: float) -> Polytope4:
    """The regular 4-simplex: 5 vertices, 10 edges, 10 faces, 5 cells.

    Vertex coordinates are the fixed symmetric placement with centroid at
    the origin and edge length 2, scaled by ``edge_length / 2``.
    """
    if edge_length <= 0:
        raise ValueError("edge_length must be positive")
    s = edge_length / 2.0
    r3 = math.sqrt(3.0)
    r6 = math.sqrt(6.0)
    r10 = math.sqrt(10.0)
    base = (
        (-1.0, -1.0 / r3, -1.0 / r6, -1.0 / r10),
        (1.0, -1.0 / r3, -1.0 / r6, -1.0 / r10),
        (0.0, 2.0 / r3, -1.0 / r6, -1.0 / r10),
        (0.0, 0.0, math.sqrt(3.0) / math.sqrt(2.0), -1.0 / r10),
        (0.0, 0.0, 0.0, 4.0 / r10),
    )
    vertices = tuple(Vec4(x * s, y * s, z * s, w * s) for x, y, z, w in base)
    edges = tuple(itertools.combinations(range(5), 2))
    faces = tuple(itertools.combinations(range(5), 3))
    face_id = {f: i for i, f in enumerate(faces)}
    cells = tuple(
        tuple(face_id[f] for f in itertools.combinations(quad, 3))
        for quad in itertools.combinations(range(5), 4)
    )
    return Polytope4(
        name="pentachoron",
        vertices=vertices,
        edges=edges,
        faces=faces,
        face_groups=tuple(range(len(faces))),
        cells=cells,
    )


def make_hypercube(edge_length: float) -> Polytope4:
    """The 4-cube: 16 vertices, 32 edges, 24 square faces, 8 cubic cells.

    Squares are stored as two triangles per coplanar group.  Vertex index
    encodes the sign pattern: bit (3 - axis) set means +h on that axis.
    """
    if edge_length <= 0:
        raise ValueError("edge_length must be positive")
    h = edge_length / 2.0
    coords = tuple(itertools.product((-h, h), repeat=4))
    vertices = tuple(Vec4(*c) for c in coords)

    def vertex_index(bits: dict[int, int]) -> int:
        return sum(bit << (3 - axis) for axis, bit in bits.items())

    edge_set = set()
    for idx in range(16):
        for axis in range(4):
            edge_set.add(tuple(sorted((idx, idx ^ (1 << (3 - axis))))))
    edges = tuple(sorted(edge_set))

    # Quads: two free axes, the other two pinned to a sign each.  Corners in
    # cyclic order so the triangle split (0,1,2) + (0,2,3) is consistent.
    quads: list[tuple[int, int, int, int]] = []
    for free in itertools.combinations(range(4), 2):
        pinned = [axis for axis in range(4) if axis not in free]
        for signs in itertools.product((0, 1), repeat=2):
            fixed = dict(zip(pinned, signs))
            ring = []
            for sa, sb in ((0, 0), (1, 0), (1, 1), (0, 1)):
                bits = dict(fixed)
                bits[free[0]] = sa
                bits[free[1]] = sb
                ring.append(vertex_index(bits))
            quads.append(tuple(ring))

    tagged: list[tuple[Face, int]] = []
    for quad_id, (v0, v1, v2, v3) in enumerate(quads):
        tagged.append((tuple(sorted((v0, v1, v2))), quad_id))
        tagged.append((tuple(sorted((v0, v2, v3))), quad_id))
    tagged.sort()
    faces = tuple(f for f, _ in tagged)
    group_of_quad: dict[int, int] = {}
    face_groups = []
    for _, quad_id in tagged:
        if quad_id not in group_of_quad:
            group_of_quad[quad_id] = len(group_of_quad)
        face_groups.append(group_of_quad[quad_id])

    quad_faces: dict[int, list[int]] = defaultdict(list)
    for fid, (_, quad_id) in enumerate(tagged):
        quad_faces[quad_id].append(fid)

    cells = []
    for axis in range(4):
        for sign in (0, 1):
            members = [
                quad_id
                for quad_id, quad in enumerate(quads)
                if all((v >> (3 - axis)) & 1 == sign for v in quad)
            ]
            cell = sorted(fid for quad_id in members for fid in quad_faces[quad_id])
            cells.append(tuple(cell))
    cells.sort()

    return Polytope4(
        name="hypercube",
        vertices=vertices,
        edges=edges,
        faces=faces,
        face_groups=tuple(face_groups),
        cells=tuple(cells),
    )


def rotated_positions(p: Polytope4, r: Rotation4) -> tuple[Vec4, ...]:
    """Vertex positions under an extrinsic rotation; base coordinates untouched."""
    return tuple(apply(r, v) for v in p.vertices)


def validate(p: Polytope4) -> ValidationReport:
    """Run structural checks; failures are reported, never raised."""
    failures: list[CheckFailure] = []

    def fail(name: str, detail: str) -> None:
        failures.append(CheckFailure(name, detail))

    nv, ne, nf = len(p.vertices), len(p.edges), len(p.faces)

    bad_edges = [e for e in p.edges if not all(0 <= v < nv for v in e)]
    if bad_edges:
        fail("edge_vertex_range", f"{len(bad_edges)} edges reference missing vertices")
    bad_faces = [f for f in p.faces if not all(0 <= v < nv for v in f)]
    if bad_faces:
        fail("face_vertex_range", f"{len(bad_faces)} faces reference missing vertices")
    bad_cells = [
        (cid, fid)
        for cid, cell in enumerate(p.cells)
        for fid in cell
        if not 0 <= fid < nf
    ]
    if bad_cells:
        fail("face_index_range", f"cell face indices out of range: {bad_cells[:5]}")

    if len(set(p.edges)) != ne:
        fail("duplicate_edges", "edge list contains duplicates")
    if len(set(p.faces)) != nf:
        fail("duplicate_faces", "face list contains duplicates")

    edge_set = set(p.edges)
    for fid, (a, b, c) in enumerate(p.faces):
        covered = set()
        for side in ((a, b), (a, c), (b, c)):
            if side in edge_set:
                covered.update(side)
        if not {a, b, c} <= covered:
            fail("face_edge_cover", f"face {fid} vertices not covered by its edges")
            break

    euler = nv - ne + p.group_count - len(p.cells)
    if euler != 0:
        fail("euler_poincare", f"V-E+F-C = {euler}, expected 0")

    if not bad_edges and not bad_faces:
        side_count: Counter = Counter()
        for a, b, c in p.faces:
            side_count.update(s for s in ((a, b), (a, c), (b, c)) if s in edge_set)
        under = [e for e in p.edges if side_count[e] < 2]
        if under:
            fail("edge_face_incidence", f"{len(under)} edges on fewer than 2 faces")

    wrong_owner = [
        fid for fid, owners in enumerate(p.face_to_cells) if len(owners) != 2
    ]
    if wrong_owner:
        fail("face_cell_incidence", f"{len(wrong_owner)} faces not shared by exactly 2 cells")

    if p.name == "pentachoron" and not bad_faces and not bad_cells:
        for eid, (a, b) in enumerate(p.edges):
            around = sum(1 for verts in p.cell_vertex_sets if a in verts and b in verts)
            if around != 3:
                fail(
                    "edge_cell_incidence",
                    f"edge {eid} belongs to {around} cells, expected 3",
                )
                break

    if not bad_edges and not bad_faces:
        hull_failure = _hull_failure(p)
        if hull_failure:
            fail("convexity_hull", hull_failure)

    return ValidationReport(ok=not failures, failures=tuple(failures))


def _hull_failure(p: Polytope4) -> str | None:
    """Every vertex must lie on the convex hull (no strictly interior vertex)."""
    import numpy as np
    from scipy.spatial import ConvexHull

    points = np.array([v.as_tuple() for v in p.vertices])
    try:
        hull = ConvexHull(points)
    except Exception as exc:  # degenerate input is a validity failure, not a crash
        return f"hull computation failed: {exc}"
    missing = sorted(set(range(len(p.vertices))) - set(int(i) for i in hull.vertices))
    if missing:
        return f"vertices strictly inside the hull: {missing}"
    return None
