import itertools
import math
import random

import pytest

from oracles import (
    closed_polyhedron_defect,
    crossing_param,
    facet_halfspaces,
    halfspace_violation,
    lerp4,
    plane_fit_deviation,
    ring_is_convex,
    simplex_split_counts,
    split_slice_counts,
)

from fourslice.geom4 import (
    DOUBLE_ROTATION_PAIRS,
    IDENTITY,
    RotationPlane,
    Vec4,
    compose,
    rotation_double,
    rotation_simple,
)
from fourslice.polytope4 import rotated_positions
from fourslice.slicer import (
    ConsistencyError,
    SlicePoint,
    SliceSegment,
    slice_cells,
    slice_edges,
    slice_faces,
    slice_polytope,
)

W_TOP = 4.0 / math.sqrt(10.0)
W_BASE = -1.0 / math.sqrt(10.0)


def random_rotation(rng):
    planes = list(RotationPlane)
    r = IDENTITY
    for _ in range(3):
        r = compose(rotation_simple(planes[rng.randrange(6)], rng.uniform(-3, 3)), r)
    r = compose(
        rotation_double(
            DOUBLE_ROTATION_PAIRS[rng.randrange(3)], rng.uniform(-3, 3), rng.uniform(-3, 3)
        ),
        r,
    )
    return r


def test_center_slice_points_match_interpolation_oracle(pentachoron):
    mesh = slice_polytope(pentachoron, IDENTITY, 0.0)
    apex_edges = {
        eid: pair for eid, pair in enumerate(pentachoron.edges) if 4 in pair
    }
    assert [p.edge_id for p in mesh.points] == sorted(apex_edges)
    for point in mesh.points:
        i, j = pentachoron.edges[point.edge_id]
        a, b = pentachoron.vertices[i], pentachoron.vertices[j]
        t = crossing_param(a, b, 0.0)
        assert t == pytest.approx(0.2, abs=1e-12)
        assert point.t == pytest.approx(t, abs=1e-12)
        lifted = lerp4(a, b, point.t)
        assert abs(lifted[3] - 0.0) < 1e-9
        for got, want in zip(point.pos3, lifted[:3]):
            assert got == pytest.approx(want, abs=1e-12)


def test_center_slice_is_regular_tetrahedron(pentachoron):
    mesh = slice_polytope(pentachoron, IDENTITY, 0.0)
    assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == (4, 6, 4)
    lengths = [
        math.dist(a.pos3, b.pos3)
        for a, b in itertools.combinations(mesh.points, 2)
    ]
    for length in lengths:
        assert length == pytest.approx(8.0 / 5.0, abs=1e-9)
    assert len(mesh.points) - len(mesh.segments) + len(mesh.polygons) == 2
    assert closed_polyhedron_defect(mesh) is None


def test_center_slice_faces_and_cells_are_the_apex_ones(pentachoron):
    mesh = slice_polytope(pentachoron, IDENTITY, 0.0)
    apex_faces = {fid for fid, face in enumerate(pentachoron.faces) if 4 in face}
    assert {s.face_id for s in mesh.segments} == apex_faces
    apex_cells = {
        cid for cid, verts in enumerate(pentachoron.cell_vertex_sets) if 4 in verts
    }
    assert {poly.cell_id for poly in mesh.polygons} == apex_cells
    assert all(len(poly.ring) == 3 for poly in mesh.polygons)


def test_segment_endpoints_lie_on_edges_of_their_face(pentachoron):
    mesh = slice_polytope(pentachoron, IDENTITY, 0.0)
    for seg in mesh.segments:
        face = set(pentachoron.faces[seg.face_id])
        edge_a = set(pentachoron.edges[mesh.points[seg.endpoints[0]].edge_id])
        edge_b = set(pentachoron.edges[mesh.points[seg.endpoints[1]].edge_id])
        assert edge_a != edge_b
        assert edge_a <= face and edge_b <= face


def test_hyperplane_missing_polytope_gives_empty_mesh(pentachoron):
    mesh = slice_polytope(pentachoron, IDENTITY, 2.0)
    assert mesh.is_empty()
    assert mesh.points == () and mesh.segments == () and mesh.polygons == ()


def test_empty_exactly_outside_vertex_extent(pentachoron):
    rng = random.Random(43)
    for _ in range(30):
        r = random_rotation(rng)
        ws = [v.w for v in rotated_positions(pentachoron, r)]
        lo, hi = min(ws), max(ws)
        inside = rng.uniform(lo + 1e-6, hi - 1e-6)
        assert not slice_polytope(pentachoron, r, inside).is_empty()
        assert slice_polytope(pentachoron, r, hi + 1e-6).is_empty()
        assert slice_polytope(pentachoron, r, lo - 1e-6).is_empty()


def test_parallel_edge_emits_nothing():
    positions = [Vec4(0, 0, 0, 1.0), Vec4(1, 0, 0, 1.0), Vec4(0, 1, 0, -1.0)]
    points = slice_edges(positions, [(0, 1), (0, 2), (1, 2)], 0.0)
    assert [p.edge_id for p in points] == [1, 2]


def test_prism_pose_combinatorics(pentachoron):
    r = rotation_simple(RotationPlane.YW, 0.9)
    positions = rotated_positions(pentachoron, r)
    above = sum(1 for v in positions if v.w > 0)
    assert above == 2
    mesh = slice_polytope(pentachoron, r, 0.0)
    v, e, f, tris, quads = simplex_split_counts(2)
    assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == (v, e, f)
    sizes = sorted(len(poly.ring) for poly in mesh.polygons)
    assert sizes == [3] * tris + [4] * quads
    assert closed_polyhedron_defect(mesh) is None


def test_split_counts_match_binomial_oracle(pentachoron):
    rng = random.Random(47)
    seen = set()
    for _ in range(200):
        r = random_rotation(rng)
        positions = rotated_positions(pentachoron, r)
        ws = sorted(v.w for v in positions)
        c = rng.uniform(ws[0] + 1e-6, ws[-1] - 1e-6)
        if min(abs(v.w - c) for v in positions) < 1e-6:
            continue
        above = sum(1 for v in positions if v.w > c)
        seen.add(above)
        mesh = slice_polytope(pentachoron, r, c)
        v, e, f, tris, quads = simplex_split_counts(above)
        assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == (v, e, f)
        sizes = sorted(len(poly.ring) for poly in mesh.polygons)
        assert sizes == [3] * tris + [4] * quads
    assert {1, 2, 3, 4} <= seen


def test_membership_in_rotated_halfspaces(pentachoron):
    rng = random.Random(53)
    for _ in range(50):
        r = random_rotation(rng)
        positions = rotated_positions(pentachoron, r)
        planes = facet_halfspaces(positions, pentachoron.cell_vertex_sets)
        ws = sorted(v.w for v in positions)
        c = rng.uniform(ws[0], ws[-1])
        mesh = slice_polytope(pentachoron, r, c)
        for point in mesh.points:
            lift = (*point.pos3, c)
            assert halfspace_violation(planes, lift) <= 1e-9


def test_slice_commutes_with_xy_rotation(pentachoron):
    # R_xy only turns the slice inside its hyperplane, so slicing after it
    # equals rotating the slice about the 3-D z axis
    rng = random.Random(59)
    for _ in range(20):
        r0 = random_rotation(rng)
        alpha = rng.uniform(-3, 3)
        ws = sorted(v.w for v in rotated_positions(pentachoron, r0))
        c = rng.uniform(ws[0] + 1e-6, ws[-1] - 1e-6)
        base = slice_polytope(pentachoron, r0, c)
        turned = slice_polytope(
            pentachoron, compose(rotation_simple(RotationPlane.XY, alpha), r0), c
        )
        assert [p.edge_id for p in base.points] == [p.edge_id for p in turned.points]
        ca, sa = math.cos(alpha), math.sin(alpha)
        for b, t in zip(base.points, turned.points):
            x, y, z = b.pos3
            expected = (x * ca - y * sa, x * sa + y * ca, z)
            for got, want in zip(t.pos3, expected):
                assert got == pytest.approx(want, abs=1e-9)


def test_degenerate_vertex_touch_is_consistent(pentachoron):
    # the apex sits exactly on the hyperplane; it counts as the positive
    # side, its four edges cross at t = 1, and the combinatorics stay the
    # 1|4 split with all crossing points collapsed onto the apex
    mesh = slice_polytope(pentachoron, IDENTITY, W_TOP)
    assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == (4, 6, 4)
    apex = pentachoron.vertices[4]
    for point in mesh.points:
        assert point.t == 1.0
        assert math.dist(point.pos3, (apex.x, apex.y, apex.z)) < 1e-12


def test_base_cell_touch_gives_empty_mesh(pentachoron):
    # all four base vertices land in the degeneracy band and join the apex
    # on the positive side: nothing crosses
    assert slice_polytope(pentachoron, IDENTITY, W_BASE).is_empty()
    assert slice_polytope(pentachoron, IDENTITY, W_BASE + 1e-12).is_empty()


def test_face_with_single_crossing_is_inconsistent():
    points = [SlicePoint(edge_id=0, t=0.5, pos3=(0.0, 0.0, 0.0))]
    with pytest.raises(ConsistencyError):
        slice_faces(points, ((0, 1, 2),))


def test_open_chain_is_inconsistent():
    points = [SlicePoint(i, 0.5, (float(i), 0.0, 0.0)) for i in range(4)]
    segments = [
        SliceSegment(0, (0, 1)),
        SliceSegment(1, (1, 2)),
        SliceSegment(2, (2, 3)),
    ]
    with pytest.raises(ConsistencyError):
        slice_cells(points, segments, ((0, 1, 2),))


def test_split_rings_are_inconsistent():
    points = [SlicePoint(i, 0.5, (float(i), 0.0, 0.0)) for i in range(6)]
    segments = [
        SliceSegment(0, (0, 1)),
        SliceSegment(1, (1, 2)),
        SliceSegment(2, (2, 0)),
        SliceSegment(3, (3, 4)),
        SliceSegment(4, (4, 5)),
        SliceSegment(5, (5, 3)),
    ]
    with pytest.raises(ConsistencyError):
        slice_cells(points, segments, ((0, 1, 2, 3, 4, 5),))


def newell_normal(ring_points):
    nx = ny = nz = 0.0
    n = len(ring_points)
    for k in range(n):
        x0, y0, z0 = ring_points[k]
        x1, y1, z1 = ring_points[(k + 1) % n]
        nx += (y0 - y1) * (z0 + z1)
        ny += (z0 - z1) * (x0 + x1)
        nz += (x0 - x1) * (y0 + y1)
    return (nx, ny, nz)


def test_ring_orientation_and_start_are_canonical(hypercube):
    mesh = slice_polytope(hypercube, IDENTITY, 0.0)
    assert len(mesh.polygons) == 6
    for poly in mesh.polygons:
        assert poly.ring[0] == min(poly.ring)
        nx, ny, nz = newell_normal([mesh.points[i].pos3 for i in poly.ring])
        scale = max(abs(nx), abs(ny), abs(nz))
        for key in (nz, ny, nx):
            if abs(key) > 1e-12 * scale:
                assert key > 0
                break


def test_output_ordering_is_deterministic(pentachoron):
    rng = random.Random(61)
    for _ in range(10):
        r = random_rotation(rng)
        ws = sorted(v.w for v in rotated_positions(pentachoron, r))
        c = rng.uniform(ws[0] + 1e-6, ws[-1] - 1e-6)
        mesh = slice_polytope(pentachoron, r, c)
        edge_ids = [p.edge_id for p in mesh.points]
        assert edge_ids == sorted(edge_ids)
        face_ids = [s.face_id for s in mesh.segments]
        assert face_ids == sorted(face_ids)
        cell_ids = [poly.cell_id for poly in mesh.polygons]
        assert cell_ids == sorted(cell_ids)


def test_parameter_always_from_lower_indexed_endpoint(pentachoron):
    rng = random.Random(67)
    for _ in range(20):
        r = random_rotation(rng)
        positions = rotated_positions(pentachoron, r)
        ws = sorted(v.w for v in positions)
        c = rng.uniform(ws[0] + 1e-6, ws[-1] - 1e-6)
        mesh = slice_polytope(pentachoron, r, c)
        for point in mesh.points:
            i, j = pentachoron.edges[point.edge_id]
            assert i < j
            assert 0.0 <= point.t <= 1.0
            assert point.t == pytest.approx(
                crossing_param(positions[i], positions[j], c), abs=1e-12
            )


def test_hypercube_center_slice_is_cube(hypercube):
    mesh = slice_polytope(hypercube, IDENTITY, 0.0)
    assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == (8, 12, 6)
    assert all(len(poly.ring) == 4 for poly in mesh.polygons)
    assert closed_polyhedron_defect(mesh) is None
    expected = split_slice_counts(hypercube, hypercube.vertices, 0.0)
    assert expected == (8, 12, 6)


def test_hypercube_tilted_slices_stay_closed(hypercube):
    rng = random.Random(71)
    for _ in range(30):
        r = random_rotation(rng)
        positions = rotated_positions(hypercube, r)
        ws = sorted(v.w for v in positions)
        c = rng.uniform(ws[0] + 1e-5, ws[-1] - 1e-5)
        if min(abs(v.w - c) for v in positions) < 1e-6:
            continue
        mesh = slice_polytope(hypercube, r, c)
        assert closed_polyhedron_defect(mesh) is None
        predicted = split_slice_counts(hypercube, positions, c)
        assert (len(mesh.points), len(mesh.segments), len(mesh.polygons)) == predicted


def test_polygon_planarity_under_rotation(pentachoron):
    rng = random.Random(73)
    for _ in range(30):
        r = random_rotation(rng)
        ws = sorted(v.w for v in rotated_positions(pentachoron, r))
        c = rng.uniform(ws[0] + 1e-6, ws[-1] - 1e-6)
        mesh = slice_polytope(pentachoron, r, c)
        for poly in mesh.polygons:
            ring_points = [mesh.points[i].pos3 for i in poly.ring]
            assert plane_fit_deviation(ring_points) < 1e-9
            assert ring_is_convex(ring_points)
