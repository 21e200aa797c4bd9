"""4-D vectors and rotations acting on coordinate planes.

Rotations are plain 4x4 orthogonal matrices.  Simple rotations act on one
coordinate plane and fix the complementary plane pointwise; double rotations
combine two simple rotations on absolutely perpendicular planes (the generic
rotation in 4-D).  Everything here is an immutable value object and safe to
share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

AXIS_NAMES = "xyzw"

Row = tuple[float, float, float, float]


@dataclass(frozen=True, slots=True)
class Vec4:
    """A position in 4-D euclidean space, components in model units."""

    x: float
    y: float
    z: float
    w: float

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z
        yield self.w

    def as_tuple(self) -> Row:
        return (self.x, self.y, self.z, self.w)

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x + other.x, self.y + other.y, self.z + other.z, self.w + other.w)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x - other.x, self.y - other.y, self.z - other.z, self.w - other.w)

    def scaled(self, s: float) -> "Vec4":
        return Vec4(self.x * s, self.y * s, self.z * s, self.w * s)

    def dot(self, other: "Vec4") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z + self.w * other.w

    def norm(self) -> float:
        return math.sqrt(self.dot(self))


class RotationPlane(Enum):
    """The six unordered coordinate planes, as (lo, hi) axis index pairs."""

    XY = (0, 1)
    XZ = (0, 2)
    XW = (0, 3)
    YZ = (1, 2)
    YW = (1, 3)
    ZW = (2, 3)

    @property
    def axes(self) -> tuple[int, int]:
        return self.value

    @property
    def label(self) -> str:
        i, j = self.value
        return AXIS_NAMES[i] + AXIS_NAMES[j]


def plane_from_name(name: str) -> RotationPlane:
    """Look up a plane by its two-letter axis label, e.g. ``"yw"``."""
    key = "".join(sorted(name.strip().lower()))
    for plane in RotationPlane:
        if "".join(sorted(plane.label)) == key:
            return plane
    raise ValueError(f"unknown rotation plane {name!r}")


@dataclass(frozen=True, slots=True)
class PlanePair:
    """Two coordinate planes sharing no axis (absolutely perpendicular).

    Only three such pairs exist: (xy, zw), (xz, yw) and (xw, yz).
    """

    first: RotationPlane
    second: RotationPlane

    def __post_init__(self):
        if set(self.first.axes) & set(self.second.axes):
            raise ValueError(
                f"planes {self.first.label} and {self.second.label} share an axis"
            )

    @property
    def label(self) -> str:
        return f"{self.first.label},{self.second.label}"


DOUBLE_ROTATION_PAIRS = (
    PlanePair(RotationPlane.XY, RotationPlane.ZW),
    PlanePair(RotationPlane.XZ, RotationPlane.YW),
    PlanePair(RotationPlane.XW, RotationPlane.YZ),
)


def pair_from_name(name: str) -> PlanePair:
    """Look up a plane pair by label like ``"xw,yz"`` (order-insensitive)."""
    parts = [p for p in name.strip().lower().replace(" ", "").split(",") if p]
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated planes, got {name!r}")
    return PlanePair(plane_from_name(parts[0]), plane_from_name(parts[1]))


@dataclass(frozen=True, slots=True)
class Rotation4:
    """A 4x4 rotation matrix, rows in (x, y, z, w) order.

    Valid instances are orthogonal with determinant +1; the constructors in
    this module guarantee it and :func:`compose` re-orthonormalizes so long
    command chains do not drift.
    """

    rows: tuple[Row, Row, Row, Row]

    def flat(self) -> tuple[float, ...]:
        """The 16 entries, row-major."""
        return tuple(v for row in self.rows for v in row)

    @classmethod
    def from_flat(cls, values) -> "Rotation4":
        vals = [float(v) for v in values]
        if len(vals) != 16:
            raise ValueError(f"expected 16 matrix entries, got {len(vals)}")
        return cls(tuple(tuple(vals[4 * i : 4 * i + 4]) for i in range(4)))


IDENTITY = Rotation4(
    (
        (1.0, 0.0, 0.0, 0.0),
        (0.0, 1.0, 0.0, 0.0),
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
    )
)


def rotation_simple(plane: RotationPlane, alpha: float) -> Rotation4:
    """Rotation by ``alpha`` in one coordinate plane.

    For plane (p, q) with p before q in x<y<z<w order the convention is
    p' = p cos(a) - q sin(a), q' = p sin(a) + q cos(a).  The two complement
    axes are fixed exactly (their matrix entries are exact 0/1).
    """
    if not math.isfinite(alpha):
        raise ValueError("rotation angle must be finite")
    p, q = plane.axes
    c, s = math.cos(alpha), math.sin(alpha)
    rows = [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]
    rows[p][p] = c
    rows[p][q] = -s
    rows[q][p] = s
    rows[q][q] = c
    return Rotation4(tuple(tuple(row) for row in rows))


def rotation_double(pair: PlanePair, alpha: float, beta: float) -> Rotation4:
    """Combined rotation in two absolutely perpendicular planes.

    The two factors commute, so the result is independent of factor order.
    """
    return compose(rotation_simple(pair.first, alpha), rotation_simple(pair.second, beta))


def compose(a: Rotation4, b: Rotation4) -> Rotation4:
    """Rotation equal to applying ``b`` first, then ``a``, in the world frame.

    The matrix product is re-orthonormalized (Gram-Schmidt on rows) so that
    composing thousands of interactive rotations cannot drift away from the
    orthogonal group.
    """
    am, bm = a.rows, b.rows
    prod = tuple(
        tuple(
            am[i][0] * bm[0][j] + am[i][1] * bm[1][j] + am[i][2] * bm[2][j] + am[i][3] * bm[3][j]
            for j in range(4)
        )
        for i in range(4)
    )
    return Rotation4(_orthonormalized_rows(prod))


def _orthonormalized_rows(rows) -> tuple[Row, Row, Row, Row]:
    out: list[Row] = []
    for row in rows:
        v = list(row)
        for u in out:
            d = v[0] * u[0] + v[1] * u[1] + v[2] * u[2] + v[3] * u[3]
            v[0] -= d * u[0]
            v[1] -= d * u[1]
            v[2] -= d * u[2]
            v[3] -= d * u[3]
        n = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3])
        if n == 0.0:
            raise ValueError("degenerate matrix cannot be orthonormalized")
        out.append((v[0] / n, v[1] / n, v[2] / n, v[3] / n))
    return (out[0], out[1], out[2], out[3])


def apply(r: Rotation4, v: Vec4) -> Vec4:
    """Rotate a vector: the matrix-vector product r @ v (norm-preserving)."""
    m = r.rows
    x, y, z, w = v.x, v.y, v.z, v.w
    return Vec4(
        m[0][0] * x + m[0][1] * y + m[0][2] * z + m[0][3] * w,
        m[1][0] * x + m[1][1] * y + m[1][2] * z + m[1][3] * w,
        m[2][0] * x + m[2][1] * y + m[2][2] * z + m[2][3] * w,
        m[3][0] * x + m[3][1] * y + m[3][2] * z + m[3][3] * w,
    )


def orthogonality_defect(r: Rotation4) -> float:
    """Max absolute entry of (r^T r - I); 0 for a perfectly orthogonal matrix."""
    m = r.rows
    worst = 0.0
    for i in range(4):
        for j in range(4):
            dot = m[0][i] * m[0][j] + m[1][i] * m[1][j] + m[2][i] * m[2][j] + m[3][i] * m[3][j]
            target = 1.0 if i == j else 0.0
            worst = max(worst, abs(dot - target))
    return worst
