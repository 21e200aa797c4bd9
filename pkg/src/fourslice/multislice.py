"""The slice stack w = w_focus + n*delta_w, its parabola layout, and the
per-vertex parallel-coordinates extraction.

The focus slice is tracked as an integer step count from a fixed origin, so
shifting focus right and then left restores the configuration bit-exactly
(repeated float accumulation would not), and so the w value of any stack
position is a pure function of the step index: after one shift right the
center slice holds exactly the geometry its right neighbor held before.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .geom4 import Rotation4, Vec4
from .polytope4 import Polytope4, rotated_positions
from .slicer import SliceMesh, slice_positions

# Channel tags for the four coordinates, in coordinate order.
CHANNEL_NAMES = ("x", "y", "z", "w")
CHANNEL_COLORS = ("red", "green", "blue", "yellow")


@dataclass(frozen=True, slots=True)
class SliceStackConfig:
    """An odd-count stack of hyperplanes spaced delta_w apart.

    ``w_focus`` (the center slice's w value) is derived from ``w_origin``
    plus ``focus_steps`` whole shifts, never stored as a running float sum.
    """

    delta_w: float = 0.25
    count: int = 13
    w_origin: float = 0.0
    focus_steps: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta_w) and self.delta_w > 0):
            raise ValueError(f"delta_w must be positive and finite, got {self.delta_w}")
        if self.count <= 0 or self.count % 2 == 0:
            raise ValueError(f"count must be an odd positive integer, got {self.count}")
        if not math.isfinite(self.w_origin):
            raise ValueError(f"w_origin must be finite, got {self.w_origin}")

    @property
    def w_focus(self) -> float:
        return self.w_origin + self.focus_steps * self.delta_w


@dataclass(frozen=True, slots=True)
class LayoutParams:
    """Parabola placement: arc step, depth curvature, and plane height."""

    spacing: float = 2.5
    curvature: float = 0.15
    plane_height: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError(f"spacing must be positive and finite, got {self.spacing}")
        if not (math.isfinite(self.curvature) and self.curvature >= 0):
            raise ValueError(
                f"curvature must be non-negative and finite, got {self.curvature}"
            )


@dataclass(frozen=True, slots=True)
class SlicePlacement:
    """World pose of one slice: index n, its w value, offset, and scale."""

    slice_index: int
    w_value: float
    world_offset: tuple[float, float, float]
    scale: float


@dataclass(frozen=True, slots=True)
class ParallelCoords:
    """Per-vertex (x, y, z, w) channel values, in polytope vertex order."""

    values: tuple[tuple[float, float, float, float], ...]

    def channel(self, name: str) -> tuple[float, ...]:
        """All vertices' values for one coordinate channel ('x'..'w')."""
        k = CHANNEL_NAMES.index(name)
        return tuple(v[k] for v in self.values)

    def to_positions(self) -> list[Vec4]:
        """Exact reconstruction of the positions the channels came from."""
        return [Vec4(*v) for v in self.values]


def stack_w_values(cfg: SliceStackConfig) -> list[float]:
    """The N hyperplane offsets w_focus + n*delta_w, n ascending.

    Each value is computed as ``w_origin + k*delta_w`` for a single integer
    k, so stack positions are stable across focus shifts: position n after
    one right shift equals position n+1 before it, bit for bit.
    """
    half = (cfg.count - 1) // 2
    return [
        cfg.w_origin + (cfg.focus_steps + n) * cfg.delta_w
        for n in range(-half, half + 1)
    ]


def shift_focus(cfg: SliceStackConfig, direction: str) -> SliceStackConfig:
    """Move the focus slice one stack position left or right."""
    if direction == "right":
        return replace(cfg, focus_steps=cfg.focus_steps + 1)
    if direction == "left":
        return replace(cfg, focus_steps=cfg.focus_steps - 1)
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


def layout(cfg: SliceStackConfig, params: LayoutParams) -> list[SlicePlacement]:
    """Place slice n at (s*n, plane_height, -k*(s*n)^2), unit scale.

    The parabola recedes in depth (negative Z), so a perspective camera on
    the +Z side sees the stack as an oval with the focus slice nearest.
    """
    ws = stack_w_values(cfg)
    half = (cfg.count - 1) // 2
    placements = []
    for i, n in enumerate(range(-half, half + 1)):
        x = params.spacing * n
        placements.append(
            SlicePlacement(
                slice_index=n,
                w_value=ws[i],
                world_offset=(x, params.plane_height, -params.curvature * x * x),
                scale=1.0,
            )
        )
    return placements


def parallel_coords(positions) -> ParallelCoords:
    """Channel-tagged copy of the rotated vertex positions, vertex order kept."""
    return ParallelCoords(values=tuple((v.x, v.y, v.z, v.w) for v in positions))


def build_stack(
    polytope: Polytope4,
    r: Rotation4,
    cfg: SliceStackConfig,
    params: LayoutParams,
) -> list[tuple[SlicePlacement, SliceMesh]]:
    """Slice at every stack w value under one rotation, paired with placements.

    Vertices are rotated once and shared by all N slices, so a rotation
    update recomputes the whole stack in a single pass.
    """
    positions = rotated_positions(polytope, r)
    return [
        (placement, slice_positions(polytope, positions, placement.w_value))
        for placement in layout(cfg, params)
    ]
