"""Interactive session state: keyboard commands, angle control, replay.

Every command is a pure transition on an immutable SessionState and is
appended to the state's command log, so replaying the log from a fresh
session with the same settings reproduces the final scene byte for byte.

The angle step is tracked as a founding value plus an integer count of
increments; the effective angle is recomputed from that expression (and
clamped) on every read.  An increment followed by a decrement therefore
restores the angle bit-exactly, with no float accumulation drift, even
when the clamp is active.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Union

from .geom4 import (
    DOUBLE_ROTATION_PAIRS,
    IDENTITY,
    PlanePair,
    Rotation4,
    RotationPlane,
    compose,
    pair_from_name,
    plane_from_name,
    rotation_double,
    rotation_simple,
)
from .multislice import (
    LayoutParams,
    SliceStackConfig,
    build_stack,
    parallel_coords,
    shift_focus,
)
from .polytope4 import (
    Polytope4,
    make_hypercube,
    make_pentachoron,
    rotated_positions,
)
from .scene_io import SceneDoc

ANGLE_INCREMENT = math.pi / 64
ALPHA_MIN = -math.pi / 2
ALPHA_MAX = math.pi / 2

DEFAULT_ALPHA = math.pi / 8
DEFAULT_BETA = math.pi / math.sqrt(3) - math.pi / 8

POLYTOPE_BUILDERS = {
    "pentachoron": make_pentachoron,
    "hypercube": make_hypercube,
}


@dataclass(frozen=True)
class SimpleRotate:
    plane: RotationPlane


@dataclass(frozen=True)
class DoubleRotate:
    pair: PlanePair


@dataclass(frozen=True)
class IncAngle:
    pass


@dataclass(frozen=True)
class DecAngle:
    pass


@dataclass(frozen=True)
class FocusRight:
    pass


@dataclass(frozen=True)
class FocusLeft:
    pass


@dataclass(frozen=True)
class Reset:
    pass


@dataclass(frozen=True)
class SetPolytope:
    name: str


Command = Union[
    SimpleRotate,
    DoubleRotate,
    IncAngle,
    DecAngle,
    FocusRight,
    FocusLeft,
    Reset,
    SetPolytope,
]


@dataclass(frozen=True)
class ChangeEvent:
    """Names of the state fields a command changed."""

    changed: tuple[str, ...]


@dataclass(frozen=True)
class SessionSettings:
    """Founding parameters; Reset returns the session to these."""

    polytope_name: str = "pentachoron"
    edge_length: float = 2.0
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    stack: SliceStackConfig = field(default_factory=SliceStackConfig)
    layout: LayoutParams = field(default_factory=LayoutParams)


@dataclass(frozen=True)
class SessionState:
    settings: SessionSettings
    polytope: Polytope4
    accumulated_rotation: Rotation4
    alpha_steps: int
    beta_step: float
    stack: SliceStackConfig
    layout: LayoutParams
    command_log: tuple[Command, ...]

    @property
    def alpha_step(self) -> float:
        """Effective simple/double rotation angle, clamped to its range."""
        alpha = self.settings.alpha + self.alpha_steps * ANGLE_INCREMENT
        return min(max(alpha, ALPHA_MIN), ALPHA_MAX)


def build_polytope(name: str, edge_length: float) -> Polytope4:
    try:
        builder = POLYTOPE_BUILDERS[name]
    except KeyError:
        known = ", ".join(sorted(POLYTOPE_BUILDERS))
        raise ValueError(f"unknown polytope {name!r}; known: {known}") from None
    return builder(edge_length)


def new_session(settings: SessionSettings | None = None) -> SessionState:
    settings = settings or SessionSettings()
    return SessionState(
        settings=settings,
        polytope=build_polytope(settings.polytope_name, settings.edge_length),
        accumulated_rotation=IDENTITY,
        alpha_steps=0,
        beta_step=settings.beta,
        stack=settings.stack,
        layout=settings.layout,
        command_log=(),
    )


def _advance(
    state: SessionState, cmd: Command, changed: tuple[str, ...], **updates
) -> tuple[SessionState, ChangeEvent]:
    new = replace(state, command_log=state.command_log + (cmd,), **updates)
    return new, ChangeEvent(changed)


def step(state: SessionState, cmd: Command) -> tuple[SessionState, ChangeEvent]:
    """Apply one command; returns the new state and what changed.

    Rotations compose extrinsically: the new factor multiplies the
    accumulated matrix from the left (world frame).
    """
    if isinstance(cmd, SimpleRotate):
        rot = compose(
            rotation_simple(cmd.plane, state.alpha_step), state.accumulated_rotation
        )
        return _advance(state, cmd, ("rotation",), accumulated_rotation=rot)
    if isinstance(cmd, DoubleRotate):
        rot = compose(
            rotation_double(cmd.pair, state.alpha_step, state.beta_step),
            state.accumulated_rotation,
        )
        return _advance(state, cmd, ("rotation",), accumulated_rotation=rot)
    if isinstance(cmd, IncAngle):
        return _advance(
            state, cmd, ("alpha_step",), alpha_steps=state.alpha_steps + 1
        )
    if isinstance(cmd, DecAngle):
        return _advance(
            state, cmd, ("alpha_step",), alpha_steps=state.alpha_steps - 1
        )
    if isinstance(cmd, FocusRight):
        return _advance(state, cmd, ("stack",), stack=shift_focus(state.stack, "right"))
    if isinstance(cmd, FocusLeft):
        return _advance(state, cmd, ("stack",), stack=shift_focus(state.stack, "left"))
    if isinstance(cmd, Reset):
        fresh = new_session(state.settings)
        return _advance(
            state,
            cmd,
            ("polytope", "rotation", "alpha_step", "stack", "layout"),
            polytope=fresh.polytope,
            accumulated_rotation=fresh.accumulated_rotation,
            alpha_steps=fresh.alpha_steps,
            beta_step=fresh.beta_step,
            stack=fresh.stack,
            layout=fresh.layout,
        )
    if isinstance(cmd, SetPolytope):
        polytope = build_polytope(cmd.name, state.settings.edge_length)
        return _advance(state, cmd, ("polytope",), polytope=polytope)
    raise TypeError(f"unknown command {cmd!r}")


# Keyboard layout (vi convention): digits drive simple rotations with '2'
# on the x-y plane, 'y'/'u'/'i' the three double rotations with 'y' on
# (xy, zw), 'k'/'j' raise/lower the angle, 'h'/'l' shift focus, 'r' resets.
DEFAULT_KEYMAP: dict[str, Command] = {
    "1": SimpleRotate(RotationPlane.ZW),
    "2": SimpleRotate(RotationPlane.XY),
    "3": SimpleRotate(RotationPlane.XZ),
    "4": SimpleRotate(RotationPlane.XW),
    "5": SimpleRotate(RotationPlane.YZ),
    "6": SimpleRotate(RotationPlane.YW),
    "y": DoubleRotate(DOUBLE_ROTATION_PAIRS[0]),
    "u": DoubleRotate(DOUBLE_ROTATION_PAIRS[1]),
    "i": DoubleRotate(DOUBLE_ROTATION_PAIRS[2]),
    "k": IncAngle(),
    "j": DecAngle(),
    "l": FocusRight(),
    "h": FocusLeft(),
    "r": Reset(),
}


def keymap(key: str, table: dict[str, Command] | None = None) -> Command | None:
    """Command bound to a key, or None for unbound keys (no-op)."""
    return (DEFAULT_KEYMAP if table is None else table).get(key)


def parse_action(text: str) -> Command | None:
    """One keymap action: 'simple:yw', 'double:xw,yz', 'polytope:hypercube',
    'inc_angle', 'dec_angle', 'focus_right', 'focus_left', 'reset', 'none'."""
    head, _, arg = text.strip().partition(":")
    head = head.strip().lower()
    arg = arg.strip().lower()
    if head == "simple":
        return SimpleRotate(plane_from_name(arg))
    if head == "double":
        return DoubleRotate(pair_from_name(arg))
    if head == "polytope":
        if arg not in POLYTOPE_BUILDERS:
            raise ValueError(f"unknown polytope {arg!r}")
        return SetPolytope(arg)
    fixed = {
        "inc_angle": IncAngle(),
        "dec_angle": DecAngle(),
        "focus_right": FocusRight(),
        "focus_left": FocusLeft(),
        "reset": Reset(),
        "none": None,
    }
    if head in fixed and not arg:
        return fixed[head]
    raise ValueError(f"unknown keymap action {text.strip()!r}")


def load_keymap(text: str) -> dict[str, Command]:
    """Default keymap overlaid with '<key> <action>' lines; '#' comments.

    Binding a key to 'none' removes it.  Raises ValueError naming the bad
    line on any parse problem.
    """
    table = dict(DEFAULT_KEYMAP)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2 or len(parts[0]) != 1:
            raise ValueError(
                f"keymap line {lineno}: expected '<key> <action>', got {raw!r}"
            )
        key, action_text = parts
        try:
            action = parse_action(action_text)
        except ValueError as exc:
            raise ValueError(f"keymap line {lineno}: {exc}") from exc
        if action is None:
            table.pop(key, None)
        else:
            table[key] = action
    return table


@dataclass(frozen=True)
class ScriptReport:
    applied: int
    skipped: int
    unknown_keys: tuple[str, ...]


def script_keys(text: str) -> list[str]:
    """Key characters from script text; '#' starts a comment, blanks ignored."""
    keys = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        keys.extend(ch for ch in line if not ch.isspace())
    return keys


def run_script(
    state: SessionState, text: str, table: dict[str, Command] | None = None
) -> tuple[SessionState, ScriptReport]:
    """Fold the script's keys through the keymap; unknown keys are skipped."""
    applied = 0
    unknown: list[str] = []
    for key in script_keys(text):
        cmd = keymap(key, table)
        if cmd is None:
            unknown.append(key)
            continue
        state, _ = step(state, cmd)
        applied += 1
    return state, ScriptReport(
        applied=applied, skipped=len(unknown), unknown_keys=tuple(unknown)
    )


def replay(settings: SessionSettings, commands) -> SessionState:
    """Rebuild the state a command log describes, from a fresh session."""
    state = new_session(settings)
    for cmd in commands:
        state, _ = step(state, cmd)
    return state


def snapshot(state: SessionState) -> SceneDoc:
    """Full scene document for the current state."""
    return SceneDoc(
        polytope_name=state.polytope.name,
        rotation=state.accumulated_rotation,
        stack=state.stack,
        layout=state.layout,
        slices=tuple(
            build_stack(
                state.polytope, state.accumulated_rotation, state.stack, state.layout
            )
        ),
        parallel_coords=parallel_coords(
            rotated_positions(state.polytope, state.accumulated_rotation)
        ),
    )


def command_to_obj(cmd: Command) -> dict:
    """Plain-dict form of a command, for session logs."""
    if isinstance(cmd, SimpleRotate):
        return {"cmd": "simple_rotate", "plane": cmd.plane.label}
    if isinstance(cmd, DoubleRotate):
        return {"cmd": "double_rotate", "pair": cmd.pair.label}
    if isinstance(cmd, IncAngle):
        return {"cmd": "inc_angle"}
    if isinstance(cmd, DecAngle):
        return {"cmd": "dec_angle"}
    if isinstance(cmd, FocusRight):
        return {"cmd": "focus_right"}
    if isinstance(cmd, FocusLeft):
        return {"cmd": "focus_left"}
    if isinstance(cmd, Reset):
        return {"cmd": "reset"}
    if isinstance(cmd, SetPolytope):
        return {"cmd": "set_polytope", "name": cmd.name}
    raise TypeError(f"unknown command {cmd!r}")


def command_from_obj(obj: dict) -> Command:
    """Inverse of command_to_obj."""
    tag = obj.get("cmd")
    if tag == "simple_rotate":
        return SimpleRotate(plane_from_name(obj["plane"]))
    if tag == "double_rotate":
        return DoubleRotate(pair_from_name(obj["pair"]))
    if tag == "inc_angle":
        return IncAngle()
    if tag == "dec_angle":
        return DecAngle()
    if tag == "focus_right":
        return FocusRight()
    if tag == "focus_left":
        return FocusLeft()
    if tag == "reset":
        return Reset()
    if tag == "set_polytope":
        return SetPolytope(obj["name"])
    raise ValueError(f"unknown command tag {tag!r}")
