"""Interactive slicing of convex 4-polytopes by stacks of w = const
hyperplanes, with extrinsic 4-D rotations driven from the keyboard."""

from .geom4 import (
    DOUBLE_ROTATION_PAIRS,
    IDENTITY,
    PlanePair,
    Rotation4,
    RotationPlane,
    Vec4,
    apply,
    compose,
    pair_from_name,
    plane_from_name,
    rotation_double,
    rotation_simple,
)
from .multislice import (
    LayoutParams,
    ParallelCoords,
    SlicePlacement,
    SliceStackConfig,
    build_stack,
    layout,
    parallel_coords,
    shift_focus,
    stack_w_values,
)
from .polytope4 import (
    Polytope4,
    ValidationReport,
    make_hypercube,
    make_pentachoron,
    rotated_positions,
    validate,
)
from .scene_io import (
    EmptyMeshError,
    SceneDoc,
    SceneFormatError,
    SceneVersionError,
    export_mesh,
    read_scene,
    write_scene,
)
from .session import (
    Command,
    DecAngle,
    DoubleRotate,
    FocusLeft,
    FocusRight,
    IncAngle,
    Reset,
    SessionSettings,
    SessionState,
    SetPolytope,
    SimpleRotate,
    keymap,
    load_keymap,
    new_session,
    replay,
    run_script,
    snapshot,
    step,
)
from .slicer import (
    ConsistencyError,
    SliceMesh,
    SlicePoint,
    SlicePolygon,
    SliceSegment,
    slice_polytope,
)

__version__ = "0.1.0"

__all__ = [
    "DOUBLE_ROTATION_PAIRS",
    "IDENTITY",
    "PlanePair",
    "Rotation4",
    "RotationPlane",
    "Vec4",
    "apply",
    "compose",
    "pair_from_name",
    "plane_from_name",
    "rotation_double",
    "rotation_simple",
    "LayoutParams",
    "ParallelCoords",
    "SlicePlacement",
    "SliceStackConfig",
    "build_stack",
    "layout",
    "parallel_coords",
    "shift_focus",
    "stack_w_values",
    "Polytope4",
    "ValidationReport",
    "make_hypercube",
    "make_pentachoron",
    "rotated_positions",
    "validate",
    "EmptyMeshError",
    "SceneDoc",
    "SceneFormatError",
    "SceneVersionError",
    "export_mesh",
    "read_scene",
    "write_scene",
    "Command",
    "DecAngle",
    "DoubleRotate",
    "FocusLeft",
    "FocusRight",
    "IncAngle",
    "Reset",
    "SessionSettings",
    "SessionState",
    "SetPolytope",
    "SimpleRotate",
    "keymap",
    "load_keymap",
    "new_session",
    "replay",
    "run_script",
    "snapshot",
    "step",
    "ConsistencyError",
    "SliceMesh",
    "SlicePoint",
    "SlicePolygon",
    "SliceSegment",
    "slice_polytope",
]
