"""Live session service: text frames in, full scene snapshots out.

The core is a transport-free, synchronous message handler so it can be
tested and embedded directly; a WebSocket adapter wraps it for browsers.
Inbound frames are single-line JSON objects:

    {"type": "key", "key": "2"}
    {"type": "set", "field": "delta_w", "value": 0.5}

Every state change pushes one full SceneDoc frame (snapshots, not deltas),
so clients stay stateless and can resynchronize from any frame.  Malformed
input yields an error frame and the session continues.

Setting a numeric field rebuilds the founding settings and replays the
whole command log under them, as if the session had started with that
value; "polytope" routes through the logged SetPolytope command instead.
"""

import json
from dataclasses import replace

from .multislice import LayoutParams, SliceStackConfig
from .scene_io import dumps_canonical, scene_to_jsonable
from .session import (
    Command,
    SessionSettings,
    SessionState,
    SetPolytope,
    command_from_obj,
    command_to_obj,
    keymap,
    new_session,
    replay,
    snapshot,
    step,
)

_FLOAT_FIELDS = {
    "edge_length",
    "alpha",
    "beta",
    "delta_w",
    "spacing",
    "curvature",
    "plane_height",
}
_INT_FIELDS = {"count"}


def settings_to_obj(settings: SessionSettings) -> dict:
    return {
        "polytope_name": settings.polytope_name,
        "edge_length": settings.edge_length,
        "alpha": settings.alpha,
        "beta": settings.beta,
        "stack": {
            "delta_w": settings.stack.delta_w,
            "count": settings.stack.count,
            "w_origin": settings.stack.w_origin,
            "focus_steps": settings.stack.focus_steps,
        },
        "layout": {
            "spacing": settings.layout.spacing,
            "curvature": settings.layout.curvature,
            "plane_height": settings.layout.plane_height,
        },
    }


def settings_from_obj(obj: dict) -> SessionSettings:
    stack = obj["stack"]
    layout = obj["layout"]
    return SessionSettings(
        polytope_name=obj["polytope_name"],
        edge_length=obj["edge_length"],
        alpha=obj["alpha"],
        beta=obj["beta"],
        stack=SliceStackConfig(
            delta_w=stack["delta_w"],
            count=stack["count"],
            w_origin=stack["w_origin"],
            focus_steps=stack["focus_steps"],
        ),
        layout=LayoutParams(
            spacing=layout["spacing"],
            curvature=layout["curvature"],
            plane_height=layout["plane_height"],
        ),
    )


class SessionService:
    """One interactive session; processes frames strictly in arrival order."""

    def __init__(
        self,
        settings: SessionSettings | None = None,
        keymap_table: dict[str, Command] | None = None,
    ):
        self.state: SessionState = new_session(settings)
        self.keymap_table = keymap_table

    def scene_frame(self) -> str:
        doc = scene_to_jsonable(snapshot(self.state))
        return dumps_canonical({"type": "scene", "doc": doc})

    @staticmethod
    def error_frame(message: str) -> str:
        return dumps_canonical({"type": "error", "message": message})

    def hello(self) -> str:
        """Initial snapshot sent on connect."""
        return self.scene_frame()

    def handle_text(self, text: str) -> list[str]:
        """Process one inbound frame; returns the frames to send back."""
        try:
            msg = json.loads(text)
        except json.JSONDecodeError as exc:
            return [self.error_frame(f"malformed frame: {exc.msg} at column {exc.colno}")]
        if not isinstance(msg, dict):
            return [self.error_frame("frame must be a JSON object")]
        kind = msg.get("type")
        if kind == "key":
            return self._handle_key(msg)
        if kind == "set":
            return self._handle_set(msg)
        return [self.error_frame(f"unknown frame type {kind!r}")]

    def _handle_key(self, msg: dict) -> list[str]:
        key = msg.get("key")
        if not isinstance(key, str) or len(key) != 1:
            return [self.error_frame("'key' must be a single character")]
        cmd = keymap(key, self.keymap_table)
        if cmd is None:
            return []
        self.state, _ = step(self.state, cmd)
        return [self.scene_frame()]

    def _handle_set(self, msg: dict) -> list[str]:
        field_name = msg.get("field")
        value = msg.get("value")
        try:
            if field_name == "polytope":
                if not isinstance(value, str):
                    raise ValueError("'polytope' value must be a string")
                self.state, _ = step(self.state, SetPolytope(value))
            else:
                self.state = replay(
                    _settings_with(self.state.settings, field_name, value),
                    self.state.command_log,
                )
        except (ValueError, TypeError) as exc:
            return [self.error_frame(str(exc))]
        return [self.scene_frame()]

    def log_obj(self) -> dict:
        """Replayable record of the session: settings plus command log."""
        return {
            "settings": settings_to_obj(self.state.settings),
            "commands": [command_to_obj(c) for c in self.state.command_log],
        }

    def log_bytes(self) -> bytes:
        return (dumps_canonical(self.log_obj(), pretty=True) + "\n").encode("utf-8")


def _settings_with(settings: SessionSettings, field_name, value) -> SessionSettings:
    if field_name in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"{field_name!r} value must be a number")
        value = float(value)
    elif field_name in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{field_name!r} value must be an integer")
    else:
        raise ValueError(f"unknown set field {field_name!r}")

    if field_name in ("edge_length", "alpha", "beta"):
        if field_name == "edge_length" and value <= 0:
            raise ValueError("edge_length must be positive")
        return replace(settings, **{field_name: value})
    if field_name in ("delta_w", "count"):
        return replace(settings, stack=replace(settings.stack, **{field_name: value}))
    return replace(settings, layout=replace(settings.layout, **{field_name: value}))


def replay_log(obj: dict) -> SessionState:
    """Rebuild the final state a persisted session log describes."""
    settings = settings_from_obj(obj["settings"])
    commands = [command_from_obj(c) for c in obj["commands"]]
    return replay(settings, commands)


def create_app(
    settings: SessionSettings | None = None,
    keymap_table: dict[str, Command] | None = None,
    log_dir=None,
):
    """FastAPI app exposing the session protocol at /ws, one session each."""
    from pathlib import Path

    from fastapi import FastAPI, WebSocket, WebSocketDisconnect

    app = FastAPI()
    session_counter = iter(range(1, 10**9))

    @app.websocket("/ws")
    async def ws_session(websocket: WebSocket):
        await websocket.accept()
        service = SessionService(settings, keymap_table)
        await websocket.send_text(service.hello())
        try:
            while True:
                text = await websocket.receive_text()
                for frame in service.handle_text(text):
                    await websocket.send_text(frame)
        except WebSocketDisconnect:
            pass
        finally:
            if log_dir is not None:
                path = Path(log_dir) / f"session-{next(session_counter):04d}.log"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_bytes(service.log_bytes())

    return app
