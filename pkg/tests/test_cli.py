import dataclasses
import math

import pytest

from fourslice import cli
from fourslice.geom4 import RotationPlane, rotation_simple
from fourslice.scene_io import read_scene


def run(argv):
    return cli.main(argv)


def write_script(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_export_writes_default_scene(tmp_path, capsys):
    out = tmp_path / "initial.scene"
    assert run(["export", "--out", str(out)]) == 0
    assert "wrote scene" in capsys.readouterr().out
    doc = read_scene(out.read_bytes())
    assert doc.polytope_name == "pentachoron"
    assert len(doc.slices) == 13
    _, center = doc.slices[6]
    assert (len(center.points), len(center.segments), len(center.polygons)) == (4, 6, 4)


def test_export_is_deterministic(tmp_path):
    script = write_script(tmp_path, "spin.keys", "2y6k\n" * 3)
    a = tmp_path / "a.scene"
    b = tmp_path / "b.scene"
    for out in (a, b):
        assert run(["export", "--seed-script", script, "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_export_seed_script_rotates(tmp_path):
    script = write_script(tmp_path, "eight.keys", "6" * 8)
    out = tmp_path / "half.scene"
    assert run(["export", "--seed-script", script, "--out", str(out)]) == 0
    doc = read_scene(out.read_bytes())
    target = rotation_simple(RotationPlane.YW, math.pi).flat()
    assert max(abs(a - b) for a, b in zip(doc.rotation.flat(), target)) < 1e-10


def test_export_obj_center_slice(tmp_path, capsys):
    out = tmp_path / "slice.obj"
    assert run(["export", "--out", str(out)]) == 0
    assert "wrote mesh" in capsys.readouterr().out
    text = out.read_text()
    assert text.startswith("# slice mesh")
    assert sum(1 for line in text.splitlines() if line.startswith("v ")) == 4
    assert sum(1 for line in text.splitlines() if line.startswith("f ")) == 4


def test_export_obj_empty_slice_is_a_note_not_an_error(tmp_path, capsys):
    script = write_script(tmp_path, "away.keys", "l" * 20)
    out = tmp_path / "empty.obj"
    assert run(["export", "--seed-script", script, "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert "nothing to export" in captured.err
    assert not out.exists()


def test_export_reports_skipped_keys(tmp_path, capsys):
    script = write_script(tmp_path, "noisy.keys", "2qz2")
    out = tmp_path / "noisy.scene"
    assert run(["export", "--seed-script", script, "--out", str(out)]) == 0
    assert "skipped 2 unbound keys: qz" in capsys.readouterr().err


def test_keymap_file_rebinds_keys(tmp_path):
    keymap_file = write_script(tmp_path, "bindings.map", "w simple:yw\n6 none\n")
    script = write_script(tmp_path, "w.keys", "w")
    out = tmp_path / "w.scene"
    assert run([
        "export",
        "--keymap",
        keymap_file,
        "--seed-script",
        script,
        "--out",
        str(out),
    ]) == 0
    doc = read_scene(out.read_bytes())
    target = rotation_simple(RotationPlane.YW, math.pi / 8).flat()
    assert max(abs(a - b) for a, b in zip(doc.rotation.flat(), target)) < 1e-15


def test_bad_keymap_file_is_a_usage_error(tmp_path, capsys):
    keymap_file = write_script(tmp_path, "bad.map", "6 spin:yw\n")
    assert run(["export", "--keymap", keymap_file, "--out", str(tmp_path / "x")]) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_seed_script_is_a_usage_error(tmp_path, capsys):
    out = tmp_path / "x.scene"
    missing = str(tmp_path / "nope.keys")
    assert run(["export", "--seed-script", missing, "--out", str(out)]) == 2
    assert "cannot read key script" in capsys.readouterr().err


def test_animate_writes_one_frame_per_applied_key(tmp_path, capsys):
    script = write_script(tmp_path, "anim.keys", "26y\n# pause\nk\n")
    frames = tmp_path / "frames"
    assert run(["animate", "--seed-script", script, "--out", str(frames)]) == 0
    assert "wrote 5 frames" in capsys.readouterr().out
    names = sorted(p.name for p in frames.iterdir())
    assert names == [f"frame_{n:04d}.scene" for n in range(5)]
    first = read_scene((frames / "frame_0000.scene").read_bytes())
    assert first.rotation.flat() == rotation_simple(RotationPlane.XY, 0.0).flat()


def test_animate_frames_advance_the_rotation(tmp_path):
    script = write_script(tmp_path, "two.keys", "22")
    frames = tmp_path / "frames"
    assert run(["animate", "--seed-script", script, "--out", str(frames)]) == 0
    last = read_scene((frames / "frame_0002.scene").read_bytes())
    target = rotation_simple(RotationPlane.XY, math.pi / 4).flat()
    assert max(abs(a - b) for a, b in zip(last.rotation.flat(), target)) < 1e-12


def test_validate_passes_for_builtin_polytopes(capsys):
    assert run(["validate"]) == 0
    assert "pentachoron: all checks passed" in capsys.readouterr().out
    assert run(["validate", "--polytope", "hypercube", "--edge-length", "1"]) == 0


def test_validate_reports_failures(monkeypatch, capsys):
    build = cli.build_polytope

    def broken(name, edge_length):
        polytope = build(name, edge_length)
        return dataclasses.replace(polytope, cells=polytope.cells + ((0, 1, 2, 99),))

    monkeypatch.setattr(cli, "build_polytope", broken)
    assert run(["validate"]) == 1
    assert "face_index_range" in capsys.readouterr().err


def test_usage_errors_from_argparse(capsys):
    for argv in (
        ["export", "--slices", "4"],
        ["export", "--delta-w", "-1"],
        ["export", "--edge-length", "0"],
        ["export", "--polytope", "octaplex"],
        ["frobnicate"],
        [],
    ):
        with pytest.raises(SystemExit) as info:
            run(argv)
        assert info.value.code == 2, argv
        capsys.readouterr()


def test_negative_curvature_is_a_usage_error(tmp_path, capsys):
    out = tmp_path / "x.scene"
    assert run(["export", "--curvature", "-0.5", "--out", str(out)]) == 2
    assert "--curvature" in capsys.readouterr().err


def test_session_flags_reach_the_scene(tmp_path):
    out = tmp_path / "tuned.scene"
    assert run([
        "export",
        "--polytope",
        "hypercube",
        "--edge-length",
        "1.5",
        "--delta-w",
        "0.5",
        "--slices",
        "5",
        "--spacing",
        "3.0",
        "--curvature",
        "0.0",
        "--out",
        str(out),
    ]) == 0
    doc = read_scene(out.read_bytes())
    assert doc.polytope_name == "hypercube"
    assert doc.stack.count == 5
    assert doc.stack.delta_w == 0.5
    assert doc.layout.spacing == 3.0
    assert doc.layout.curvature == 0.0
    offsets = [placement.world_offset for placement, _ in doc.slices]
    assert all(offset[2] == 0.0 for offset in offsets)
