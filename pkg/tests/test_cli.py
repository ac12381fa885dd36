import numpy as np
import pytest

from filaments.cli import main

FIG_CONFIG = """\
# negatively linked pair, short horizon
curve.1.preset=linked-circles-neg:1
curve.1.m=48
curve.2.preset=linked-circles-neg:2
curve.2.m=48
flow.a=1.0
flow.b=0.0
biot.delta=0.1
biot.epsilon=1e-3
step.tolerance=1e-3
step.t_end=0.02
output.dt=0.01
"""


def test_link_preset_pair(capsys):
    status = main([
        "link",
        "--preset-a", "linked-circles-neg:1",
        "--preset-b", "linked-circles-neg:2",
        "-M", "200",
    ])
    out = capsys.readouterr().out
    assert status == 0
    assert "rounded = -1" in out


def test_link_force_method(capsys):
    status = main([
        "link",
        "--preset-a", "linked-circles-pos:1",
        "--preset-b", "linked-circles-pos:2",
        "-M", "100",
        "--method", "force",
    ])
    assert status == 0
    assert "rounded = 1" in capsys.readouterr().out


def test_link_from_files(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(["preset", "linked-circles-neg:1", "-M", "120", "-o", str(a)]) == 0
    assert main(["preset", "linked-circles-neg:2", "-M", "120", "-o", str(b)]) == 0
    capsys.readouterr()
    assert main(["link", "--file-a", str(a), "--file-b", str(b)]) == 0
    assert "rounded = -1" in capsys.readouterr().out


def test_run_missing_config_is_validation_error(tmp_path, capsys):
    status = main(["run", "--config", str(tmp_path / "missing.cfg")])
    assert status == 1
    assert "error" in capsys.readouterr().err.lower()


def test_run_writes_frames(tmp_path, capsys):
    cfg = tmp_path / "pair.cfg"
    cfg.write_text(FIG_CONFIG)
    out_dir = tmp_path / "out"
    status = main(["run", "--config", str(cfg), "--out", str(out_dir)])
    assert status == 0
    names = {p.name for p in out_dir.iterdir()}
    assert "manifest" in names and "diagnostics.csv" in names
    assert "frame_0_curve_1.csv" in names
    assert "frame_2_curve_2.csv" in names
    assert "wrote 3 frames" in capsys.readouterr().out


def test_run_set_override_lands_in_manifest(tmp_path):
    cfg = tmp_path / "pair.cfg"
    cfg.write_text(FIG_CONFIG)
    out_dir = tmp_path / "out"
    status = main([
        "run", "--config", str(cfg), "--out", str(out_dir),
        "--set", "step.t_end=0.01", "--set", "output.dt=0.01",
    ])
    assert status == 0
    manifest = (out_dir / "manifest").read_text()
    assert "step.t_end=0.01" in manifest
    n_frames = (out_dir / "diagnostics.csv").read_text().count("\n") - 1
    assert n_frames == 2


def test_run_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(FIG_CONFIG + "mystery.knob=1\n")
    status = main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")])
    assert status == 1
    err = capsys.readouterr().err
    assert "unknown key" in err
    assert "step.t_end" in err  # the valid keys are listed
    assert "bad.cfg:" in err  # with the offending line


def test_run_numerical_failure_exits_2(tmp_path, capsys):
    cfg = tmp_path / "stiff.cfg"
    cfg.write_text(FIG_CONFIG + "step.tolerance=1e-30\nstep.dt_min=1e-3\nstep.dt_init=2e-3\n")
    status = main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")])
    assert status == 2
    assert "stopped early" in capsys.readouterr().err


def test_field_grid(tmp_path, capsys):
    out = tmp_path / "field.csv"
    status = main([
        "field", "--source", "linked-circles-neg:2", "-M", "100",
        "--grid=-1:1:5,-1:1:5,0:0:1", "-o", str(out),
    ])
    assert status == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,z,Fx,Fy,Fz"
    assert len(lines) == 1 + 25


def test_field_on_curve(tmp_path):
    out = tmp_path / "field.csv"
    status = main([
        "field", "--source", "linked-circles-neg:2", "-M", "100",
        "--on-curve", "linked-circles-neg:1", "--on-curve-m", "40",
        "-o", str(out),
    ])
    assert status == 0
    rows = out.read_text().splitlines()[1:]
    assert len(rows) == 40
    values = np.array([[float(v) for v in r.split(",")] for r in rows])
    assert np.isfinite(values).all()


def test_field_requires_one_target(capsys):
    status = main(["field", "--source", "eight-knot"])
    assert status == 1


def test_preset_writes_csv(tmp_path):
    out = tmp_path / "knot.csv"
    status = main(["preset", "eight-knot", "-M", "150", "-o", str(out)])
    assert status == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,z"
    assert len(lines) == 1 + 150


def test_preset_list(capsys):
    assert main(["preset", "--list"]) == 0
    out = capsys.readouterr().out
    assert "eight-knot" in out
    assert "linked-circles-neg" in out


def test_preset_pair_needs_index(capsys):
    status = main(["preset", "linked-circles-neg"])
    assert status == 1
    assert "select one" in capsys.readouterr().err


def test_bad_arguments_exit_1(capsys):
    assert main(["no-such-command"]) == 1
    assert main(["link", "--preset-a", "eight-knot"]) == 1  # missing side b


def test_check_suite_passes(capsys):
    status = main(["check"])
    out = capsys.readouterr().out
    assert status == 0
    assert "FAIL" not in out
    for name in ("shrinking-circle", "binormal-translation", "linking:", "field-center-oracle"):
        assert name in out
