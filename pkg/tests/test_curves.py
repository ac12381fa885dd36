import numpy as np
import pytest

from filaments.curves import (
    PRESETS,
    load_curve_csv,
    preset,
    preset_curve,
    write_curve_csv,
)
from filaments.errors import DegenerateSegment
from filaments.geometry import DiscreteCurve, compute_geometry


def test_linked_circle_pair_points():
    g1, g2 = preset("linked-circles-neg")
    assert np.allclose(g1.evaluate(0.0), [1.0, 0.0, 0.0], atol=1e-15)
    assert np.allclose(g1.evaluate(0.25), [0.0, 1.0, 0.0], atol=1e-15)
    assert np.allclose(g2.evaluate(0.0), [2.0, 0.0, 0.0], atol=1e-15)


def test_positive_pair_second_curve_through_origin():
    _, g2 = preset("linked-circles-pos")
    assert np.abs(g2.evaluate(0.5)).max() < 1e-12


def test_eight_knot_start_point():
    knot = preset("eight-knot")[0]
    expected = np.array([3.0, 2.0 * np.sin(0.5), (np.cos(0.5) + np.sin(0.5)) / 2.0])
    assert np.allclose(knot.evaluate(0.0), expected, atol=1e-15)


def test_periodicity():
    knot = preset("eight-knot")[0]
    u = np.array([0.13, 0.47, 0.99])
    assert np.abs(knot.evaluate(u) - knot.evaluate(u + 1.0)).max() < 1e-12


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_closure(name):
    for fc in preset(name):
        gap = np.linalg.norm(fc.evaluate(0.0) - fc.evaluate(1.0 - 1e-9))
        assert gap < 1e-6


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_sampled_length_converges(name):
    for fc in preset(name):
        l1 = compute_geometry(fc.sample(1000, uniformize=False)).length
        l2 = compute_geometry(fc.sample(2000, uniformize=False)).length
        assert abs(l2 - l1) / l1 < 1e-4


def test_circle_sample_m4_is_square():
    circle = preset("linked-circles-neg")[0]
    nodes = circle.sample(4, uniformize=False).nodes
    expected = np.array([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], dtype=float)
    assert np.abs(nodes - expected).max() < 1e-15


def test_knot_ellipse_lies_on_ellipse():
    ellipse = preset("knot-ellipse")[0]
    nodes = ellipse.sample(100, uniformize=False).nodes
    residual = (nodes[:, 0] + 1.5) ** 2 + (nodes[:, 2] / 0.8) ** 2 - 1.0
    assert np.abs(residual).max() < 1e-12
    assert np.abs(nodes[:, 1] - 0.5).max() < 1e-12


def test_uniformized_knot_spacing():
    knot = preset("eight-knot")[0]
    geom = compute_geometry(knot.sample(400, uniformize=True))
    assert geom.seg_lengths.max() / geom.seg_lengths.min() < 1.001


def test_preset_curve_spec_parsing():
    assert preset_curve("eight-knot") is PRESETS["eight-knot"][0]
    assert preset_curve("linked-circles-neg:2") is PRESETS["linked-circles-neg"][1]
    with pytest.raises(ValueError, match="select one"):
        preset_curve("linked-circles-neg")
    with pytest.raises(ValueError, match="members 1..2"):
        preset_curve("linked-circles-neg:3")
    with pytest.raises(ValueError, match="unknown preset"):
        preset_curve("no-such-curve")


def test_sample_rejects_tiny_m():
    with pytest.raises(ValueError):
        preset("eight-knot")[0].sample(2)


def test_sample_detects_coincident_samples():
    from filaments.curves import FourierCoordinate, FourierCurve, FourierTerm

    # the frequency-2 harmonic repeats after half a period, so even m
    # collapses adjacent samples onto each other two nodes apart; a constant
    # curve collapses immediately
    flat = FourierCurve(x=FourierCoordinate(constant=1.0))
    with pytest.raises(DegenerateSegment):
        flat.sample(8, uniformize=False)


def test_curve_csv_roundtrip(tmp_path):
    curve = preset("eight-knot")[0].sample(50)
    path = tmp_path / "knot.csv"
    write_curve_csv(path, curve)
    back = load_curve_csv(path)
    assert np.abs(back.nodes - curve.nodes).max() < 1e-15


def test_curve_csv_drops_duplicate_closing_row(tmp_path):
    path = tmp_path / "loop.csv"
    path.write_text("x,y,z\n0,0,0\n1,0,0\n1,1,0\n0,0,0\n")
    curve = load_curve_csv(path)
    assert len(curve) == 3


def test_curve_csv_requires_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,0,0\n1,0,0\n1,1,0\n")
    with pytest.raises(ValueError, match="header"):
        load_curve_csv(path)


def test_discrete_curve_reversed():
    curve = preset("eight-knot")[0].sample(40)
    rev = curve.reversed()
    assert isinstance(rev, DiscreteCurve)
    assert np.abs(rev.nodes - curve.nodes[::-1]).max() == 0.0
