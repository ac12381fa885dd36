import numpy as np
import pytest

from filaments.curves import preset
from filaments.errors import CurvesTooClose
from filaments.geometry import DiscreteCurve, resample_uniform
from filaments.topology import linking_number_gauss, linking_number_via_force

from conftest import circle_nodes


def preset_pair(name_a, name_b=None, m=200):
    if name_b is None:
        return tuple(fc.sample(m) for fc in preset(name_a))
    return preset(name_a)[0].sample(m), preset(name_b)[0].sample(m)


CASES = [
    ("linked-circles-neg", None, 200, -1),
    ("linked-circles-pos", None, 200, +1),
    ("eight-knot", "knot-circle", 400, 0),
    ("eight-knot", "knot-ellipse", 400, -2),
]


@pytest.mark.parametrize("name_a,name_b,m,expected", CASES)
def test_preset_linking_numbers(name_a, name_b, m, expected):
    c1, c2 = preset_pair(name_a, name_b, m)
    res = linking_number_gauss(c1, c2)
    assert res.rounded == expected
    assert res.residual < 0.05


@pytest.mark.parametrize("name_a,name_b,m,expected", CASES)
def test_both_formulas_agree(name_a, name_b, m, expected):
    c1, c2 = preset_pair(name_a, name_b, m)
    gauss = linking_number_gauss(c1, c2)
    force = linking_number_via_force(c1, c2)
    assert force.rounded == expected
    scale = max(abs(gauss.raw_value), 1e-3)
    assert abs(gauss.raw_value - force.raw_value) / scale < 1e-6


def test_far_separated_circles_unlinked():
    a = DiscreteCurve(circle_nodes(100))
    b = DiscreteCurve(circle_nodes(100, center=(10.0, 0.0, 0.0)))
    res = linking_number_gauss(a, b)
    assert res.rounded == 0
    assert res.residual < 1e-3


def test_symmetry_under_swap():
    c1, c2 = preset_pair("linked-circles-neg")
    assert linking_number_gauss(c1, c2).rounded == linking_number_gauss(c2, c1).rounded
    assert (
        linking_number_via_force(c1, c2).rounded
        == linking_number_via_force(c2, c1).rounded
    )


def test_orientation_reversal_flips_sign():
    c1, c2 = preset_pair("linked-circles-neg")
    base = linking_number_gauss(c1, c2)
    assert linking_number_gauss(c1.reversed(), c2).rounded == -base.rounded
    assert linking_number_gauss(c1, c2.reversed()).rounded == -base.rounded
    assert linking_number_via_force(c1.reversed(), c2).rounded == -base.rounded


@pytest.mark.parametrize("name_a,name_b,coarse_m,expected", [
    ("linked-circles-neg", None, 100, -1),
    ("eight-knot", "knot-ellipse", 100, -2),
])
def test_resampling_stability(name_a, name_b, coarse_m, expected):
    coarse = preset_pair(name_a, name_b, coarse_m)
    fine = tuple(resample_uniform(c, 400) for c in coarse)
    res_coarse = linking_number_gauss(*coarse)
    res_fine = linking_number_gauss(*fine)
    assert res_coarse.rounded == expected
    assert res_fine.rounded == expected
    assert res_fine.residual < res_coarse.residual


def test_too_close_rejected():
    a = circle_nodes(50)
    with pytest.raises(CurvesTooClose):
        linking_number_gauss(a, a + 1e-13)


def test_coarse_quadrature_warns():
    c1, c2 = preset_pair("eight-knot", "knot-ellipse", m=16)
    with pytest.warns(UserWarning, match="residual"):
        linking_number_gauss(c1, c2)


def test_result_fields_consistent():
    c1, c2 = preset_pair("linked-circles-pos")
    res = linking_number_gauss(c1, c2)
    assert isinstance(res.rounded, int)
    assert res.residual == abs(res.raw_value - res.rounded)
    assert res.residual < 0.5
