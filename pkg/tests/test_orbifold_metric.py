import math
from fractions import Fraction

import numpy as np
import pytest

from crlab import orbifold_metric as om
from crlab.errors import NoSolution
from crlab.orbifold_metric import ConeData

COPRIME = [(q1, q2) for q1 in range(2, 10) for q2 in range(1, q1) if math.gcd(q1, q2) == 1]


def _s_squared_exact(q1, q2, l):
    """s^2 = (l/3)(a^2 - ab + b^2)/(b - a) with a = 2/q1, b = 2/q2, in rationals."""
    a, b, l = Fraction(2, q1), Fraction(2, q2), Fraction(l)
    return l / 3 * (a * a - a * b + b * b) / (b - a)


@pytest.fixture(scope="module")
def profile_32():
    return om.construct_profile(ConeData(3, 2, 1.0), 4096)


def test_cone_data_validation():
    with pytest.raises(ValueError):
        ConeData(4, 2)
    with pytest.raises(ValueError):
        ConeData(2, 3)
    with pytest.raises(ValueError):
        ConeData(3, 2, l=0.0)
    with pytest.raises(ValueError):
        ConeData(2.5, 1)
    ConeData(2.5, 1.5, allow_real_cones=True)
    ConeData(1, 1)


def test_solve_s_values():
    assert om.solve_s(ConeData(3, 2, 1.0)) == pytest.approx(math.sqrt(7) / 3, abs=1e-15)
    assert om.solve_s(ConeData(2, 1, 1.0)) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("q1,q2", COPRIME)
def test_solve_s_matches_alternate_form(q1, q2):
    for l in (0.3, 1.0, 2.0):
        s = om.solve_s(ConeData(q1, q2, l))
        assert s * s == pytest.approx(float(_s_squared_exact(q1, q2, l)), rel=1e-14)


@pytest.mark.parametrize("q", [1, 2, 5])
def test_equal_cones_have_no_solution(q):
    with pytest.raises(NoSolution):
        om.solve_s(ConeData(q, q, 1.0))


def test_endpoints_exact():
    cases = {(3, 2): (1 / 3, 4 / 3), (2, 1): (0.0, math.sqrt(3)), (3, 1): (-1 / 3, 5 / 3)}
    for (q1, q2), (e1, e2) in cases.items():
        cone = ConeData(q1, q2, 1.0)
        s1, s2 = om.endpoints(cone, om.solve_s(cone))
        assert abs(s1 - e1) < 1e-12 and abs(s2 - e2) < 1e-12


def test_endpoints_rational_check():
    # exact: for (3,1,1), s^2 = 7/9, s1^2 = 1/9, s2^2 = 25/9, and s12 forces s1 = -1/3
    s_sq = _s_squared_exact(3, 1, 1)
    assert s_sq == Fraction(7, 9)
    s1, s2 = Fraction(-1, 3), Fraction(5, 3)
    assert s1 * s1 + s1 * s2 + s2 * s2 == 3 * s_sq
    assert Fraction(1, 3) ** 2 + Fraction(1, 3) * s2 + s2 * s2 != 3 * s_sq


@pytest.mark.parametrize("q1,q2", COPRIME)
def test_endpoints_in_window_and_s12(q1, q2):
    cone = ConeData(q1, q2, 1.0)
    s = om.solve_s(cone)
    s1, s2 = om.endpoints(cone, s)
    assert -s < s1 < s < s2 < 2 * s
    assert abs(s1 * s1 + s1 * s2 + s2 * s2 - 3 * s * s) <= 1e-10


def test_profile_boundary_values(profile_32):
    p = profile_32
    assert abs(p.k[0] - 1 / 3) < 1e-8 and abs(p.k[-1] - 4 / 3) < 1e-8
    assert p.r[0] == 0.0 and p.r[-1] == 0.0
    assert np.all(p.r[1:-1] > 0)
    assert np.all(np.diff(p.k) > 0)


def test_cone_angles_examples():
    a1, a2 = om.cone_angles(om.construct_profile(ConeData(3, 2, 1.0)))
    assert a1 == pytest.approx(2 * math.pi / 3, rel=1e-8)
    assert a2 == pytest.approx(math.pi, rel=1e-8)
    a1, a2 = om.cone_angles(om.construct_profile(ConeData(2, 1, 1.0)))
    assert a1 == pytest.approx(math.pi, rel=1e-8)
    assert a2 == pytest.approx(2 * math.pi, rel=1e-8)  # teardrop: smooth second pole


def test_cone_angles_by_one_sided_slope(profile_32):
    """Independent of the analytic pole formula: fit the slope of r at each pole."""
    p = profile_32
    h = p.step
    # second-order one-sided differences of r at t = 0 and t = tau
    d0 = (-3 * p.r[0] + 4 * p.r[1] - p.r[2]) / (2 * h)
    d1 = (3 * p.r[-1] - 4 * p.r[-2] + p.r[-3]) / (2 * h)
    assert 2 * math.pi * abs(d0) == pytest.approx(2 * math.pi / 3, rel=1e-6)
    assert 2 * math.pi * abs(d1) == pytest.approx(math.pi, rel=1e-6)


@pytest.mark.parametrize("q1,q2", [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3)])
def test_gauss_bonnet_and_area(q1, q2):
    p = om.construct_profile(ConeData(q1, q2, 1.0))
    assert abs(om.gauss_bonnet(p) - (1 / q1 + 1 / q2)) < 1e-6
    assert abs(om.area(p) - 2 * math.pi * (p.s2 - p.s1)) < 1e-6


def test_teardrop_area():
    p = om.construct_profile(ConeData(2, 1, 1.0))
    assert abs(om.area(p) - 2 * math.pi * math.sqrt(3)) < 1e-6


def test_curvature_residual(profile_32):
    assert om.curvature_residual(profile_32, profile_32.tau / 20) <= 1e-5


def test_curvature_residual_converges():
    # the extended-precision grid keeps round-off (eps/h^2) below truncation up to 4096 intervals
    res = [om.curvature_residual(om.construct_profile(ConeData(3, 2, 1.0), n))
           for n in (128, 256, 512, 1024, 2048, 4096)]
    assert all(b < a for a, b in zip(res, res[1:]))


def test_curvature_residual_round_sphere():
    t = np.linspace(0, math.pi, 2049)
    res = om.gaussian_curvature_residual(t, np.ones_like(t), np.sin(t), math.pi / 20)
    assert res <= 1e-8


def test_extended_grid_matches_float_grid(profile_32):
    p = profile_32
    assert p.k_ext.dtype == np.longdouble
    assert np.array_equal(p.k, p.k_ext.astype(float))
    t, _, _ = p.extended()
    assert abs(float(t[-1]) - p.tau) < 1e-15


def test_killing_residual(profile_32):
    assert om.killing_residual(profile_32) <= 1e-8


def test_tau_matches_quadrature(profile_32):
    assert om.period_cross_check(profile_32) < 1e-9


@pytest.mark.parametrize("cone", [(3, 2, 1.0), (5, 2, 1.0), (7, 3, 2.0)])
def test_uniqueness_cross_check(cone):
    assert om.uniqueness_cross_check(ConeData(*cone)) <= 1e-10


@pytest.mark.parametrize("q1,q2", [(3, 2), (5, 3)])
def test_homothety_law(q1, q2):
    lam = 3.7
    base = om.construct_profile(ConeData(q1, q2, 1.0), 2048)
    scaled = om.construct_profile(ConeData(q1, q2, lam), 2048)
    # k -> sqrt(lam) k forces t -> t / lam**0.25 in k'' = (s^2 - k^2)/2, so the
    # metric dt^2 + r^2 dtheta^2 is rescaled by 1/sqrt(lam) and r by lam**-0.25
    assert scaled.s == pytest.approx(math.sqrt(lam) * base.s, rel=1e-8)
    assert scaled.tau == pytest.approx(base.tau * lam ** -0.25, rel=1e-8)
    assert np.allclose(scaled.k, math.sqrt(lam) * base.k, rtol=1e-8, atol=1e-10)
    assert np.allclose(scaled.r, lam ** -0.25 * base.r, rtol=1e-8, atol=1e-10)
    assert om.cone_angles(scaled) == pytest.approx(om.cone_angles(base), rel=1e-8)


def test_real_cones():
    p = om.construct_profile(ConeData(2.5, 1.5, 1.0, allow_real_cones=True))
    a1, a2 = om.cone_angles(p)
    assert a1 == pytest.approx(2 * math.pi / 2.5, rel=1e-8)
    assert a2 == pytest.approx(2 * math.pi / 1.5, rel=1e-8)


def test_smooth_impossibility():
    cert = om.smooth_impossibility(1.0, 100)
    assert cert.certified and cert.min_residual == 4.0
    assert om.smooth_impossibility(2.0).min_residual == 16.0
    small = [om.smooth_impossibility(l).min_residual for l in (1e-1, 1e-2, 1e-3)]
    assert all(b < a for a, b in zip(small, small[1:]))
    assert small[-1] < 1e-5


def test_construction_report():
    rep = om.construction_report(om.construct_profile(ConeData(3, 2, 1.0)))
    assert rep.gauss_bonnet == pytest.approx(5 / 6, abs=1e-6)
    assert rep.curvature_residual < 1e-5 and rep.killing_residual < 1e-8
