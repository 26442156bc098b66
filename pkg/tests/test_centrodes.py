import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import B_EXAMPLE, example_rack
from ncgears.centrodes import (ToleranceSet, arc_integral, center_distance, drive_centrode,
                               drive_dedendum, drive_addendum, drive_radius, drive_tangent,
                               driven_addendum, driven_centrode, driven_radius, driven_tangent,
                               fixed_tangent, make_context)
from ncgears.errors import NonConvexCentrode, RootNotBracketed, UnsupportedConfig
from ncgears.centrodes import check_window
from ncgears.transmission import drive_turn_rate, driven_turn_rate, sinusoidal

# tooth middles of the 14-tooth example, six significant digits
CHI_REFERENCE = [0, 0.674065, 1.18877, 1.63010, 2.03297, 2.41317, 2.78037,
             np.pi, 3.50282, 3.87002, 4.25022, 4.65309, 5.09441, 5.60912]


def polygon_length(spec, lo, hi, n=200_001):
    """Arc length of the unit-distance drive centrode from a dense polygon."""
    phi = np.linspace(lo, hi, n)
    _, d1, _, _ = spec.derivatives(phi)
    pts = d1 / (1 + d1) * np.exp(-1j * phi)
    return float(np.sum(np.abs(np.diff(pts))))


def test_total_arc_integral_against_polygon(sin_ctx):
    ref = polygon_length(sin_ctx.spec, 0, 2 * np.pi)
    assert abs(sin_ctx.I_total - ref) < 1e-8
    assert abs(sin_ctx.I_total - 3.0931545289) < 1e-9
    assert abs(sin_ctx.a - 14 * np.pi * 2 / ref) < 1e-7


def test_center_distance_circular(circ_ctx):
    assert circ_ctx.a == pytest.approx(40.0, abs=1e-12)
    assert center_distance(circ_ctx.spec, 2.0, 20) == pytest.approx(40.0, abs=1e-12)


def test_tooth_middles_reference(sin_ctx):
    assert np.allclose(sin_ctx.chi, CHI_REFERENCE, atol=1e-5)
    assert abs(sin_ctx.chi[7] - np.pi) < 1e-9


def test_tooth_middles_symmetric_and_equally_spaced(sin_ctx):
    z = sin_ctx.z1
    for k in range(2, z + 1):
        assert abs(sin_ctx.chi_of(k) + sin_ctx.chi_of(z + 2 - k) - 2 * np.pi) < 1e-10
        assert abs(sin_ctx.a * sin_ctx.arc(sin_ctx.chi_of(k - 1), sin_ctx.chi_of(k))
                   - sin_ctx.pitch) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 9), st.floats(-3, 9), st.floats(-3, 9))
def test_arc_additive(sin_ctx, x, y, z):
    lhs = sin_ctx.arc(x, y) + sin_ctx.arc(y, z)
    assert abs(lhs - sin_ctx.arc(x, z)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 6.2), st.floats(-12, 12))
def test_arclength_inverse(sin_ctx, phi0, s):
    phi = sin_ctx.phi_at_arclength(phi0, s)
    assert abs(sin_ctx.a * sin_ctx.arc(phi0, phi) - s) < 1e-9


def test_arc_direct_vs_quadpack():
    spec = sinusoidal(0.3)
    from scipy.integrate import quad
    from ncgears.transmission import arc_density
    ref = quad(lambda p: arc_density(spec, p), 0.5, 3.0, epsabs=1e-13)[0]
    assert abs(arc_integral(spec, 0.5, 3.0) - ref) < 1e-10


@pytest.mark.parametrize("phi", np.linspace(0, 2 * np.pi, 17))
def test_radii_sum_and_pitch_point_coincide(sin_ctx, phi):
    a = sin_ctx.a
    assert abs(drive_radius(sin_ctx, phi) + driven_radius(sin_ctx, phi) - a) < 1e-12 * a
    psi = sin_ctx.spec(phi)
    fixed_drive = drive_centrode(sin_ctx, phi) * np.exp(1j * phi)
    fixed_driven = a + driven_centrode(sin_ctx, phi) * np.exp(-1j * psi)
    assert abs(fixed_drive - drive_radius(sin_ctx, phi)) < 1e-12 * a
    assert abs(fixed_driven - fixed_drive) < 1e-12 * a


@pytest.mark.parametrize("phi", np.linspace(0.05, 6.2, 11))
def test_tangents(sin_ctx, phi):
    h = 1e-6
    T, Tt = drive_tangent(sin_ctx, phi), driven_tangent(sin_ctx, phi)
    assert abs(abs(T) - 1) < 1e-14 and abs(abs(Tt) - 1) < 1e-14
    # tangent is the normalised centrode derivative
    dX = (drive_centrode(sin_ctx, phi + h) - drive_centrode(sin_ctx, phi - h)) / (2 * h)
    assert abs(dX / abs(dX) - T) < 1e-8
    dXi = (driven_centrode(sin_ctx, phi + h) - driven_centrode(sin_ctx, phi - h)) / (2 * h)
    assert abs(dXi / abs(dXi) - Tt) < 1e-8
    # both tangents coincide with the common tangent once mapped to the fixed frame
    psi = sin_ctx.spec(phi)
    assert abs(T * np.exp(1j * phi) - fixed_tangent(sin_ctx, phi)) < 1e-14
    assert abs(Tt * np.exp(-1j * psi) - fixed_tangent(sin_ctx, phi)) < 1e-14
    # turning rates
    dT = (drive_tangent(sin_ctx, phi + h) - drive_tangent(sin_ctx, phi - h)) / (2 * h)
    h1 = drive_turn_rate(sin_ctx.spec, phi)
    assert abs(dT - 1j * h1 * T) <= 1e-5 * max(1.0, abs(h1))
    dTt = (driven_tangent(sin_ctx, phi + h) - driven_tangent(sin_ctx, phi - h)) / (2 * h)
    h2 = driven_turn_rate(sin_ctx.spec, phi)
    assert abs(dTt - 1j * h2 * Tt) <= 1e-5 * max(1.0, abs(h2))


def test_parallel_curves_keep_their_distance(sin_ctx):
    rk = sin_ctx.rack
    for phi in (0.0, 1.0, 3.0):
        assert abs(abs(drive_addendum(sin_ctx, phi) - drive_centrode(sin_ctx, phi)) - rk.h_a) < 1e-12
        assert abs(abs(drive_dedendum(sin_ctx, phi) - drive_centrode(sin_ctx, phi)) - rk.h_f) < 1e-12
        assert abs(driven_addendum(sin_ctx, phi) - driven_centrode(sin_ctx, phi)) == pytest.approx(rk.h_a)
    # the drive addendum lies outside its (convex) pitch curve
    assert abs(drive_addendum(sin_ctx, 1.0)) > abs(drive_centrode(sin_ctx, 1.0))
    assert abs(driven_addendum(sin_ctx, 1.0)) > abs(driven_centrode(sin_ctx, 1.0))


def test_convexity_gate():
    with pytest.raises(NonConvexCentrode):
        make_context(sinusoidal(0.8), example_rack(), 14)
    make_context(sinusoidal(0.8), example_rack(), 14, check_convexity=False)


def test_scope_limits():
    with pytest.raises(UnsupportedConfig):
        make_context(sinusoidal(0.3), example_rack(), 14, z2=28)
    with pytest.raises(UnsupportedConfig):
        make_context(sinusoidal(0.3), example_rack(), 2)


def test_tolerance_set_validation():
    with pytest.raises(ValueError):
        ToleranceSet(quad=0)


def test_search_window(sin_ctx):
    check_window(sin_ctx, 1.9 * sin_ctx.pitch, "probe")
    with pytest.raises(RootNotBracketed):
        check_window(sin_ctx, 2.1 * sin_ctx.pitch, "probe")
