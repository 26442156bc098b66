from math import cos, radians

import numpy as np
import pytest

from ncgears import base_involute as bi
from ncgears._tooth import DRIVE, DRIVEN
from ncgears.errors import PointAtInfinity
from ncgears.rack import SIDES, FlankSide


@pytest.mark.parametrize("gear", ["drive", "driven"])
def test_flank_is_involute(sin_ctx, gear):
    gen = DRIVE if gear == "drive" else DRIVEN
    inv = bi.involute_drive if gear == "drive" else bi.involute_driven
    rng = np.random.default_rng(3)
    for _ in range(5):
        k = int(rng.integers(1, 15))
        side = SIDES[int(rng.integers(0, 2))]
        phi_s = gen.singular_point(sin_ctx, k, side)
        lo, hi = gen.window(sin_ctx, k, 1.0)
        for phi in np.linspace(lo, hi, 20):
            err = abs(gen.flank_point(sin_ctx, k, side, phi) - inv(sin_ctx, side, phi_s, phi))
            assert err < 1e-9 * sin_ctx.a


def test_base_curve_of_circular_gear_is_base_circle(circ_ctx):
    rb = circ_ctx.a / 2 * cos(circ_ctx.rack.alpha)
    for side in SIDES:
        for phi in np.linspace(0, 6, 7):
            assert abs(abs(bi.base_curve_drive(circ_ctx, side, phi)) - rb) < 1e-12 * rb
            assert abs(abs(bi.base_curve_driven(circ_ctx, side, phi)) - rb) < 1e-12 * rb


def test_base_curves_mirror(sin_ctx):
    for phi in (0.4, 2.2, 3.9):
        assert abs(bi.base_curve_drive(sin_ctx, -1, phi)
                   - np.conj(bi.base_curve_drive(sin_ctx, 1, -phi))) < 1e-12


def test_base_point_is_center_of_curvature_of_flank(sin_ctx):
    # every flank normal passes through the base point of the same drive angle
    for gen, base in ((DRIVE, bi.base_curve_drive), (DRIVEN, bi.base_curve_driven)):
        for k, side, phi in [(3, 1, 1.8), (9, -1, 3.3)]:
            X = gen.flank_point(sin_ctx, k, side, phi)
            B = base(sin_ctx, side, phi)
            dX = (gen.flank_point(sin_ctx, k, side, phi + 1e-6)
                  - gen.flank_point(sin_ctx, k, side, phi - 1e-6)) / 2e-6
            assert abs(((B - X) * np.conj(dX)).real) < 1e-6 * abs(B - X) * abs(dX)
            R = bi.flank_curvature_radius(sin_ctx, k, side, phi, gen.name)
            assert abs(abs(B - X) - R) < 1e-9 * sin_ctx.a


@pytest.mark.parametrize("gear", ["drive", "driven"])
@pytest.mark.parametrize("k,side,phi", [(8, 1, 3.9), (3, -1, 0.9)])
def test_curvature_radius_by_finite_differences(sin_ctx, gear, k, side, phi):
    gen = DRIVE if gear == "drive" else DRIVEN
    f = lambda u: gen.flank_point(sin_ctx, k, side, u)
    h = 1e-4
    d1 = (f(phi + h) - f(phi - h)) / (2 * h)
    d2 = (f(phi + h) - 2 * f(phi) + f(phi - h)) / h ** 2
    fd = abs(d1) ** 3 / abs((np.conj(d1) * d2).imag)
    assert bi.flank_curvature_radius(sin_ctx, k, side, phi, gear) == pytest.approx(fd, rel=1e-6)


def test_point_at_infinity(sin_ctx):
    # b = 2 - sqrt(2) is exactly the value that flattens the drive pitch curve at phi = 0
    assert abs(DRIVE.curvature(sin_ctx, 0.0)) < 1e-12
    with pytest.raises(PointAtInfinity):
        bi.base_curve_drive(sin_ctx, 1, 0.0)


def test_sampled_base_curve_branches(sin_ctx):
    branches = bi.sample_base_curve(sin_ctx, FlankSide.PLUS, "drive")
    # the + base curve of the example has one cusp, so at least two regular branches
    assert len(branches) >= 2
    for br in branches:
        assert all(np.isfinite(s.point) for s in br)
    signs = [np.sign(bi.length_element(sin_ctx, 1, s.phi)) for s in branches[0][:-1]]
    assert len(set(signs)) == 1
