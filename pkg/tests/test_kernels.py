import numpy as np
import pytest
from scipy.integrate import quad

from ncgears import kernels
from ncgears.kernels import python_backend

compiled = kernels.compiled_backend
needs_compiled = pytest.mark.skipif(compiled is None, reason="extension not built")

S = np.array([-0.3, 0.05, 0.0, 0.01])
C = np.array([0.02, 0.0, -0.01])


def reference_derivatives(phi):
    j = np.arange(1, 5)
    jc = np.arange(1, 4)
    psi = phi + S @ np.sin(j * phi) + C @ (np.cos(jc * phi) - 1)
    d1 = 1 + S @ (j * np.cos(j * phi)) - C @ (jc * np.sin(jc * phi))
    d2 = -S @ (j ** 2 * np.sin(j * phi)) - C @ (jc ** 2 * np.cos(jc * phi))
    d3 = -S @ (j ** 3 * np.cos(j * phi)) + C @ (jc ** 3 * np.sin(jc * phi))
    return psi, d1, d2, d3


@pytest.mark.parametrize("phi", [-3.0, 0.0, 0.7, 5.5, 13.0])
def test_python_series_matches_reference(phi):
    assert np.allclose(python_backend.series_derivatives(phi, S, C),
                       reference_derivatives(phi), atol=1e-13)


def test_arc_integral_matches_quadpack():
    f = lambda p: python_backend.arc_integrand(p, S, C)
    ref = quad(f, 0.3, 5.0, epsabs=1e-13, limit=200)[0]
    val, err, _ = python_backend.arc_integral(0.3, 5.0, S, C, 1e-12, 200)
    assert abs(val - ref) < 1e-12 and err <= 1e-12
    back, _, _ = python_backend.arc_integral(5.0, 0.3, S, C, 1e-12, 200)
    assert back == pytest.approx(-val, abs=1e-14)


@needs_compiled
@pytest.mark.parametrize("phi", np.linspace(-4, 10, 15))
def test_backend_parity_derivatives(phi):
    assert np.allclose(compiled.series_derivatives(float(phi), S, C),
                       python_backend.series_derivatives(float(phi), S, C),
                       rtol=0, atol=1e-14)


@needs_compiled
def test_backend_parity_integral():
    for lo, hi in [(0.0, 2 * np.pi), (1.0, 1.3), (4.0, -2.0)]:
        vc = compiled.arc_integral(lo, hi, S, C, 1e-11, 200)[0]
        vp = python_backend.arc_integral(lo, hi, S, C, 1e-11, 200)[0]
        assert abs(vc - vp) < 1e-12


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


def test_pure_python_fallback_gives_same_report(configs):
    import os
    import subprocess
    import sys
    outs = {}
    for force in ("0", "1"):
        env = dict(os.environ, NCGEARS_PURE_PYTHON=force)
        res = subprocess.run([sys.executable, "-m", "ncgears", "check-undercut",
                              str(configs / "sinusoidal_z14.json")],
                             env=env, capture_output=True, text=True, check=True)
        outs[force] = res.stdout
    assert outs["0"] == outs["1"]
