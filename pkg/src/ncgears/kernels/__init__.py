"""Hot numerical kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports; setting the environment
variable ``NCGEARS_PURE_PYTHON=1`` forces the fallback.  ``BACKEND`` names
the active implementation.
"""

import os

from . import _pykernel as python_backend

compiled_backend = None
if os.environ.get("NCGEARS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

if compiled_backend is not None:
    series_derivatives = compiled_backend.series_derivatives
    arc_integrand = compiled_backend.arc_integrand
    arc_integral = compiled_backend.arc_integral
    BACKEND = "compiled"
else:
    series_derivatives = python_backend.series_derivatives
    arc_integrand = python_backend.arc_integrand
    arc_integral = python_backend.arc_integral
    BACKEND = "python"

__all__ = ["series_derivatives", "arc_integrand", "arc_integral", "BACKEND",
           "python_backend", "compiled_backend"]
