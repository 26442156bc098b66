"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the series evaluation, the arc-length quadrature and a full synthesis
of the 14-tooth example with each backend.  The full-synthesis timings run
in subprocesses because the backend is fixed at import time.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from ncgears.kernels import compiled_backend, python_backend

S = np.array([-(2 - np.sqrt(2))])
C = np.array([], dtype=float)

SYNTH = (
    "import time, math;"
    "from ncgears.transmission import sinusoidal;"
    "from ncgears.rack import RackProfile;"
    "from ncgears.centrodes import make_context;"
    "from ncgears.assembler import assemble;"
    "from ncgears import kernels;"
    "t=time.perf_counter();"
    "ctx=make_context(sinusoidal(2-math.sqrt(2)), RackProfile.from_ratios(2, math.radians(20)), 14);"
    "assemble(ctx, with_sizing=False);"
    "print(kernels.BACKEND, time.perf_counter()-t)"
)


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<34} {best * 1e3:10.3f} ms")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", python_backend)]
    if compiled_backend is not None:
        backends.append(("compiled", compiled_backend))
    else:
        print("compiled extension not built; timing the fallback only")
    phis = np.linspace(0, 2 * np.pi, 20000)
    results = {}
    for name, kb in backends:
        print(name)
        results[name] = (
            bench("series derivatives x20000 (scalar)",
                  lambda: [kb.series_derivatives(float(p), S, C) for p in phis], args.repeat),
            bench("arc integral [0, 2pi], tol 1e-12",
                  lambda: [kb.arc_integral(0.0, 2 * np.pi, S, C, 1e-12, 200) for _ in range(200)],
                  args.repeat),
        )
    if len(results) == 2:
        sp = [p / c for p, c in zip(results["python"], results["compiled"])]
        print(f"speed-up: series {sp[0]:.1f}x, quadrature {sp[1]:.1f}x")
    print("full synthesis of the 14-tooth example")
    for force in ("0", "1"):
        env = dict(os.environ, NCGEARS_PURE_PYTHON=force)
        out = subprocess.run([sys.executable, "-c", SYNTH], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:<34} {float(out[1]):10.3f} s")


if __name__ == "__main__":
    main()
