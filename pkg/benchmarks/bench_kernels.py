"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel rows call both implementations in-process.  Workload rows run a
fresh interpreter per backend (selected with DXSEA_PURE_PYTHON) so the
whole library stack is timed.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from dxsea import _kernels_py as py

try:
    from dxsea import _ckernels as cy
except ImportError:
    cy = None

R = 1.7
EDGES = np.concatenate([[0.0], np.arange(1, 257) * np.pi / R])
NSUB = np.clip(np.ceil(np.diff(EDGES) / np.maximum(1.0, 0.25 * EDGES[:-1])), 1, 64).astype(np.int64)
ZS = np.geomspace(0.05, 200.0, 200)

KERNELS = {
    "k01_scaled x200": lambda m: [m.k01_scaled(float(z)) for z in ZS],
    "struve_m_scaled x200": lambda m: [m.struve_m_scaled(float(z)) for z in ZS],
    "struve_series x100": lambda m: [m.struve_series(0, float(z)) for z in ZS[:100]],
    "lobe_integrals 256 lobes": lambda m: m.lobe_integrals(m.PROFILE_ONE_PLUS_E, 0.0, 1, m.TRIG_SIN, R, EDGES, NSUB),
}

WORKLOADS = {
    "transform 1/(1+E) x50": (
        "from dxsea.radialft import MomentumProfile, inverse_ft_radial\n"
        "import numpy as np\n"
        "p = MomentumProfile.inverse_one_plus_energy()\n"
        "[inverse_ft_radial(p, float(r)) for r in np.geomspace(0.05, 8, 50)]"
    ),
    "hole potential x2000": (
        "from dxsea.fields import potential\n"
        "import numpy as np\n"
        "[potential('hole', float(r)) for r in np.geomspace(0.01, 50, 2000)]"
    ),
}


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def workload_time(code, pure, repeat):
    env = dict(os.environ, DXSEA_PURE_PYTHON="1" if pure else "0")
    prog = (
        "import timeit\n"
        f"setup = {code!r}\n"
        f"print(min(timeit.repeat(lambda: exec(setup, {{}}), number=1, repeat={repeat})))"
    )
    out = subprocess.run([sys.executable, "-c", prog], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; only the fallback is available")
        return 1
    print(f"{'case':<28s} {'compiled ms':>12s} {'python ms':>12s} {'speed-up':>9s}")
    rows = [(name, best(lambda: f(cy), args.repeat), best(lambda: f(py), args.repeat)) for name, f in KERNELS.items()]
    rows += [(name, workload_time(code, False, args.repeat), workload_time(code, True, args.repeat))
             for name, code in WORKLOADS.items()]
    for name, tc, tp in rows:
        print(f"{name:<28s} {1e3 * tc:12.3f} {1e3 * tp:12.3f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
