"""Times the compiled kernels against the pure-numpy twins.

Three levels: the raw effective-momentum evaluation, one quadrature
segment, and a full spectrum sweep through the quantizer. Run from the
repository root:

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

import numpy as np

from wkb_spectra import _backend
from wkb_spectra.core import Coulomb, UnitsContext
from wkb_spectra.quadrature import gauss_legendre_nodes
from wkb_spectra.quantizer import quantize_2tp


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_p2(kernels, repeat):
    r = np.linspace(1e-3, 50.0, 200_000)
    return best_of(repeat, lambda: kernels.effective_p2_array(
        0, 1.0, 0.0, 0.0, 2.0, -0.125, 2.25, r))


def bench_segment(kernels, repeat):
    x, w = gauss_legendre_nodes(2048)
    return best_of(repeat, lambda: kernels.action_segment(
        0, 1.0, 0.0, 0.0, 2.0, -0.125, 2.25, 0.7, 15.0, x, w))


def bench_sweep(kernels, repeat):
    u = UnitsContext()
    spec = Coulomb(alpha=1.0)
    previous = _backend.kernels

    def sweep():
        _backend.kernels = kernels
        try:
            for l in range(4):
                m2 = (l + 0.5) ** 2
                for n_r in range(6):
                    quantize_2tp(spec, m2, n_r, u)
        finally:
            _backend.kernels = previous

    return best_of(repeat, sweep)


BENCHES = [
    ("effective p2, 200k points", bench_p2),
    ("action segment, order 2048", bench_segment),
    ("24-level hydrogenic sweep", bench_sweep),
]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5,
                        help="take the best of this many runs (default 5)")
    args = parser.parse_args(argv)

    python = _backend.get_backend("python")
    try:
        compiled = _backend.get_backend("compiled")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the python backend only")

    width = max(len(name) for name, _ in BENCHES)
    header = f"{'benchmark':<{width}}  {'python':>10}  {'compiled':>10}  speedup"
    print(header)
    print("-" * len(header))
    for name, bench in BENCHES:
        t_py = bench(python, args.repeat)
        if compiled is None:
            print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {'-':>10}")
            continue
        t_c = bench(compiled, args.repeat)
        print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_c * 1e3:>8.2f}ms"
              f"  {t_py / t_c:>6.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
