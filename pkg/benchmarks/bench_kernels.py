"""Time the compiled kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py            # both paths, side by side
    python3 benchmarks/bench_kernels.py --single   # current path only, JSON

The fallback runs in a child process with ``MULTISPACE_NO_NUMBA=1`` because the
switch is read once at import time.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def best_of(fn, repeat):
    fn()  # warm-up; includes JIT compilation on the numba path
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(points):
    from multispace import _kernels, cosmology, pseudoface

    grid = np.linspace(0.0, 1.0, points).reshape(-1, 1)
    images = np.sin(40.0 * grid)
    cfg = cosmology.TWCosmology(7)
    wave = lambda x: np.sin(40.0 * x)  # noqa: E731
    fmap = pseudoface.PseudoFaceMap(1, 1, wave, wave)
    box = pseudoface.DomainBox([0.0], [1.0], points)

    return {
        "closest_bad_pair": lambda: _kernels.closest_bad_pair(grid, images, 0.5),
        "uniform_continuity": lambda: pseudoface.check_uniform_continuity(fmap, box, 0.5),
        "proper_time_adaptive": lambda: cosmology.proper_time(cfg, 0.05, 2.0, rtol=1e-12),
        "simpson_fixed_1e6": lambda: _kernels.simpson_tw(0.2, 1.2, 1_000_000, 7.0, 1.0, 1.0, 0.0, True),
    }


def single(points, repeat):
    from multispace import _kernels

    out = {"numba": _kernels.USE_NUMBA}
    for name, fn in workloads(points).items():
        out[name] = best_of(fn, repeat)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1500, help="grid size for the pair search")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--single", action="store_true", help="time the current path and print JSON")
    args = ap.parse_args(argv)

    if args.single:
        print(json.dumps(single(args.points, args.repeat)))
        return 0

    cmd = [sys.executable, __file__, "--single", "--points", str(args.points), "--repeat", str(args.repeat)]
    runs = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, MULTISPACE_NO_NUMBA=flag)
        proc = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True)
        runs[label] = json.loads(proc.stdout)
    if not runs["numba"]["numba"]:
        print("warning: numba unavailable, both columns use the fallback")

    print(f"{'kernel':<22}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name in runs["numba"]:
        if name == "numba":
            continue
        a, b = runs["numba"][name], runs["numpy"][name]
        print(f"{name:<22}{a:>12.4f}{b:>12.4f}{b / a:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
