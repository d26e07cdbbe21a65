"""Compare the compiled and pure-Python double description kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Two workloads: raw extreme-ray enumeration on random cones, and end-to-end
quotient diagrams, where the backend is switched through
``chowbench.kernels.BACKEND``.
"""

import argparse
import random
import statistics
import time

from chowbench import kernels
from chowbench.action import ActionInput
from chowbench.examples import BRUS_NU, BRUS_VERTICES, cube_vertices
from chowbench.polytope import hull
from chowbench.quotient import build_diagram, chow_minkowski_polytope


def random_cone(rng, d, m):
    rows = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    rows += [tuple(rng.randint(-4, 6) for _ in range(d)) for _ in range(m - d)]
    return rows


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def with_backend(name, fn):
    saved = kernels.BACKEND
    kernels.BACKEND = name
    try:
        return fn()
    finally:
        kernels.BACKEND = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels._ddcore is None:
        print("compiled kernel not built; only the python backend is available")
        return 1

    rng = random.Random(1)
    cones = {(d, m): [random_cone(rng, d, m) for _ in range(10)]
             for d, m in ((4, 12), (5, 20), (6, 24))}
    workloads = {f"rays d={d} m={m} x10": (lambda cs=cs, d=d: [
        kernels.extreme_rays(c, d) for c in cs]) for (d, m), cs in cones.items()}
    cube5 = ActionInput(hull(cube_vertices(5)), (1,) * 5)
    brus = ActionInput(hull(BRUS_VERTICES), BRUS_NU)
    workloads["permutahedron n=5"] = lambda: chow_minkowski_polytope(cube5, 0, 5)
    workloads["diagram brus"] = lambda: build_diagram(brus)
    workloads["diagram cube n=4"] = lambda: build_diagram(
        ActionInput(hull(cube_vertices(4)), (1,) * 4))

    print(f"{'workload':<24}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, fn in workloads.items():
        fast = with_backend("cython", lambda: timed(fn, args.repeat))
        slow = with_backend("python", lambda: timed(fn, args.repeat))
        print(f"{name:<24}{fast:>10.3f}{slow:>10.3f}{slow / fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
