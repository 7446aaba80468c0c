"""Compare the compiled stabilization kernel against the pure-Python one.

Each case rebuilds its graph per run so per-graph caches (CSR layout,
identity) cannot leak work between timings. Prints best-of-N wall times
for both backends and the speedup.

    python benchmarks/bench_stabilize.py [--repeat 3]
"""

import argparse
import random
import time

import sandpiles as sp
from sandpiles import firing


def case_identity():
    g = sp.build_wired_regular_tree(3, 12)
    return lambda: sp.identity(g)


def case_enumerate():
    g = sp.build_wired_regular_tree(3, 4)
    return lambda: sp.enumerate_recurrent(g)


def case_root_orbit():
    g = sp.build_wired_regular_tree(4, 6)
    r_hat = sp.recurrent_rep(sp.ChipConfig.unit(g, 0))
    period = sp.root_subgroup_order(4, 6)

    def run():
        u = r_hat
        for _ in range(period - 1):
            u = sp.add_and_stabilize(u, r_hat)
        return u

    return run


def case_random_walk():
    g = sp.build_wired_regular_tree(3, 6)
    start = sp.identity(g)

    def run():
        # many nearly-stable calls: measures per-call overhead, and the
        # pure kernel can win here since it skips the array conversion
        rng = random.Random(1)
        u = start
        for _ in range(20000):
            v = sp.ChipConfig.unit(g, rng.randrange(g.non_sink_count))
            u = sp.add_and_stabilize(u, v)
        return u

    return run


CASES = [
    ("identity, ternary height 12 (2047 vertices)", case_identity),
    ("enumerate_recurrent, ternary height 4 (2187 scans)", case_enumerate),
    ("root orbit, degree 4 height 6 (364 steps)", case_root_orbit),
    ("random walk, 20000 chip drops, ternary height 6", case_random_walk),
]


def best_time(make, backend: str, repeat: int) -> float:
    firing.force_backend(backend)
    try:
        best = float("inf")
        for _ in range(repeat):
            run = make()  # fresh graph, empty caches
            t0 = time.perf_counter()
            run()
            best = min(best, time.perf_counter() - t0)
        return best
    finally:
        firing.force_backend(None)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["pure"]
    if firing.compiled_available():
        backends.insert(0, "compiled")
    else:
        print("compiled kernel not available, timing pure only")

    width = max(len(name) for name, _ in CASES)
    header = f"{'case':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, factory in CASES:
        times = [best_time(factory, b, args.repeat) for b in backends]
        row = f"{name:<{width}}  " + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
