"""Compare the compiled and numpy scan backends on exhaustive minimum-distance scans.

    python benchmarks/bench_scan.py [--repeat 3] [--quick]
"""

from __future__ import annotations

import argparse
import time

from flagrank import constructions, scan
from flagrank.flagcodes import exact_min_distance
from flagrank.gf import gf


def workloads(quick: bool):
    yield "ex5_5 GF(2)", constructions.named_example("ex5_5", gf(2))
    yield "delta3 GF(2) n=6", constructions.construction_delta3(gf(2), 6)
    yield "ex5_5 GF(3)", constructions.named_example("ex5_5", gf(3))
    if not quick:
        yield "ex5_5 GF(4)", constructions.named_example("ex5_5", gf(4))
        yield "C GF(4) n=5", constructions.construction_C(gf(4), 5)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest workloads")
    args = ap.parse_args()

    backends = scan.available_backends()
    print(f"{'workload':<20} {'codewords':>10} " + " ".join(f"{b + ' [s]':>14}" for b in backends) + "  speedup")
    for name, C in workloads(args.quick):
        times, weights, examined = {}, set(), 0
        for b in backends:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = exact_min_distance(C, backend=b)
                best = min(best, time.perf_counter() - t0)
            times[b] = best
            weights.add(res.weight)
            examined = res.examined
        assert len(weights) == 1, f"backends disagree on {name}: {weights}"
        ratio = times["python"] / times["compiled"] if "compiled" in times else 1.0
        cols = " ".join(f"{times[b]:>14.4f}" for b in backends)
        print(f"{name:<20} {examined:>10} {cols}  {ratio:6.1f}x")


if __name__ == "__main__":
    main()
