"""Timing comparison of the pure-Python and compiled Kummer kernels.

Runs the batched evaluator on representative argument blocks (direct series,
reflected series, deep reflection, asymptotic branch) and a mixed block, and
reports per-call medians for every available lane.

Usage: python benchmarks/bench_kernels.py [--repeats N] [--size M]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from ckn_verify._backend import available_kernels


def _blocks(size: int) -> dict:
    rng = np.random.default_rng(20240817)
    return {
        "direct   z in [-1, 60]": rng.uniform(-1.0, 60.0, size),
        "reflect  z in [-400, -5]": rng.uniform(-400.0, -5.0, size),
        "deep     z in [-1800, -700]": rng.uniform(-1800.0, -700.0, size),
        "asym     z in [-3e4, -2100]": rng.uniform(-3e4, -2100.0, size),
        "mixed    z in [-3e4, 60]": rng.uniform(-3e4, 60.0, size),
    }


def _time_call(fn, A, B, z, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(A, B, z)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=9)
    ap.add_argument("--size", type=int, default=2000)
    args = ap.parse_args()

    lanes = available_kernels()
    A, B = 1.25, 2.75
    print(f"hyp1f1_many, {args.size} points per block, "
          f"median of {args.repeats} runs")
    header = f"{'block':<28}" + "".join(f"{name:>14}" for name in sorted(lanes))
    print(header)
    print("-" * len(header))
    baselines = {}
    for label, z in _blocks(args.size).items():
        times = {}
        for name in sorted(lanes):
            mod = lanes[name]
            # agreement guard: lanes must match before timing means anything
            ref = np.asarray(lanes[sorted(lanes)[0]].hyp1f1_many(A, B, z))
            got = np.asarray(mod.hyp1f1_many(A, B, z))
            err = np.max(np.abs(got - ref) / (1.0 + np.abs(ref)))
            if err > 1e-12:
                raise SystemExit(f"lane disagreement on {label}: {err:.3e}")
            times[name] = _time_call(mod.hyp1f1_many, A, B, z, args.repeats)
        baselines[label] = times
        row = f"{label:<28}" + "".join(
            f"{times[name] * 1e3:>11.3f} ms" for name in sorted(lanes))
        print(row)
    if len(lanes) == 2:
        print()
        for label, times in baselines.items():
            speedup = times["pure"] / times["compiled"]
            print(f"{label:<28} compiled is {speedup:5.1f}x faster")


if __name__ == "__main__":
    main()
