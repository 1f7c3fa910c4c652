"""Timing comparison of the jitted and pure-numpy kernel backends.

Runs the two hot kernels of the coherent-information ascent (objective and
finite-difference gradient) on three real workloads and reports seconds per
call for each backend plus the speedup.  Invoke directly:

    python benchmarks/bench_backends.py [--repeats N] [--out PATH]

Both kernel modules are imported side by side, so the result is independent
of QCAP_BACKEND.
"""

import argparse
import json
import sys
import time

import numpy as np

from qcaplab import _kernels_numba as kernels_numba
from qcaplab import _kernels_numpy as kernels_numpy
from qcaplab.channels import tensor
from qcaplab.numerics import rng_from_seed
from qcaplab.zoo import depolarizing, erasure_50_two_qubit, horodecki_4d


def workloads():
    joint = tensor(horodecki_4d(0.5), erasure_50_two_qubit())
    return (
        ("depolarizing 2->2 k=4", depolarizing(0.1)),
        ("horodecki 4->4 k=6", horodecki_4d(0.5)),
        ("joint 16->20 k=30", joint),
    )


def time_call(fn, args, repeats):
    fn(*args)  # warm-up (first numba call compiles)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(repeats: int) -> dict:
    report = {}
    for label, ch in workloads():
        kraus, kraus_h = ch.stacks()
        rng = rng_from_seed(1234)
        params = rng.standard_normal(2 * ch.dim_in * ch.dim_in)
        entry = {}
        for name, mod in (("numpy", kernels_numpy), ("numba", kernels_numba)):
            entry[name] = {
                "objective_s": time_call(
                    mod.ic_from_params,
                    (kraus, kraus_h, params, ch.dim_in, 1e-12), repeats),
                "gradient_s": time_call(
                    mod.ic_fd_gradient,
                    (kraus, kraus_h, params, ch.dim_in, 1e-5, 1e-12),
                    max(2, repeats // 4)),
            }
        entry["speedup_objective"] = (
            entry["numpy"]["objective_s"] / entry["numba"]["objective_s"])
        entry["speedup_gradient"] = (
            entry["numpy"]["gradient_s"] / entry["numba"]["gradient_s"])
        report[label] = entry
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)
    report = bench(args.repeats)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
