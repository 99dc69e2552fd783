#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the step kernel (all three rules), the Hebbian sweep, and a full
inference run, on the shipped 9-concept trained map and on a synthetic dense
50-concept map. The engine resolves kernels through module attributes, so the
full-run comparison works by swapping the backend in place.

Usage: python benchmarks/bench_kernels.py [--number N] [--repeat R]
"""

from __future__ import annotations

import argparse
import random
import timeit
from array import array

import fcmkit._kernels as kernels
from fcmkit import fixtures, run
from fcmkit._kernels import available_backends
from fcmkit.model import FcmModel, make_concepts
from fcmkit.rules import ClampPolicy, RuleConfig, UpdateRule


def synthetic_model(n: int, seed: int = 42) -> FcmModel:
    rng = random.Random(seed)
    labels = [f"C{i}" for i in range(n)]
    rows = tuple(
        tuple(rng.uniform(-1, 1) if rng.random() < 0.7 else 0.0 for _ in range(n))
        for _ in range(n)
    )
    return FcmModel(
        "synthetic",
        make_concepts(labels, labels[:2]),
        rows,
        RuleConfig(rule=UpdateRule.RESCALED, max_iterations=50),
    )


def bench(fn, number: int, repeat: int) -> float:
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def kernel_cases(model: FcmModel):
    n = model.n
    rng = random.Random(1)
    values = array("d", (rng.random() for _ in range(n)))
    weights = array("d", [w for row in model.weights for w in row])
    clamped = array("b", bytes(n))
    return n, values, weights, clamped


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--number", type=int, default=2000, help="calls per timing sample")
    parser.add_argument("--repeat", type=int, default=5, help="timing samples per case")
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernels not built; showing pure-Python timings only")
    rows: list[tuple[str, dict[str, float]]] = []

    models = {
        "9-concept trained map": fixtures.model("fcm1_trained"),
        "50-concept dense map": synthetic_model(50),
    }

    for model_name, model in models.items():
        n, values, weights, clamped = kernel_cases(model)
        for rule_name, rule in (("additive", 0), ("source-sum", 1), ("rescaled", 2)):
            timings = {}
            for backend_name, module in backends.items():
                timings[backend_name] = bench(
                    lambda m=module: m.step(values, weights, n, rule, 1.0, False, clamped),
                    args.number,
                    args.repeat,
                )
            rows.append((f"step/{rule_name} ({model_name})", timings))
        timings = {}
        for backend_name, module in backends.items():
            timings[backend_name] = bench(
                lambda m=module: m.nhl_sweep(weights, values, n, 0.01, 0.98),
                args.number,
                args.repeat,
            )
        rows.append((f"nhl_sweep ({model_name})", timings))

    # full engine runs, flipping the active backend in place
    diabetes = (0.5, 0.5, 0.6, 0.8, 0.7, 0.3, 0.7, 0.3, 0.3)
    cfg = RuleConfig(rule=UpdateRule.RESCALED, clamp_policy=ClampPolicy.ZERO_IN_DEGREE)
    trained = fixtures.model("fcm1_trained")
    original = (kernels.sigmoid, kernels.step, kernels.nhl_sweep)
    try:
        timings = {}
        for backend_name, module in backends.items():
            kernels.sigmoid, kernels.step, kernels.nhl_sweep = (
                module.sigmoid, module.step, module.nhl_sweep,
            )
            timings[backend_name] = bench(
                lambda: run(trained, diabetes, cfg), max(1, args.number // 10), args.repeat
            )
        rows.append(("engine run to convergence (9-concept map)", timings))
    finally:
        kernels.sigmoid, kernels.step, kernels.nhl_sweep = original

    width = max(len(name) for name, _ in rows) + 2
    have_both = "compiled" in backends
    header = f"{'case'.ljust(width)}{'pure':>12}"
    if have_both:
        header += f"{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, timings in rows:
        line = f"{name.ljust(width)}{timings['pure'] * 1e6:>10.2f}us"
        if have_both:
            line += f"{timings['compiled'] * 1e6:>10.2f}us"
            line += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
