"""Compare the compiled and pure-Python evaluation kernels.

Compiles every constraint body of the bundled knowledge base once,
generates randomized candidate specs, and times repeated execution of
the same plans under both kernels. Counts are cross-checked so a
mismatch fails loudly instead of producing a meaningless timing.

Usage: python benchmarks/bench_eval.py [--specs N] [--encodings N] [--repeats N]
"""

import argparse
import random
import statistics
import time
from pathlib import Path

from asplens.model import extract_constraints, extract_weights, load_weights_program
from asplens.parser import parse_program
from asplens.scoring import EncodedFacts, UnsupportedBody, compile_body, facts_from_source
from asplens.scoring import _kernel_py

try:
    from asplens.scoring import _kernel
except ImportError:
    _kernel = None

FIXTURES = Path(__file__).parent.parent / "fixtures"

MARKS = ("point", "bar", "line", "area", "text", "tick", "rect", "rule")
CHANNELS = ("x", "y", "size", "color", "shape", "text", "detail", "row", "column")
TYPES = ("quantitative", "ordinal", "nominal", "temporal")
AGGREGATES = ("sum", "mean", "median", "min", "max", "count")


def random_spec(rng: random.Random, n_encodings: int) -> str:
    lines = []
    mark = rng.choice(MARKS)
    lines.append(f"mark({mark}).")
    lines.append("mark_count(1).")
    channels = rng.sample(CHANNELS, min(n_encodings, len(CHANNELS)))
    positions = sum(1 for c in channels if c in ("x", "y"))
    aggregates = 0
    for i, channel in enumerate(channels):
        e = f"e{i}"
        lines.append(f"channel({e},{channel}).")
        lines.append(f"channel_used({channel}).")
        lines.append(f"field({e},f{i}).")
        lines.append(f"type({e},{rng.choice(TYPES)}).")
        if rng.random() < 0.4:
            lines.append(f"aggregate({e},{rng.choice(AGGREGATES)}).")
            aggregates += 1
        if rng.random() < 0.3:
            lines.append(f"bin({e},{rng.randint(1, 30)}).")
        if rng.random() < 0.3:
            lines.append(f"zero({e}).")
        if rng.random() < 0.15:
            lines.append(f"log({e}).")
        if rng.random() < 0.2:
            lines.append(f"stack({e},{rng.choice(('zero', 'normalize', 'center'))}).")
        lines.append(f"cardinality({e},{rng.randint(1, 80)}).")
        lines.append(f"entropy({e},{rng.randint(0, 9)}).")
        lines.append(f"skew({e},{rng.randint(0, 6)}).")
        lo = rng.randint(-1000, 1000)
        lines.append(f"extent({e},{lo},{lo + rng.randint(0, 200000)}).")
    lines.append(f"channel_count({len(channels)}).")
    lines.append(f"position_count({positions}).")
    lines.append(f"aggregate_count({aggregates}).")
    lines.append(f"rows({rng.randint(1, 100000)}).")
    lines.append(f"cols({rng.randint(1, 30)}).")
    lines.append(f"numeric_count({rng.randint(0, 15)}).")
    lines.append(f"string_count({rng.randint(0, 15)}).")
    lines.append(f"missing_share({rng.randint(0, 100)}).")
    return "\n".join(lines) + "\n"


def build_plans(cset, specs):
    plans = []
    for source in specs:
        facts = facts_from_source(source, name="bench")
        enc = EncodedFacts(facts)
        for constraint in cset.constraints:
            try:
                plans.append(compile_body(constraint, enc))
            except UnsupportedBody:
                pass
    return plans


def run_kernel(kernel, plans, repeats):
    # warm up and collect counts for the cross-check
    counts = [kernel.execute(plan, witness_cap=0)[0] for plan in plans]
    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        for plan in plans:
            kernel.execute(plan, witness_cap=0)
        samples.append(time.perf_counter() - started)
    return counts, samples


def main() -> None:
    argp = argparse.ArgumentParser(description=__doc__)
    argp.add_argument("--specs", type=int, default=40, help="candidate specs to generate")
    argp.add_argument("--encodings", type=int, default=6, help="encodings per spec")
    argp.add_argument("--repeats", type=int, default=5, help="timing repetitions")
    argp.add_argument("--seed", type=int, default=1)
    args = argp.parse_args()

    kb_text = (FIXTURES / "draco" / "kb.lp").read_text()
    weights_text = (FIXTURES / "draco" / "weights.lp").read_text()
    cset = extract_constraints(parse_program(kb_text, source_name="kb.lp"))
    cset = extract_weights(load_weights_program(weights_text, source_name="weights.lp"), cset)

    rng = random.Random(args.seed)
    specs = [random_spec(rng, args.encodings) for _ in range(args.specs)]
    plans = build_plans(cset, specs)
    print(f"constraints={len(cset.constraints)} specs={args.specs} "
          f"plans={len(plans)} repeats={args.repeats}")

    kernels = [("python", _kernel_py)]
    if _kernel is not None:
        kernels.append(("compiled", _kernel))
    else:
        print("compiled kernel not built; timing pure Python only")

    results = {}
    for name, kernel in kernels:
        counts, samples = run_kernel(kernel, plans, args.repeats)
        results[name] = (counts, samples)
        best = min(samples)
        print(f"{name:>9}: best {best * 1e3:8.2f} ms  "
              f"median {statistics.median(samples) * 1e3:8.2f} ms  "
              f"({best / len(plans) * 1e6:6.2f} us/plan)")

    if len(results) == 2:
        py_counts, py_samples = results["python"]
        c_counts, c_samples = results["compiled"]
        if py_counts != c_counts:
            raise SystemExit("kernel disagreement: counts differ")
        print(f"counts agree on all {len(py_counts)} plan executions")
        print(f"speedup: {min(py_samples) / min(c_samples):.1f}x")


if __name__ == "__main__":
    main()
