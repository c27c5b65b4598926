"""Stress the constructive rigidity test against the numeric one.

Samples random conic graphs with arc counts straddling the rigidity
threshold, runs the decomposition search and the generic rank check on
each, and reports agreement plus wall-clock totals. Any disagreement
would be printed with the offending graph; none is expected.

Usage: python3 scripts/verdict_agreement.py [--trials 500] [--max-n 9]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from conicrig import (
    ConicGraph,
    DirectedGraph,
    RigidityOracle,
    conic_class,
    decompose,
    is_decomposition_of,
    s_conic,
)


@dataclass(frozen=True)
class ExperimentConfig:
    trials: int = 500
    min_n: int = 3
    max_n: int = 9
    d: int = 2
    seed: int = 42


def random_conic_graph(rng: np.random.Generator, n: int, d: int) -> ConicGraph:
    # arc counts within +-3 of the threshold keep both verdicts likely
    spread = int(rng.integers(-3, 4))
    count = max(0, min(s_conic(n, d) + spread, n * (n - 1)))
    ordered = [(u, w) for u in range(n) for w in range(n) if u != w]
    idx = rng.choice(len(ordered), size=count, replace=False)
    return conic_class(DirectedGraph(n, [ordered[i] for i in idx]))


def run(cfg: ExperimentConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    sizes = range(cfg.min_n, cfg.max_n + 1)
    # separate oracles, else the cross-check inside decompose would warm
    # the cache and the numeric timing would measure nothing
    oracles_dec = {n: RigidityOracle(n, cfg.d) for n in sizes}
    oracles_num = {n: RigidityOracle(n, cfg.d, backend="numeric") for n in sizes}
    rigid = flexible = disagreements = 0
    t_decompose = t_numeric = 0.0
    for _ in range(cfg.trials):
        n = int(rng.integers(cfg.min_n, cfg.max_n + 1))
        cg = random_conic_graph(rng, n, cfg.d)

        t0 = time.perf_counter()
        dec, trace = decompose(cg, oracles_dec[n])
        t_decompose += time.perf_counter() - t0

        t0 = time.perf_counter()
        numeric = oracles_num[n].conic_rank(cg) == s_conic(n, cfg.d)
        t_numeric += time.perf_counter() - t0

        if (dec is not None) != numeric:
            disagreements += 1
            print(f"DISAGREE n={n} simple={cg.simple_edges} double={cg.double_edges}")
            continue
        if dec is None:
            flexible += 1
        else:
            rigid += 1
            assert is_decomposition_of(dec, cg)
            assert trace.numeric_rank == s_conic(n, cfg.d)

    print(f"trials: {cfg.trials}  rigid: {rigid}  flexible: {flexible}")
    print(f"disagreements: {disagreements}")
    print(f"decomposition time: {t_decompose:.2f}s  numeric time: {t_numeric:.2f}s")
    return disagreements


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--min-n", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--d", type=int, default=2)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    cfg = ExperimentConfig(args.trials, args.min_n, args.max_n, args.d, args.seed)
    if cfg.min_n < 2 or cfg.max_n < cfg.min_n or cfg.d < 2:
        parser.error("need 2 <= min-n <= max-n and d >= 2")
    raise SystemExit(1 if run(cfg) else 0)


if __name__ == "__main__":
    main()
