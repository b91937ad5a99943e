"""Census growth experiment for random slab families.

Runs the fiber census for seeded random families at each n, fits the
log-log slope of distinct signature counts and writes a JSON summary.
"""

from __future__ import annotations

import argparse
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from arrhocolim.fiber_census import sweep_growth


@dataclass
class SweepConfig:
    n_values: list[int] = field(default_factory=lambda: [4, 8, 12, 16])
    trials: int = 10
    seed: int = 0
    out: str = "results/growth_sweep.json"


def parse_args() -> SweepConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[4, 8, 12, 16])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/growth_sweep.json")
    a = ap.parse_args()
    return SweepConfig(a.n, a.trials, a.seed, a.out)


def main() -> None:
    cfg = parse_args()
    start = time.perf_counter()
    runs, fit = sweep_growth(cfg.n_values, cfg.trials, cfg.seed)
    elapsed = time.perf_counter() - start

    print(f"{'n':>4} {'mean':>8} {'min':>5} {'max':>5}")
    for n in cfg.n_values:
        counts = [r["distinct_count"] for r in runs if r["n"] == n]
        print(f"{n:>4} {statistics.mean(counts):>8.2f} {min(counts):>5} {max(counts):>5}")
    print(f"slope {fit.slope:.4f}  intercept {fit.intercept:.4f}  ({elapsed:.1f}s)")

    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"config": asdict(cfg), "runs": runs, "fit": fit.to_json(), "seconds": elapsed}, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
