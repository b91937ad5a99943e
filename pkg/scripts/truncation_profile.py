"""Homology of hocolim_m for every m on the named fixtures and on n copies
of a circle, showing where truncation starts to agree with the union."""

from __future__ import annotations

import argparse

from arrhocolim.complex_core import homology_of
from arrhocolim.arrangement import union_all
from arrhocolim.fixtures import ARRANGEMENTS, all_equal_circle
from arrhocolim.hocolim import build_hocolim, truncation_comparison


def profile(name, arr) -> None:
    union = homology_of(arr.ambient, union_all(arr))
    print(f"{name}  (n={arr.n}, union {union})")
    for m in range(arr.n):
        h = build_hocolim(arr, m)
        rel = truncation_comparison(arr, m).detail["relative"]
        print(f"  m={m}  cells={len(h.complex):>4}  H={h.homology()!s:<16} relative betti {rel['betti']}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-copies", type=int, default=4)
    args = ap.parse_args()
    for name, make in ARRANGEMENTS.items():
        profile(name, make())
    for n in range(2, args.max_copies + 1):
        profile(f"{n} equal circles", all_equal_circle(n))


if __name__ == "__main__":
    main()
