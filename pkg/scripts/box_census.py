"""Grid-approximate census of a box family at several resolutions.

The inner grid only approximates each fiber, so the count can move with
the resolution; this prints how it settles.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from arrhocolim.fiber_census import BoxFamily3D, box_census, load_family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--input", default=str(Path(__file__).resolve().parent.parent / "data" / "three-boxes.json"))
    ap.add_argument("--res", type=int, nargs="+", default=[2, 4, 8, 12])
    args = ap.parse_args()
    fam = load_family(Path(args.input).read_text())
    if not isinstance(fam, BoxFamily3D):
        ap.error("input must be a box-v1 family")
    for r in args.res:
        rep = box_census(fam, r)
        print(f"resolution {r:>3}: {rep.distinct_count} distinct signatures, constancy {rep.constancy_ok}")


if __name__ == "__main__":
    main()
