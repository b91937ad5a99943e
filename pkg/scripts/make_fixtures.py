"""Write the example input files under data/."""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

from arrhocolim.arrangement import serialize_arrangement
from arrhocolim.complex_core import SimplicialComplex
from arrhocolim.fiber_census import Box, BoxFamily3D, Slab, SlabFamily, serialize_family
from arrhocolim.fixtures import ARRANGEMENTS, two_slab_family


def corrupted_triangle() -> dict:
    """A filled triangle whose first edge has its orientation flipped."""
    cx = SimplicialComplex.full_simplex(3).to_cell_complex()
    inc = dict(cx.incidences)
    top = len(cx) - 1
    edge = cx.facets(top)[0][0]
    inc[(top, edge)] = -inc[(top, edge)]
    return {
        "format": "cells-v1",
        "dims": list(cx.dims),
        "incidences": [[c, f, v] for (c, f), v in sorted(inc.items())],
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parent.parent / "data"))
    out = Path(ap.parse_args().out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for name, make in ARRANGEMENTS.items():
        (out / f"{name}.json").write_text(serialize_arrangement(make()))
    (out / "two-slab.json").write_text(serialize_family(two_slab_family()))
    one = SlabFamily((Slab(0, 0, 0, 1, 0, 1),))
    (out / "one-slab.json").write_text(serialize_family(one))
    F = Fraction
    boxes = BoxFamily3D((
        Box((F(0), F(2)), (F(0), F(2)), (F(0), F(2))),
        Box((F(1), F(3)), (F(1), F(3)), (F(1), F(3))),
        Box((F(0), F(3)), (F(2), F(3)), (F(1, 2), F(5, 2))),
    ))
    (out / "three-boxes.json").write_text(serialize_family(boxes))
    (out / "corrupted-triangle.json").write_text(json.dumps(corrupted_triangle()) + "\n")
    for p in sorted(out.glob("*.json")):
        print(p)


if __name__ == "__main__":
    main()
