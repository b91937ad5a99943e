"""Exact fiber census over one-parameter families of intervals (and boxes).

A slab is {(x, z) : a z + b <= x <= c z + d, e <= z <= f} with rational
coefficients, so its fiber over z is a closed interval or empty.  All
fiber endpoints are affine in z; their order type (and which fibers are
empty) can only change where two endpoint lines cross or at a domain end,
which gives a finite, exactly computable list of critical values.

The census evaluates a diagram signature at every critical value and inside
every open interval between them, and counts distinct signatures.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import statistics
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .arrangement import Arrangement
from .complex_core import CellComplex, SimplicialComplex
from .hocolim import DiagramSignature, diagram_signature


class FamilyError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise FamilyError(f"expected a 'p/q' string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FamilyError(f"malformed rational {text!r}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Slab:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.e > self.f:
            raise FamilyError(f"slab z-domain is empty: e={self.e} > f={self.f}")

    def lower(self, z: Fraction) -> Fraction:
        return self.a * z + self.b

    def upper(self, z: Fraction) -> Fraction:
        return self.c * z + self.d

    def fiber(self, z: Fraction) -> tuple[Fraction, Fraction] | None:
        if not (self.e <= z <= self.f):
            return None
        lo, hi = self.lower(z), self.upper(z)
        return (lo, hi) if lo <= hi else None


@dataclass(frozen=True)
class SlabFamily:
    slabs: tuple[Slab, ...]

    def __post_init__(self):
        object.__setattr__(self, "slabs", tuple(self.slabs))
        if not self.slabs:
            raise FamilyError("a family needs at least one slab")

    @property
    def n(self) -> int:
        return len(self.slabs)


@dataclass(frozen=True)
class FiberArrangement:
    z: Fraction
    intervals: tuple[tuple[Fraction, Fraction] | None, ...]

    @property
    def n_nonempty(self) -> int:
        return sum(iv is not None for iv in self.intervals)


def critical_values(fam: SlabFamily) -> list[Fraction]:
    """Domain ends plus every crossing of two endpoint lines inside both domains."""
    out = set()
    lines = []
    for i, s in enumerate(fam.slabs):
        out.update((s.e, s.f))
        lines.append((i, s.a, s.b))
        lines.append((i, s.c, s.d))
    for (i, a1, b1), (j, a2, b2) in combinations(lines, 2):
        if a1 == a2:
            # parallel or identical: no isolated crossing
            continue
        z = (b2 - b1) / (a1 - a2)
        si, sj = fam.slabs[i], fam.slabs[j]
        if max(si.e, sj.e) <= z <= min(si.f, sj.f):
            out.add(z)
    return sorted(out)


def fiber_at(fam: SlabFamily, z) -> FiberArrangement:
    z = Fraction(z)
    return FiberArrangement(z, tuple(s.fiber(z) for s in fam.slabs))


def _order_type(intervals: Sequence[tuple[Fraction, Fraction] | None]) -> tuple:
    """Endpoint ranks; fibers sharing this key give identical arrangements."""
    points = sorted({p for iv in intervals if iv is not None for p in iv})
    rank = {p: k for k, p in enumerate(points)}
    return (len(points),) + tuple(None if iv is None else (rank[iv[0]], rank[iv[1]]) for iv in intervals)


def interval_arrangement(
    intervals: Sequence[tuple[Fraction, Fraction] | None], pad: bool = False
) -> tuple[Arrangement, list[Fraction]]:
    """Triangulate a segment at the interval endpoints; each interval becomes
    the subcomplex it covers.

    With ``pad`` the segment reaches one unit past the outermost endpoints,
    so the unbounded complement pieces of the line are represented.
    Returns the arrangement and the vertex coordinates.
    """
    points = sorted({Fraction(p) for iv in intervals if iv is not None for p in iv})
    if pad:
        points = [points[0] - 1] + points + [points[-1] + 1] if points else [Fraction(-1), Fraction(1)]
    k = len(points)
    ambient = SimplicialComplex.from_maximal(k, [(j, j + 1) for j in range(k - 1)], all_vertices=True)
    sets = []
    for iv in intervals:
        if iv is None:
            sets.append([])
            continue
        lo, hi = iv
        inside = [j for j, p in enumerate(points) if lo <= p <= hi]
        simplices = [(j,) for j in inside] + [(j, j + 1) for j in inside if j + 1 in inside]
        sets.append(simplices)
    return Arrangement.from_simplicial(ambient, sets), points


def fiber_to_arrangement(fiber: FiberArrangement) -> Arrangement:
    return interval_arrangement(fiber.intervals)[0]


# --- census ---------------------------------------------------------------------


@dataclass
class Region:
    """A point {z} (``z_lo == z_hi``) or an open interval; ``None`` ends are infinite."""

    z_lo: Fraction | None
    z_hi: Fraction | None
    representative: Fraction
    signature: DiagramSignature
    n_nonempty: int
    constant: bool = True

    @property
    def is_point(self) -> bool:
        return self.z_lo is not None and self.z_lo == self.z_hi


@dataclass
class CensusReport:
    n: int
    m: int
    critical_values: list[Fraction]
    regions: list[Region]
    approximate: bool = False

    @property
    def classes(self) -> dict[str, Fraction]:
        """Signature digest -> first representative z, in sweep order."""
        out: dict[str, Fraction] = {}
        for r in self.regions:
            out.setdefault(r.signature.digest, r.representative)
        return out

    @property
    def distinct_count(self) -> int:
        return len(self.classes)

    @property
    def evaluation_points(self) -> list[Fraction]:
        return [r.representative for r in self.regions]

    @property
    def constancy_ok(self) -> bool:
        return all(r.constant for r in self.regions)

    def to_json(self) -> dict:
        sigs = {}
        for r in self.regions:
            sigs.setdefault(r.signature.digest, r.signature.to_json())
        return {
            "n": self.n,
            "m": self.m,
            "approximate": self.approximate,
            "critical_values": [format_rational(z) for z in self.critical_values],
            "distinct_count": self.distinct_count,
            "constancy_ok": self.constancy_ok,
            "regions": [
                {
                    "z_lo": _fmt_end(r.z_lo, "-inf"),
                    "z_hi": _fmt_end(r.z_hi, "inf"),
                    "representative_z": format_rational(r.representative),
                    "signature_hash": r.signature.digest,
                    "n_nonempty_sets": r.n_nonempty,
                    "constant": r.constant,
                }
                for r in self.regions
            ],
            "classes": [
                {"signature_hash": h, "representative_z": format_rational(z), "signature": sigs[h]}
                for h, z in self.classes.items()
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z_lo", "z_hi", "representative_z", "signature_hash", "betti_union_0", "betti_union_1", "n_nonempty_sets"])
        for r in self.regions:
            u = r.signature.union
            w.writerow([
                _fmt_end(r.z_lo, "-inf"),
                _fmt_end(r.z_hi, "inf"),
                format_rational(r.representative),
                r.signature.digest,
                u.betti_at(0),
                u.betti_at(1),
                r.n_nonempty,
            ])
        return buf.getvalue()


def _fmt_end(z: Fraction | None, inf: str) -> str:
    return inf if z is None else format_rational(z)


def _sweep(
    crit: list[Fraction],
    n: int,
    m: int,
    fiber: Callable[[Fraction], tuple[Hashable, Callable[[], Arrangement], int]],
    approximate: bool = False,
) -> CensusReport:
    cache: dict[Hashable, DiagramSignature] = {}

    def evaluate(z: Fraction) -> tuple[DiagramSignature, int]:
        key, build, count = fiber(z)
        if key not in cache:
            cache[key] = diagram_signature(build(), m)
        return cache[key], count

    def open_region(lo, hi, samples):
        sigs = [evaluate(z) for z in samples]
        rep = samples[0]
        sig, count = sigs[0]
        return Region(lo, hi, rep, sig, count, all(s == sig for s, _ in sigs))

    regions = []
    if not crit:
        regions.append(open_region(None, None, [Fraction(0), Fraction(1), Fraction(-1)]))
    else:
        first, last = crit[0], crit[-1]
        regions.append(open_region(None, first, [first - 1, first - 2, first - 3]))
        for k, z in enumerate(crit):
            sig, count = evaluate(z)
            regions.append(Region(z, z, z, sig, count))
            if k + 1 < len(crit):
                hi = crit[k + 1]
                width = hi - z
                regions.append(open_region(z, hi, [z + width / 2, z + width / 4, z + 3 * width / 4]))
        regions.append(open_region(last, None, [last + 1, last + 2, last + 3]))
    return CensusReport(n, m, list(crit), regions, approximate)


def census(fam: SlabFamily, m: int | None = None) -> CensusReport:
    """Distinct diagram signatures of the fibers; m defaults to k_1 = 1."""
    m = min(1, fam.n - 1) if m is None else m

    def fiber(z):
        f = fiber_at(fam, z)
        return _order_type(f.intervals), (lambda: fiber_to_arrangement(f)), f.n_nonempty

    return _sweep(critical_values(fam), fam.n, m, fiber)


def random_slab_family(seed: int, n: int) -> SlabFamily:
    """Slabs with coefficients drawn from a fixed rational grid."""
    if n < 1:
        raise FamilyError("n must be at least 1")
    rng = random.Random(seed)
    slopes = [Fraction(k, 4) for k in range(-4, 5)]
    slabs = []
    for _ in range(n):
        b = Fraction(rng.randint(-12, 12), 4)
        e = Fraction(rng.randint(0, 16), 4)
        slabs.append(Slab(
            a=rng.choice(slopes),
            b=b,
            c=rng.choice(slopes),
            d=b + Fraction(rng.randint(0, 16), 4),
            e=e,
            f=e + Fraction(rng.randint(4, 24), 4),
        ))
    return SlabFamily(tuple(slabs))


# --- boxes in R^(2+1) ----------------------------------------------------------


@dataclass(frozen=True)
class Box:
    x: tuple[Fraction, Fraction]
    y: tuple[Fraction, Fraction]
    z: tuple[Fraction, Fraction]

    def __post_init__(self):
        for name in "xyz":
            lo, hi = (Fraction(v) for v in getattr(self, name))
            if lo > hi:
                raise FamilyError(f"box {name}-interval is empty: {lo} > {hi}")
            object.__setattr__(self, name, (lo, hi))


@dataclass(frozen=True)
class BoxFamily3D:
    boxes: tuple[Box, ...]

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        if not self.boxes:
            raise FamilyError("a family needs at least one box")

    @property
    def n(self) -> int:
        return len(self.boxes)

    def bounding_rectangle(self):
        x0 = min(b.x[0] for b in self.boxes)
        x1 = max(b.x[1] for b in self.boxes)
        y0 = min(b.y[0] for b in self.boxes)
        y1 = max(b.y[1] for b in self.boxes)
        return x0, x1, y0, y1


def cubical_grid(resolution: int) -> tuple[CellComplex, dict]:
    """resolution x resolution square grid with the standard cubical signs.

    Edges point in +x / +y; a square's boundary is bottom + right - top - left.
    Returns the complex and a map from labels ("v"|"h"|"u"|"s", i, j) to ids.
    """
    r = resolution
    labels = [("v", i, j) for i in range(r + 1) for j in range(r + 1)]
    labels += [("h", i, j) for i in range(r) for j in range(r + 1)]  # (i,j)->(i+1,j)
    labels += [("u", i, j) for i in range(r + 1) for j in range(r)]  # (i,j)->(i,j+1)
    labels += [("s", i, j) for i in range(r) for j in range(r)]
    ids = {lab: k for k, lab in enumerate(labels)}
    dims = [{"v": 0, "h": 1, "u": 1, "s": 2}[lab[0]] for lab in labels]
    inc = {}
    for lab, k in ids.items():
        kind, i, j = lab
        if kind == "h":
            inc[(k, ids[("v", i, j)])] = -1
            inc[(k, ids[("v", i + 1, j)])] = 1
        elif kind == "u":
            inc[(k, ids[("v", i, j)])] = -1
            inc[(k, ids[("v", i, j + 1)])] = 1
        elif kind == "s":
            inc[(k, ids[("h", i, j)])] = 1
            inc[(k, ids[("u", i + 1, j)])] = 1
            inc[(k, ids[("h", i, j + 1)])] = -1
            inc[(k, ids[("u", i, j)])] = -1
    return CellComplex(dims, inc, labels), ids


def grid_fiber(fam: BoxFamily3D, z, resolution: int) -> Arrangement:
    """Inner grid approximation of the fiber over z.

    A square joins A_i (with its faces) iff all four corners lie in the
    fiber rectangle of box i.  This is an approximation, not exact.
    """
    if resolution < 1:
        raise FamilyError("resolution must be at least 1")
    z = Fraction(z)
    x0, x1, y0, y1 = fam.bounding_rectangle()
    if x0 == x1 or y0 == y1:
        raise FamilyError("degenerate bounding box")
    cx, ids = cubical_grid(resolution)
    xs = [x0 + (x1 - x0) * k / resolution for k in range(resolution + 1)]
    ys = [y0 + (y1 - y0) * k / resolution for k in range(resolution + 1)]
    sets = []
    for box in fam.boxes:
        if not (box.z[0] <= z <= box.z[1]):
            sets.append(frozenset())
            continue
        xin = [box.x[0] <= x <= box.x[1] for x in xs]
        yin = [box.y[0] <= y <= box.y[1] for y in ys]
        squares = [ids[("s", i, j)] for i in range(resolution) for j in range(resolution)
                   if xin[i] and xin[i + 1] and yin[j] and yin[j + 1]]
        sets.append(cx.closure(squares))
    return Arrangement(cx, tuple(sets))


def box_critical_values(fam: BoxFamily3D) -> list[Fraction]:
    return sorted({v for b in fam.boxes for v in b.z})


def box_census(fam: BoxFamily3D, resolution: int, m: int | None = None) -> CensusReport:
    """Grid-approximate census for boxes; m defaults to k_1 = 2."""
    m = min(2, fam.n - 1) if m is None else m

    def fiber(z):
        present = tuple(b.z[0] <= z <= b.z[1] for b in fam.boxes)
        return present, (lambda: grid_fiber(fam, z, resolution)), sum(present)

    return _sweep(box_critical_values(fam), fam.n, m, fiber, approximate=True)


# --- growth -----------------------------------------------------------------------


@dataclass
class GrowthFit:
    points: list[tuple[int, int]]
    slope: float
    intercept: float
    residuals: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "slope": self.slope,
            "intercept": self.intercept,
            "residuals": self.residuals,
        }


def growth_fit(runs: Iterable[tuple[int, int]]) -> GrowthFit:
    """Least-squares slope of log(count) against log(n)."""
    runs = list(runs)
    usable = [(n, c) for n, c in runs if c > 0]
    if len(usable) < len(runs):
        warnings.warn(f"excluded {len(runs) - len(usable)} runs with zero count", stacklevel=2)
    if len({n for n, _ in usable}) < 3:
        raise ValueError("growth fit needs at least 3 distinct n values with nonzero counts")
    xs = [math.log(n) for n, _ in usable]
    ys = [math.log(c) for _, c in usable]
    slope, intercept = statistics.linear_regression(xs, ys)
    residuals = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    return GrowthFit(usable, slope, intercept, residuals)


def sweep_seed(base_seed: int, n: int, trial: int) -> int:
    return base_seed * 1_000_003 + n * 1009 + trial


def sweep_growth(n_values: Sequence[int], trials: int, base_seed: int = 0) -> tuple[list[dict], GrowthFit]:
    """Census of seeded random slab families for each n; fit the growth slope."""
    runs = []
    for n in n_values:
        for t in range(trials):
            seed = sweep_seed(base_seed, n, t)
            rep = census(random_slab_family(seed, n))
            runs.append({"n": n, "seed": seed, "distinct_count": rep.distinct_count, "constancy_ok": rep.constancy_ok})
    return runs, growth_fit((r["n"], r["distinct_count"]) for r in runs)


# --- slab-v1 / box-v1 -----------------------------------------------------------------


def serialize_family(fam: SlabFamily | BoxFamily3D) -> str:
    if isinstance(fam, SlabFamily):
        doc = {
            "format": "slab-v1",
            "slabs": [{k: format_rational(getattr(s, k)) for k in "abcdef"} for s in fam.slabs],
        }
    else:
        doc = {
            "format": "box-v1",
            "boxes": [{k: [format_rational(v) for v in getattr(b, k)] for k in "xyz"} for b in fam.boxes],
        }
    return json.dumps(doc) + "\n"


def load_family(text: str) -> SlabFamily | BoxFamily3D:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FamilyError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise FamilyError("top level must be an object")
    fmt = doc.get("format")
    if fmt == "slab-v1":
        items = doc.get("slabs")
        if not isinstance(items, list) or not items:
            raise FamilyError("slabs: expected a nonempty list")
        slabs = []
        for i, s in enumerate(items):
            if not isinstance(s, dict):
                raise FamilyError(f"slabs[{i}]: expected an object")
            missing = [k for k in "abcdef" if k not in s]
            if missing:
                raise FamilyError(f"slabs[{i}]: missing field {missing[0]!r}")
            try:
                slabs.append(Slab(**{k: parse_rational(s[k]) for k in "abcdef"}))
            except FamilyError as e:
                raise FamilyError(f"slabs[{i}]: {e}") from None
        return SlabFamily(tuple(slabs))
    if fmt == "box-v1":
        items = doc.get("boxes")
        if not isinstance(items, list) or not items:
            raise FamilyError("boxes: expected a nonempty list")
        boxes = []
        for i, b in enumerate(items):
            if not isinstance(b, dict):
                raise FamilyError(f"boxes[{i}]: expected an object")
            try:
                coords = {}
                for k in "xyz":
                    pair = b.get(k)
                    if not isinstance(pair, list) or len(pair) != 2:
                        raise FamilyError(f"field {k!r}: expected [lo, hi]")
                    coords[k] = tuple(parse_rational(v) for v in pair)
                boxes.append(Box(**coords))
            except FamilyError as e:
                raise FamilyError(f"boxes[{i}]: {e}") from None
        return BoxFamily3D(tuple(boxes))
    raise FamilyError(f"format: expected 'slab-v1' or 'box-v1', got {fmt!r}")
