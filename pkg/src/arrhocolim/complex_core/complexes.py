"""Simplicial and regular cell complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Sequence


def _faces(simplex: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    """Codimension-one faces of a simplex, i-th vertex deleted in order."""
    if len(simplex) <= 1:
        return ()
    return (simplex[:i] + simplex[i + 1:] for i in range(len(simplex)))


def _all_faces(simplex: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    for k in range(1, len(simplex) + 1):
        yield from combinations(simplex, k)


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex on vertices ``0..vertex_count-1``.

    Simplices are stored as strictly increasing vertex tuples.
    """

    vertex_count: int
    simplices: frozenset

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        simplices = frozenset(tuple(s) for s in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        for s in simplices:
            if not s:
                raise ValueError("empty simplex")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ValueError(f"simplex {list(s)} is not strictly increasing")
            if s[0] < 0 or s[-1] >= self.vertex_count:
                raise ValueError(f"simplex {list(s)} has a vertex out of range")
            for f in _faces(s):
                if f not in simplices:
                    raise ValueError(f"simplex {list(s)} is missing face {list(f)}")

    @classmethod
    def from_maximal(
        cls,
        vertex_count: int,
        maximal: Iterable[Sequence[int]],
        all_vertices: bool = False,
    ) -> "SimplicialComplex":
        """Downward closure of the listed simplices."""
        out = set()
        for s in maximal:
            s = tuple(sorted(set(s)))
            if s:
                out.update(_all_faces(s))
        if all_vertices:
            out.update((v,) for v in range(vertex_count))
        return cls(vertex_count, frozenset(out))

    @classmethod
    def full_simplex(cls, vertex_count: int) -> "SimplicialComplex":
        return cls.from_maximal(vertex_count, [range(vertex_count)])

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @cached_property
    def ordered(self) -> tuple[tuple[int, ...], ...]:
        """Simplices sorted by (dimension, lexicographic); this is cell-id order."""
        return tuple(sorted(self.simplices, key=lambda s: (len(s), s)))

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.ordered)}

    def maximal_simplices(self) -> list[tuple[int, ...]]:
        covered = set()
        for s in self.simplices:
            covered.update(_faces(s))
        return sorted(s for s in self.simplices if s not in covered)

    def count_by_dim(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def to_cell_complex(self) -> "CellComplex":
        """Cell complex with the alternating-sign simplicial boundary."""
        index = self.index
        incidences = {}
        for s in self.ordered:
            if len(s) > 1:
                c = index[s]
                for i, f in enumerate(_faces(s)):
                    incidences[(c, index[f])] = -1 if i % 2 else 1
        return CellComplex([len(s) - 1 for s in self.ordered], incidences, labels=self.ordered)


class CellComplex:
    """Finite cell complex given by cell dimensions and signed facet incidences.

    Cell ids are the dense positions ``0..len(dims)-1``.  Nothing is checked
    on construction; see :func:`validate_complex`.
    """

    def __init__(
        self,
        dims: Sequence[int],
        incidences: Mapping[tuple[int, int], int],
        labels: Sequence[Hashable] | None = None,
    ):
        self.dims = tuple(int(d) for d in dims)
        self.incidences = {k: v for k, v in incidences.items()}
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.dims)))
        if len(self.labels) != len(self.dims):
            raise ValueError("labels and dims differ in length")
        facets: list[list[tuple[int, int]]] = [[] for _ in self.dims]
        for (c, f), v in sorted(self.incidences.items()):
            if 0 <= c < len(facets):
                facets[c].append((f, v))
        self._facets = tuple(tuple(x) for x in facets)

    def __len__(self) -> int:
        return len(self.dims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return (self.dims, self.labels, self.incidences) == (other.dims, other.labels, other.incidences)

    def __hash__(self) -> int:
        return hash((self.dims, self.labels, len(self.incidences)))

    def __repr__(self) -> str:
        return f"CellComplex(cells={len(self)}, dim={self.dimension})"

    @property
    def dimension(self) -> int:
        return max(self.dims, default=-1)

    def facets(self, c: int) -> tuple[tuple[int, int], ...]:
        """(facet id, coefficient) pairs of cell ``c``, in facet id order."""
        return self._facets[c]

    @cached_property
    def _cofacets(self) -> tuple[tuple[int, ...], ...]:
        co: list[list[int]] = [[] for _ in self.dims]
        for (c, f) in sorted(self.incidences):
            if 0 <= f < len(co):
                co[f].append(c)
        return tuple(tuple(x) for x in co)

    def cofacets(self, c: int) -> tuple[int, ...]:
        return self._cofacets[c]

    def cells_of_dim(self, d: int) -> list[int]:
        return [c for c, k in enumerate(self.dims) if k == d]

    def count_by_dim(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for d in self.dims:
            counts[d] += 1
        return counts

    def closure(self, cells: Iterable[int]) -> frozenset[int]:
        """All cells in the closure (iterated facets) of ``cells``."""
        seen = set()
        stack = list(cells)
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            stack.extend(f for f, _ in self._facets[c])
        return frozenset(seen)

    def is_subcomplex(self, cells: Iterable[int]) -> bool:
        cells = set(cells)
        return all(f in cells for c in cells for f, _ in self._facets[c])

    def restrict(self, cells: Iterable[int]) -> "CellComplex":
        """Subcomplex on ``cells`` (renumbered in id order, labels kept)."""
        keep = sorted(set(cells))
        new = {c: i for i, c in enumerate(keep)}
        inc = {}
        for c in keep:
            for f, v in self._facets[c]:
                if f in new:
                    inc[(new[c], new[f])] = v
        return CellComplex([self.dims[c] for c in keep], inc, labels=[self.labels[c] for c in keep])


@dataclass
class Violation:
    cell: int
    kind: str
    message: str

    def to_json(self) -> dict[str, Any]:
        return {"cell": self.cell, "kind": self.kind, "message": self.message}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"cell {v.cell}: {v.message}" for v in self.violations)

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


class InvalidComplexError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


def validate_complex(complex: CellComplex) -> ValidationReport:
    """Check the regular-cell-complex invariants, returning all violations.

    Checked: incidences reference existing cells one dimension down, with
    coefficients in {-1, +1}; every cell of positive dimension has a
    boundary (a 1-cell has exactly two endpoints of opposite sign); and the
    boundary of every boundary vanishes.
    """
    n = len(complex)
    dims = complex.dims
    out: list[Violation] = []
    for (c, f), v in sorted(complex.incidences.items()):
        if not (0 <= c < n) or not (0 <= f < n):
            out.append(Violation(c, "unknown-cell", f"incidence ({c}, {f}) references an unknown cell"))
            continue
        if dims[f] != dims[c] - 1:
            out.append(Violation(c, "dimension", f"facet {f} has dimension {dims[f]}, expected {dims[c] - 1}"))
        if v not in (1, -1):
            out.append(Violation(c, "coefficient", f"incidence out of {{-1,+1}}: [{c}:{f}] = {v}"))
    for c in range(n):
        facets = [(f, v) for f, v in complex.facets(c) if 0 <= f < n]
        if dims[c] == 1:
            if len(facets) != 2 or sum(v for _, v in facets) != 0:
                out.append(Violation(c, "missing-facets", "edge boundary is not two endpoints of opposite sign"))
        elif dims[c] >= 2 and len(facets) < 2:
            out.append(Violation(c, "missing-facets", f"{dims[c]}-cell has {len(facets)} facets"))
        if dims[c] >= 2:
            acc: dict[int, int] = {}
            for f, v in facets:
                for g, w in complex.facets(f):
                    acc[g] = acc.get(g, 0) + v * w
            bad = sorted(g for g, s in acc.items() if s)
            if bad:
                out.append(Violation(c, "boundary-squared", f"nonzero boundary of boundary at cell {c} (faces {bad})"))
    out.sort(key=lambda v: v.cell)
    return ValidationReport(out)


def barycentric_subdivision(complex: SimplicialComplex) -> SimplicialComplex:
    return subdivide(complex)[0]


def subdivide(complex: SimplicialComplex) -> tuple[SimplicialComplex, dict[tuple[int, ...], int]]:
    """Barycentric subdivision plus the map simplex -> barycenter vertex.

    Barycenters are numbered in cell-id order of the input.  A simplex of the
    result is a chain of input simplices under strict inclusion.
    """
    bary = complex.index
    chains: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in complex.ordered:
        top = bary[s]
        found = [(top,)]
        for f in _all_faces(s):
            if f != s:
                found.extend(ch + (top,) for ch in chains[f])
        chains[s] = found
    simplices = frozenset(tuple(sorted(ch)) for found in chains.values() for ch in found)
    return SimplicialComplex(len(complex.ordered), simplices), bary


def subdivide_subcomplex(
    sd: SimplicialComplex, sub: Iterable[tuple[int, ...]], bary: Mapping[tuple[int, ...], int]
) -> frozenset[tuple[int, ...]]:
    """Simplices of ``sd`` = Sd(K) forming Sd(L) for the subcomplex ``sub`` = L."""
    keep = {bary[s] for s in sub}
    return frozenset(t for t in sd.simplices if all(v in keep for v in t))


def skeleton(complex: SimplicialComplex, m: int) -> SimplicialComplex:
    if m < 0:
        raise ValueError("skeleton dimension must be nonnegative")
    return SimplicialComplex(complex.vertex_count, frozenset(s for s in complex.simplices if len(s) <= m + 1))


def connected_components(complex: CellComplex, cell_subset: Iterable[int]) -> list[frozenset[int]]:
    """Components of a union of open cells.

    Two cells of the subset are adjacent when one lies in the closure of the
    other; faces outside the subset do not connect anything.
    """
    cells = sorted(set(cell_subset))
    n = len(complex)
    for c in cells:
        if not (0 <= c < n):
            raise ValueError(f"unknown cell id {c}")
    inside = set(cells)
    parent = {c: c for c in cells}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cells:
        for f in complex.closure([c]):
            if f != c and f in inside:
                a, b = find(c), find(f)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for c in cells:
        groups.setdefault(find(c), set()).add(c)
    return sorted((frozenset(g) for g in groups.values()), key=min)
