"""Truncated homotopy colimits of subcomplex arrangements.

hocolim_m(A) is realized by product cells (J, c): c an ambient cell and J a
nonempty subset of I_c with |J| <= m + 1, of dimension (|J| - 1) + dim c.
The boundary of (J, c) is

    sum_t (-1)^t (J - {j_t}, c)  +  (-1)^(|J|-1) sum_{c'} [c : c'] (J, c')

with j_t the t-th smallest element of J (first sum omitted when |J| = 1).
``hocolim_chain_total`` builds the same chain complex a second way, as the
total complex of the Cech double complex, to cross-check the first.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .arrangement import (
    Arrangement,
    BooleanFormula,
    boolean_combination,
    sub_intersection,
    subdivide_arrangement,
    union_all,
)
from .complex_core import (
    CellComplex,
    ChainComplex,
    HomologyReport,
    IntMatrix,
    SimplicialComplex,
    chain_complex_of,
    homology,
    homology_of,
    relative_homology,
)
from .reports import CheckReport, compare_degreewise


def _check_m(arr: Arrangement, m: int) -> None:
    if not isinstance(m, int) or not (0 <= m <= arr.n - 1):
        raise ValueError(f"m must lie in 0..{arr.n - 1}, got {m}")


@dataclass(frozen=True)
class HocolimComplex:
    base: Arrangement
    m: int
    complex: CellComplex
    cells: tuple[tuple[tuple[int, ...], int], ...]

    def nerve_label(self, cell: int) -> tuple[int, ...]:
        """Projection to the simplex on [n]: (J, c) -> J."""
        return self.cells[cell][0]

    def space_label(self, cell: int) -> int:
        """Projection to the union of the A_i: (J, c) -> c."""
        return self.cells[cell][1]

    @cached_property
    def index(self) -> dict[tuple[tuple[int, ...], int], int]:
        return {key: i for i, key in enumerate(self.cells)}

    def cells_up_to(self, m: int) -> list[int]:
        """Cell ids of hocolim_m inside this complex."""
        return [i for i, (J, _) in enumerate(self.cells) if len(J) <= m + 1]

    def homology(self) -> HomologyReport:
        return homology(chain_complex_of(self.complex, validate=False))


def build_hocolim(arr: Arrangement, m: int) -> HocolimComplex:
    _check_m(arr, m)
    amb = arr.ambient
    keys = []
    for c, sig in enumerate(arr.signatures):
        members = sorted(sig)
        for k in range(1, min(len(members), m + 1) + 1):
            for J in combinations(members, k):
                keys.append((len(J) - 1 + amb.dims[c], c, J))
    keys.sort()
    cells = tuple((J, c) for _, c, J in keys)
    index = {key: i for i, key in enumerate(cells)}
    incidences = {}
    for i, (J, c) in enumerate(cells):
        if len(J) > 1:
            for t in range(len(J)):
                incidences[(i, index[(J[:t] + J[t + 1:], c)])] = -1 if t % 2 else 1
        twist = -1 if (len(J) - 1) % 2 else 1
        for f, v in amb.facets(c):
            incidences[(i, index[(J, f)])] = twist * v
    cx = CellComplex([d for d, _, _ in keys], incidences, labels=cells)
    return HocolimComplex(arr, m, cx, cells)


def hocolim_chain_total(arr: Arrangement, m: int) -> ChainComplex:
    """Total complex of the truncated Cech double complex, p <= m.

    D[p, q] is the sum over |J| = p + 1 of C_q(A_J), with horizontal maps the
    alternating face inclusions and vertical maps (-1)^p times the ambient
    cellular boundary.  Bases are ordered by (p, J, cell id).
    """
    _check_m(arr, m)
    amb_chain = chain_complex_of(arr.ambient, validate=False)
    amb = arr.ambient
    # local position of every ambient cell inside its degree
    by_dim: dict[int, list[int]] = {}
    for c, d in enumerate(amb.dims):
        by_dim.setdefault(d, []).append(c)
    local = {c: k for cells in by_dim.values() for k, c in enumerate(cells)}

    blocks: dict[tuple[int, ...], frozenset[int]] = {}
    for p in range(m + 1):
        for J in combinations(range(1, arr.n + 1), p + 1):
            cells = sub_intersection(arr, J)
            if cells:
                blocks[J] = cells

    top = max((len(J) - 1 + amb.dims[c] for J, cells in blocks.items() for c in cells), default=-1)
    basis: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(top + 1)]
    for J in sorted(blocks, key=lambda J: (len(J), J)):
        for c in sorted(blocks[J]):
            basis[len(J) - 1 + amb.dims[c]].append((J, c))
    position = [{g: k for k, g in enumerate(gens)} for gens in basis]

    boundaries = [IntMatrix.zeros(0, len(basis[0]))] if basis else []
    for d in range(1, top + 1):
        cols = []
        for J, c in basis[d]:
            col: dict[int, int] = {}
            p = len(J) - 1
            if p > 0:
                for t in range(len(J)):
                    target = position[d - 1][(J[:t] + J[t + 1:], c)]
                    col[target] = col.get(target, 0) + (-1) ** t
            q = amb.dims[c]
            if q > 0:
                column = amb_chain.boundaries[q].cols[local[c]]
                for row, v in column.items():
                    face = by_dim[q - 1][row]
                    target = position[d - 1][(J, face)]
                    col[target] = col.get(target, 0) + (-1) ** p * v
            cols.append(col)
        boundaries.append(IntMatrix(len(basis[d - 1]), len(basis[d]), cols))
    return ChainComplex(tuple(len(b) for b in basis), tuple(boundaries))


def compare_hocolim_oracles(arr: Arrangement, m: int) -> CheckReport:
    lhs = build_hocolim(arr, m).homology()
    rhs = homology(hocolim_chain_total(arr, m))
    return compare_degreewise("hocolim-oracle", lhs, rhs, m=m)


def union_comparison(arr: Arrangement) -> CheckReport:
    """H(hocolim_{n-1}) against H(union of all A_i)."""
    lhs = build_hocolim(arr, arr.n - 1).homology()
    rhs = homology_of(arr.ambient, union_all(arr))
    return compare_degreewise("union-comparison", lhs, rhs)


def truncation_comparison(arr: Arrangement, m: int) -> CheckReport:
    """Relative homology of (hocolim, hocolim_m) must vanish in degrees <= m.

    That is exactly: H_j(hocolim_m) -> H_j(hocolim) is an isomorphism for
    j <= m - 1 and onto for j = m.
    """
    _check_m(arr, m)
    full = build_hocolim(arr, arr.n - 1)
    sub = full.cells_up_to(m)
    rel = relative_homology(full.complex, sub)
    lhs = homology_of(full.complex, sub)
    rhs = full.homology()
    top = max(len(lhs.betti), len(rhs.betti), len(rel.betti))
    per_degree = [
        {
            "degree": d,
            "equal": lhs.degree_equal(rhs, d),
            "relative_betti": rel.betti_at(d),
            "relative_torsion": list(rel.torsion_at(d)),
        }
        for d in range(top)
    ]
    passed = all(rel.vanishes_at(d) for d in range(m + 1))
    return CheckReport("truncation", passed, lhs, rhs, per_degree, {"m": m, "relative": rel.to_json()})


@dataclass(frozen=True, eq=False)
class DiagramSignature:
    """Homology of every A_I with |I| <= m + 1, of hocolim_m, and of the union."""

    m: int
    n: int
    intersections: tuple[tuple[tuple[int, ...], HomologyReport], ...]
    hocolim: HomologyReport
    union: HomologyReport

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "intersections": [{"I": list(I), "homology": h.to_json()} for I, h in self.intersections],
            "hocolim": self.hocolim.to_json(),
            "union": self.union.to_json(),
        }

    @cached_property
    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @cached_property
    def digest(self) -> str:
        """SHA-256 hex digest of the canonical JSON serialization."""
        return hashlib.sha256(self.canonical.encode()).hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagramSignature):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)


_EMPTY = HomologyReport((), ())


def diagram_signature(arr: Arrangement, m: int) -> DiagramSignature:
    _check_m(arr, m)
    entries = []
    for k in range(1, m + 2):
        for I in combinations(range(1, arr.n + 1), k):
            cells = sub_intersection(arr, I)
            entries.append((I, homology_of(arr.ambient, cells) if cells else _EMPTY))
    return DiagramSignature(
        m,
        arr.n,
        tuple(entries),
        build_hocolim(arr, m).homology(),
        homology_of(arr.ambient, union_all(arr)),
    )


def verify_comparison_corollary(arr: Arrangement, theta: BooleanFormula) -> CheckReport:
    """H(A_theta) against H(B_theta) for B the barycentric subdivision of A."""
    lhs = homology_of(arr.ambient, boolean_combination(arr, theta))
    sd = subdivide_arrangement(arr)
    rhs = homology_of(sd.ambient, boolean_combination(sd, theta))
    return compare_degreewise("comparison-corollary", lhs, rhs, formula=str(theta))


def nerve(arr: Arrangement) -> SimplicialComplex:
    """Simplicial complex on vertices 0..n-1 (vertex i-1 for A_i); I spans a
    simplex iff A_I is nonempty."""
    level = {(i,): arr.sets[i] for i in range(arr.n) if arr.sets[i]}
    simplices = set(level)
    while level:
        nxt = {}
        for s, cells in level.items():
            for j in range(s[-1] + 1, arr.n):
                common = cells & arr.sets[j]
                if common:
                    nxt[s + (j,)] = common
        simplices.update(nxt)
        level = nxt
    return SimplicialComplex(arr.n, frozenset(simplices))
