"""Integer chain complexes and their homology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complexes import CellComplex, InvalidComplexError, SimplicialComplex, validate_complex
from .matrix import IntMatrix, smith_normal_form


@dataclass(frozen=True)
class ChainComplex:
    """Free chain groups of rank ``ranks[d]`` with boundaries ``boundaries[d]``.

    ``boundaries[d]`` maps degree d to degree d-1 and has shape
    ``(ranks[d-1], ranks[d])``; ``boundaries[0]`` is the 0 x ranks[0] map.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.boundaries):
            raise ValueError("one boundary matrix per degree is required")
        for d, (r, b) in enumerate(zip(self.ranks, self.boundaries)):
            below = self.ranks[d - 1] if d else 0
            if b.shape != (below, r):
                raise ValueError(f"boundary {d} has shape {b.shape}, expected {(below, r)}")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, d: int) -> IntMatrix:
        if 0 <= d < len(self.ranks):
            return self.boundaries[d]
        rows = self.ranks[d - 1] if 0 <= d - 1 < len(self.ranks) else 0
        cols = self.ranks[d] if 0 <= d < len(self.ranks) else 0
        return IntMatrix.zeros(rows, cols)

    def squares_to_zero(self) -> list[int]:
        """Degrees d where boundary(d) @ boundary(d+1) is nonzero."""
        return [d for d in range(1, len(self.ranks) - 1) if not (self.boundaries[d] @ self.boundaries[d + 1]).is_zero()]


def _trim(betti: Sequence[int], torsion: Sequence[Sequence[int]]):
    top = len(betti)
    while top and betti[top - 1] == 0 and not torsion[top - 1]:
        top -= 1
    return tuple(betti[:top]), tuple(tuple(t) for t in torsion[:top])


@dataclass(frozen=True, eq=False)
class HomologyReport:
    """Betti numbers and torsion invariant factors, degree by degree.

    Degrees past the stored range are zero, so equality ignores trailing
    vanishing degrees: (1, 0, 0) == (1).
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        object.__setattr__(self, "torsion", tuple(tuple(t) for t in self.torsion))
        if len(self.betti) != len(self.torsion):
            raise ValueError("betti and torsion lengths differ")

    @classmethod
    def from_betti(cls, *betti: int) -> "HomologyReport":
        return cls(tuple(betti), ((),) * len(betti))

    def trimmed(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        return _trim(self.betti, self.torsion)

    def betti_at(self, d: int) -> int:
        return self.betti[d] if 0 <= d < len(self.betti) else 0

    def torsion_at(self, d: int) -> tuple[int, ...]:
        return self.torsion[d] if 0 <= d < len(self.torsion) else ()

    def degree_equal(self, other: "HomologyReport", d: int) -> bool:
        return self.betti_at(d) == other.betti_at(d) and self.torsion_at(d) == other.torsion_at(d)

    def vanishes_at(self, d: int) -> bool:
        return self.betti_at(d) == 0 and not self.torsion_at(d)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologyReport):
            return NotImplemented
        return self.trimmed() == other.trimmed()

    def __hash__(self) -> int:
        return hash(self.trimmed())

    def to_json(self) -> dict:
        betti, torsion = self.trimmed()
        return {"betti": list(betti), "torsion": [list(t) for t in torsion]}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyReport":
        return cls(tuple(data["betti"]), tuple(tuple(t) for t in data["torsion"]))

    def __str__(self) -> str:
        betti, torsion = self.trimmed()
        parts = []
        for b, t in zip(betti, torsion):
            parts.append(str(b) + "".join(f"+Z/{x}" for x in t))
        return "(" + ",".join(parts) + ")"

    __repr__ = __str__


def chain_complex_of(complex: CellComplex | SimplicialComplex, validate: bool = True) -> ChainComplex:
    """Cellular chain complex; columns follow cell id order within each degree."""
    if isinstance(complex, SimplicialComplex):
        complex = complex.to_cell_complex()
    if validate:
        report = validate_complex(complex)
        if not report.ok:
            raise InvalidComplexError(report)
    top = complex.dimension
    local: list[int] = [0] * len(complex)
    ranks = [0] * (top + 1)
    for c, d in enumerate(complex.dims):
        local[c] = ranks[d]
        ranks[d] += 1
    cols: list[list[dict]] = [[dict() for _ in range(r)] for r in ranks]
    for c, d in enumerate(complex.dims):
        col = cols[d][local[c]]
        for f, v in complex.facets(c):
            col[local[f]] = v
    boundaries = [IntMatrix(ranks[d - 1] if d else 0, ranks[d], cols[d]) for d in range(top + 1)]
    return ChainComplex(tuple(ranks), tuple(boundaries))


def homology(chain: ChainComplex) -> HomologyReport:
    """Unreduced integral homology via Smith normal form of each boundary."""
    top = chain.top_degree
    snfs = [smith_normal_form(chain.boundaries[d]) for d in range(1, top + 1)]
    rank = [0] + [s.rank for s in snfs] + [0]
    torsion_of = [s.torsion for s in snfs] + [()]
    betti = []
    torsion = []
    for d in range(top + 1):
        betti.append(chain.ranks[d] - rank[d] - rank[d + 1])
        torsion.append(torsion_of[d])
    return HomologyReport(tuple(betti), tuple(torsion))


def homology_of(complex: CellComplex | SimplicialComplex, cells: Iterable[int] | None = None) -> HomologyReport:
    """Homology of a complex, or of the subcomplex spanned by ``cells``."""
    if isinstance(complex, SimplicialComplex):
        complex = complex.to_cell_complex()
    if cells is not None:
        complex = complex.restrict(cells)
    return homology(chain_complex_of(complex, validate=False))


def relative_homology(complex: CellComplex, sub: Iterable[int]) -> HomologyReport:
    """Homology of the quotient chain complex C(complex) / C(sub)."""
    sub = set(sub)
    keep = [c for c in range(len(complex)) if c not in sub]
    return homology(chain_complex_of(complex.restrict(keep), validate=False))
