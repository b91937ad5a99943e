"""Combinatorial model of the collar thickening of sk_m of the simplex on [n].

The model is the full subcomplex of Sd(simplex on [n]) spanned by the
barycenters of faces with at most m + 1 vertices: one vertex per nonempty
I with |I| <= m + 1, one simplex per chain I_1 < ... < I_p of such sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complex_core import SimplicialComplex, homology_of, skeleton
from .reports import CheckReport, compare_degreewise


@dataclass(frozen=True)
class ThickenedModel:
    n: int
    m: int
    model: SimplicialComplex
    vertex_sets: tuple[tuple[int, ...], ...]


def _check(n: int, m: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (0 <= m <= n - 1):
        raise ValueError(f"m must lie in 0..{n - 1}, got {m}")


def thickened_skeleton_model(n: int, m: int) -> ThickenedModel:
    _check(n, m)
    faces = [I for k in range(1, m + 2) for I in combinations(range(1, n + 1), k)]
    vertex = {I: v for v, I in enumerate(faces)}
    # chains ending at each face, grown from smaller faces
    chains: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    simplices = set()
    for I in faces:
        top = vertex[I]
        found = [(top,)]
        for k in range(1, len(I)):
            for J in combinations(I, k):
                found.extend(ch + (top,) for ch in chains[J])
        chains[I] = found
        simplices.update(tuple(sorted(ch)) for ch in found)
    return ThickenedModel(n, m, SimplicialComplex(len(faces), frozenset(simplices)), tuple(faces))


def thickened_model_check(n: int, m: int) -> CheckReport:
    model = thickened_skeleton_model(n, m)
    lhs = homology_of(model.model)
    rhs = homology_of(skeleton(SimplicialComplex.full_simplex(n), m))
    return compare_degreewise("thickening", lhs, rhs, n=n, m=m)
