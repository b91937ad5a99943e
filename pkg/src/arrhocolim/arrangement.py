"""Labeled families of subcomplexes of one ambient complex.

Index sets are 1-based, ``frozenset({1, 3})`` meaning A_1 and A_3.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union

from .complex_core import (
    CellComplex,
    SimplicialComplex,
    connected_components,
    subdivide,
    subdivide_subcomplex,
)


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """Ambient cell complex plus n member subcomplexes, each a set of cell ids.

    ``simplicial`` is set when the ambient came from a simplicial complex;
    cell ids then follow ``simplicial.ordered``.
    """

    ambient: CellComplex
    sets: tuple[frozenset[int], ...]
    names: tuple[str, ...] = ()
    simplicial: SimplicialComplex | None = field(default=None, compare=False)

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ArrangementError("an arrangement needs at least one set")
        names = tuple(self.names) or tuple(f"A{i}" for i in range(1, len(sets) + 1))
        if len(names) != len(sets):
            raise ArrangementError("one name per set is required")
        object.__setattr__(self, "names", names)
        total = len(self.ambient)
        for i, s in enumerate(sets, 1):
            for c in s:
                if not (0 <= c < total):
                    raise ArrangementError(f"set {i} contains unknown cell {c}")
                for f, _ in self.ambient.facets(c):
                    if f not in s:
                        raise ArrangementError(f"set {i} is not a subcomplex: cell {c} lacks facet {f}")

    @classmethod
    def from_simplicial(
        cls,
        ambient: SimplicialComplex,
        sets: Sequence[Iterable[Sequence[int]]],
        names: Sequence[str] = (),
    ) -> "Arrangement":
        """Each set is given by simplices of ``ambient``; faces are added."""
        index = ambient.index
        members = []
        for i, simplices in enumerate(sets, 1):
            closed = SimplicialComplex.from_maximal(ambient.vertex_count, simplices)
            missing = [s for s in closed.simplices if s not in index]
            if missing:
                raise ArrangementError(f"set {i}: simplex {list(min(missing))} is not in the ambient complex")
            members.append(frozenset(index[s] for s in closed.simplices))
        return cls(ambient.to_cell_complex(), tuple(members), tuple(names), ambient)

    @property
    def n(self) -> int:
        return len(self.sets)

    @cached_property
    def signatures(self) -> tuple[frozenset[int], ...]:
        """I_c for every ambient cell c."""
        sig: list[set[int]] = [set() for _ in range(len(self.ambient))]
        for i, s in enumerate(self.sets, 1):
            for c in s:
                sig[c].add(i)
        return tuple(frozenset(x) for x in sig)

    def member_simplices(self, i: int) -> list[tuple[int, ...]]:
        if self.simplicial is None:
            raise ArrangementError("arrangement has no simplicial ambient")
        ordered = self.simplicial.ordered
        return sorted(ordered[c] for c in self.sets[i - 1])


def _check_index_set(arr: Arrangement, I: Iterable[int], allow_empty: bool = False) -> frozenset[int]:
    I = frozenset(I)
    if not I and not allow_empty:
        raise ArrangementError("index set must be nonempty")
    bad = sorted(i for i in I if not (1 <= i <= arr.n))
    if bad:
        raise ArrangementError(f"index {bad[0]} out of range 1..{arr.n}")
    return I


def sub_intersection(arr: Arrangement, I: Iterable[int]) -> frozenset[int]:
    I = sorted(_check_index_set(arr, I))
    out = arr.sets[I[0] - 1]
    for i in I[1:]:
        out = out & arr.sets[i - 1]
    return out


def sub_union(arr: Arrangement, I: Iterable[int]) -> frozenset[int]:
    I = sorted(_check_index_set(arr, I))
    return frozenset().union(*(arr.sets[i - 1] for i in I))


def union_all(arr: Arrangement) -> frozenset[int]:
    return sub_union(arr, range(1, arr.n + 1))


# --- negation-free Boolean formulas -------------------------------------------


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    index: int

    def __str__(self) -> str:
        return f"T{self.index}"


@dataclass(frozen=True)
class And:
    terms: tuple

    def __str__(self) -> str:
        return "(" + " & ".join(map(str, self.terms)) + ")"


@dataclass(frozen=True)
class Or:
    terms: tuple

    def __str__(self) -> str:
        return "(" + " | ".join(map(str, self.terms)) + ")"


BooleanFormula = Union[Atom, And, Or]


def validate_formula(theta: BooleanFormula, n: int) -> None:
    if isinstance(theta, Atom):
        if not isinstance(theta.index, int) or not (1 <= theta.index <= n):
            raise FormulaError(f"atom T{theta.index} out of range 1..{n}")
    elif isinstance(theta, (And, Or)):
        if not theta.terms:
            raise FormulaError("empty connective")
        for t in theta.terms:
            validate_formula(t, n)
    else:
        raise FormulaError(f"not a negation-free formula node: {theta!r}")


_TOKEN = re.compile(r"\s*(?:(T\d+)|(&|∧|and\b)|(\||∨|or\b)|(\()|(\))|(~|!|¬|not\b)|(\S))")


def parse_formula(text: str) -> BooleanFormula:
    """Parse e.g. ``"(T1 & T2) | T3"``; ``∧``/``∨``/``and``/``or`` also work."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        atom, conj, disj, lp, rp, neg, junk = m.groups()
        if neg:
            raise FormulaError("negation is not allowed")
        if junk:
            raise FormulaError(f"unexpected {junk!r} at {m.start(7)}")
        tokens.append(("atom", int(atom[1:])) if atom else ("&",) if conj else ("|",) if disj else ("(",) if lp else (")",))
        pos = m.end()
    i = 0

    def expr():
        nonlocal i
        terms = [term()]
        while i < len(tokens) and tokens[i][0] == "|":
            i += 1
            terms.append(term())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def term():
        nonlocal i
        factors = [factor()]
        while i < len(tokens) and tokens[i][0] == "&":
            i += 1
            factors.append(factor())
        return factors[0] if len(factors) == 1 else And(tuple(factors))

    def factor():
        nonlocal i
        if i >= len(tokens):
            raise FormulaError("unexpected end of formula")
        tok = tokens[i]
        i += 1
        if tok[0] == "atom":
            return Atom(tok[1])
        if tok[0] == "(":
            inner = expr()
            if i >= len(tokens) or tokens[i][0] != ")":
                raise FormulaError("unbalanced parenthesis")
            i += 1
            return inner
        raise FormulaError(f"unexpected {tok[0]!r}")

    result = expr()
    if i != len(tokens):
        raise FormulaError("trailing tokens")
    return result


def random_formula(rng: random.Random, n: int, depth: int = 3) -> BooleanFormula:
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.randint(1, n))
    k = rng.randint(2, 3)
    terms = tuple(random_formula(rng, n, depth - 1) for _ in range(k))
    return And(terms) if rng.random() < 0.5 else Or(terms)


def boolean_combination(arr: Arrangement, theta: BooleanFormula) -> frozenset[int]:
    validate_formula(theta, arr.n)

    def ev(t):
        if isinstance(t, Atom):
            return arr.sets[t.index - 1]
        parts = [ev(s) for s in t.terms]
        if isinstance(t, And):
            return frozenset.intersection(*parts)
        return frozenset.union(*parts)

    return ev(theta)


# --- basic sets ----------------------------------------------------------------


@dataclass
class BasicSetReport:
    """Components of each nonempty basic set (open cells with I_c = I).

    Signatures with no cells are omitted; they contribute nothing.
    """

    components: dict[frozenset[int], list[frozenset[int]]]

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.components.values())

    def count(self, I: Iterable[int]) -> int:
        return len(self.components.get(frozenset(I), ()))

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "signatures": [
                {"I": sorted(I), "components": [sorted(c) for c in comps]}
                for I, comps in self.components.items()
            ],
        }


def basic_sets(arr: Arrangement) -> BasicSetReport:
    groups: dict[frozenset[int], list[int]] = {}
    for c, sig in enumerate(arr.signatures):
        groups.setdefault(sig, []).append(c)
    order = sorted(groups, key=lambda I: (len(I), sorted(I)))
    return BasicSetReport({I: connected_components(arr.ambient, groups[I]) for I in order})


# --- generation ------------------------------------------------------------------


def _random_downward_closed(rng: random.Random, base: Sequence[tuple[int, ...]], density: float,
                            keep_vertices: bool) -> set[tuple[int, ...]]:
    chosen: set[tuple[int, ...]] = set()
    for s in base:
        if len(s) == 1:
            if keep_vertices or rng.random() < density:
                chosen.add(s)
        elif all(f in chosen for f in combinations(s, len(s) - 1)) and rng.random() < density:
            chosen.add(s)
    return chosen


def random_arrangement(
    seed: int,
    vertex_count: int = 6,
    ambient_density: float = 0.6,
    n: int = 3,
    set_density: float = 0.6,
    max_dim: int | None = None,
) -> Arrangement:
    """Seeded random arrangement on a random simplicial complex.

    Simplices are visited in (dimension, lex) order and kept with the given
    probability when all their facets were kept.  Every vertex is in the
    ambient; set vertices are kept with ``set_density``.  Density 1 makes
    every set equal to the ambient.
    """
    if vertex_count < 1:
        raise ArrangementError("vertex_count must be at least 1")
    if n < 1:
        raise ArrangementError("n must be at least 1")
    for name, d in (("ambient_density", ambient_density), ("set_density", set_density)):
        if not (0.0 <= d <= 1.0):
            raise ArrangementError(f"{name} must lie in [0, 1]")
    rng = random.Random(seed)
    top = vertex_count if max_dim is None else min(vertex_count, max_dim + 1)
    candidates = [s for k in range(1, top + 1) for s in combinations(range(vertex_count), k)]
    ambient = SimplicialComplex(vertex_count, frozenset(_random_downward_closed(rng, candidates, ambient_density, True)))
    sets = [_random_downward_closed(rng, ambient.ordered, set_density, False) for _ in range(n)]
    return Arrangement.from_simplicial(ambient, sets)


def subdivide_arrangement(arr: Arrangement) -> Arrangement:
    """Barycentric subdivision of the ambient, with each A_i subdivided."""
    if arr.simplicial is None:
        raise ArrangementError("subdivision needs a simplicial ambient")
    sd, bary = subdivide(arr.simplicial)
    ordered = arr.simplicial.ordered
    sets = [subdivide_subcomplex(sd, (ordered[c] for c in s), bary) for s in arr.sets]
    return Arrangement.from_simplicial(sd, sets, arr.names)


# --- arr-v1 --------------------------------------------------------------------------


def serialize_arrangement(arr: Arrangement) -> str:
    if arr.simplicial is None:
        raise ArrangementError("arr-v1 serializes simplicial arrangements only")
    sc = arr.simplicial
    doc = {
        "format": "arr-v1",
        "ambient": {
            "n_vertices": sc.vertex_count,
            "maximal_simplices": [list(s) for s in sc.maximal_simplices()],
        },
        "sets": [
            {"name": name, "maximal_simplices": [list(s) for s in _maximal(arr.member_simplices(i))]}
            for i, name in enumerate(arr.names, 1)
        ],
    }
    return json.dumps(doc) + "\n"


def _maximal(simplices: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    simplices = set(simplices)
    covered = {f for s in simplices for f in combinations(s, len(s) - 1) if f}
    return sorted(simplices - covered)


def _simplex_list(value, where: str, n_vertices: int) -> list[list[int]]:
    if not isinstance(value, list):
        raise ArrangementError(f"{where}: expected a list of simplices")
    out = []
    for k, s in enumerate(value):
        if not isinstance(s, list) or not s or not all(isinstance(v, int) and not isinstance(v, bool) for v in s):
            raise ArrangementError(f"{where}[{k}]: expected a nonempty list of integers")
        if len(set(s)) != len(s):
            raise ArrangementError(f"{where}[{k}]: repeated vertex in {s}")
        bad = [v for v in s if not (0 <= v < n_vertices)]
        if bad:
            raise ArrangementError(f"{where}[{k}]: vertex {bad[0]} out of range 0..{n_vertices - 1}")
        out.append(s)
    return out


def load_arrangement(text: str) -> Arrangement:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArrangementError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ArrangementError("top level must be an object")
    if doc.get("format") != "arr-v1":
        raise ArrangementError(f"format: expected 'arr-v1', got {doc.get('format')!r}")
    amb = doc.get("ambient")
    if not isinstance(amb, dict):
        raise ArrangementError("ambient: expected an object")
    nv = amb.get("n_vertices")
    if not isinstance(nv, int) or isinstance(nv, bool) or nv < 0:
        raise ArrangementError("ambient.n_vertices: expected a nonnegative integer")
    ambient = SimplicialComplex.from_maximal(
        nv, _simplex_list(amb.get("maximal_simplices"), "ambient.maximal_simplices", nv), all_vertices=True
    )
    sets_doc = doc.get("sets")
    if not isinstance(sets_doc, list) or not sets_doc:
        raise ArrangementError("sets: expected a nonempty list")
    names, sets = [], []
    for i, entry in enumerate(sets_doc):
        if not isinstance(entry, dict):
            raise ArrangementError(f"sets[{i}]: expected an object")
        name = entry.get("name")
        if not isinstance(name, str):
            raise ArrangementError(f"sets[{i}].name: expected a string")
        simplices = _simplex_list(entry.get("maximal_simplices"), f"sets[{i}].maximal_simplices", nv)
        for s in simplices:
            if tuple(sorted(s)) not in ambient.index:
                raise ArrangementError(f"sets[{i}] ({name}): simplex {sorted(s)} is not in the ambient complex")
        names.append(name)
        sets.append(simplices)
    return Arrangement.from_simplicial(ambient, sets, names)
