"""Sparse exact integer matrices and Smith normal form."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class IntMatrix:
    """Column-major sparse integer matrix.

    ``cols[j]`` maps row index to a nonzero entry.  Entries are Python ints,
    so there is no overflow.
    """

    __slots__ = ("n_rows", "n_cols", "cols")

    def __init__(self, n_rows: int, n_cols: int, cols: Sequence[dict] | None = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        if cols is None:
            self.cols = [dict() for _ in range(n_cols)]
        else:
            if len(cols) != n_cols:
                raise ValueError("column count does not match n_cols")
            self.cols = [{r: v for r, v in col.items() if v} for col in cols]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "IntMatrix":
        n_rows = len(rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(n_cols)]
        for i, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = int(v)
        return cls(n_rows, n_cols, cols)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "IntMatrix":
        return cls(n_rows, n_cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.cols[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other.cols:
            acc: dict[int, int] = {}
            for k, w in col.items():
                for i, v in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append(acc)
        return IntMatrix(self.n_rows, other.n_cols, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self) -> str:
        return f"IntMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]
    rank: int
    left: list[list[int]] | None = field(default=None, compare=False)
    right: list[list[int]] | None = field(default=None, compare=False)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _normalize_diagonal(diag: Iterable[int]) -> tuple[int, ...]:
    """Turn an arbitrary nonzero diagonal into its invariant-factor chain.

    diag(a, b) is equivalent to diag(gcd, lcm); units are already in place.
    """
    units = 0
    rest = []
    for d in diag:
        d = abs(d)
        if d == 1:
            units += 1
        else:
            rest.append(d)
    rest.sort()
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    return (1,) * units + tuple(rest)


def _graph_rank(m: IntMatrix) -> int | None:
    """Rank of a signed graph incidence matrix via union-find, else None.

    Such matrices are totally unimodular, so every invariant factor is 1.
    """
    parent = list(range(m.n_rows))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for col in m.cols:
        if not col:
            continue
        if len(col) != 2:
            return None
        (a, va), (b, vb) = col.items()
        if va + vb != 0 or abs(va) != 1:
            return None
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            rank += 1
    return rank


def _sparse_diagonal(m: IntMatrix) -> list[int]:
    """Eliminate ``m`` to a (not yet normalized) diagonal.

    Pivot: smallest nonzero |entry|; ties broken by the Markowitz fill cost
    (|row| - 1) * (|col| - 1), then by lowest (row, column).  Costs are
    refreshed lazily when an entry is popped.  Row operations clear the
    pivot column; column operations clear the pivot row.  A nonzero
    remainder restarts pivot selection with a strictly smaller entry, so the
    loop terminates.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    heap: list[tuple[int, int, int, int]] = []
    for j, col in enumerate(m.cols):
        if col:
            cols[j] = dict(col)
            for i, v in col.items():
                rows.setdefault(i, {})[j] = v
    for j, col in cols.items():
        for i, v in col.items():
            heap.append((abs(v), (len(rows[i]) - 1) * (len(col) - 1), i, j))
    heapq.heapify(heap)

    def cost(i: int, j: int) -> int:
        return (len(rows[i]) - 1) * (len(cols[j]) - 1)

    def put(i: int, j: int, v: int) -> None:
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, {})[i] = v
            heapq.heappush(heap, (abs(v), cost(i, j), i, j))
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c is not None and i in c:
                del c[i]
                if not c:
                    del cols[j]

    diag = []
    while heap:
        a, k, r, c = heapq.heappop(heap)
        v = rows.get(r, {}).get(c)
        if v is None or abs(v) != a:
            continue
        k_now = cost(r, c)
        if k_now != k:
            heapq.heappush(heap, (a, k_now, r, c))
            continue
        restart = False
        pivot_row = rows[r]
        for i in sorted(cols[c]):
            if i == r:
                continue
            q = cols[c][i] // v
            for j, x in list(pivot_row.items()):
                put(i, j, rows.get(i, {}).get(j, 0) - q * x)
            if rows.get(i, {}).get(c):
                restart = True
        if restart:
            heapq.heappush(heap, (a, k, r, c))
            continue
        # column c now holds only the pivot
        for j in sorted(pivot_row):
            if j == c:
                continue
            x = pivot_row[j]
            put(r, j, x - (x // v) * v)
            if rows.get(r, {}).get(j):
                restart = True
        if restart:
            heapq.heappush(heap, (a, k, r, c))
            continue
        diag.append(v)
        put(r, c, 0)
    return diag


def _dense_snf_with_transforms(a: list[list[int]]):
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    a = [list(row) for row in a]
    left = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    right = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def row_add(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src, mirrored in left
        if q == 0:
            return
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def col_add(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(n_rows, n_cols):
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                    best = (abs(a[i][j]), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
            # move any remainder smaller than the pivot into pivot position
            cand = None
            for i in range(t + 1, n_rows):
                if a[i][t] and (cand is None or abs(a[i][t]) < cand[0]):
                    cand = (abs(a[i][t]), "r", i)
            for j in range(t + 1, n_cols):
                if a[t][j] and (cand is None or abs(a[t][j]) < cand[0]):
                    cand = (abs(a[t][j]), "c", j)
            if cand is not None:
                done = False
                if cand[1] == "r":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, n_rows):
                for j in range(t + 1, n_cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                done = False
                row_add(t, bad, 1)
                continue
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(n_rows, n_cols)) if a[i][i])
    return diag, left, right


def smith_normal_form(matrix: IntMatrix | Sequence[Sequence[int]], transforms: bool = False) -> SnfResult:
    """Invariant factors of an integer matrix.

    With ``transforms=True`` a dense elimination also returns unimodular
    ``left`` and ``right`` with ``left @ A @ right`` diagonal; that path is
    cubic and meant for small matrices.
    """
    if transforms:
        dense = matrix.to_dense() if isinstance(matrix, IntMatrix) else [list(r) for r in matrix]
        if not dense or not dense[0]:
            n_rows = len(dense)
            n_cols = matrix.n_cols if isinstance(matrix, IntMatrix) else 0
            eye_l = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
            eye_r = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
            return SnfResult((), 0, eye_l, eye_r)
        diag, left, right = _dense_snf_with_transforms(dense)
        return SnfResult(diag, len(diag), left, right)
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_dense(matrix)
    rank = _graph_rank(matrix)
    if rank is not None:
        return SnfResult((1,) * rank, rank)
    factors = _normalize_diagonal(_sparse_diagonal(matrix))
    return SnfResult(factors, len(factors))
