"""Exact sparse integer linear algebra: Smith normal form and homology.

Entries are Python integers, so nothing overflows.  Elimination first
spends every available unit pivot (cheapest column first, shortest row
inside it) and only then falls back to Euclidean reduction on whatever
is left, which for Khovanov differentials is usually tiny.
"""

from __future__ import annotations

import heapq
from math import gcd
from typing import Iterable, NamedTuple

from .errors import NotAComplex

__all__ = [
    "SparseIntMat",
    "HomologySummand",
    "smith_normal_form",
    "rank_over_rationals",
    "homology_pair",
]


class SparseIntMat:
    """Sparse integer matrix with entries ``{(row, col): value}``; zeros are never stored."""

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows: int, n_cols: int, entries=None):
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        data: dict[tuple[int, int], int] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for item in items:
                (r, c), v = (item[0], item[1]) if len(item) == 2 else ((item[0], item[1]), item[2])
                r, c, v = int(r), int(c), int(v)
                if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                    raise IndexError(f"entry {(r, c)} outside a {self.n_rows}x{self.n_cols} matrix")
                if (r, c) in data:
                    raise ValueError(f"duplicate entry at {(r, c)}")
                if v:
                    data[(r, c)] = v
        self.entries = data

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[int]]) -> "SparseIntMat":
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        return cls(
            len(rows),
            n_cols,
            {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v},
        )

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> "SparseIntMat":
        return cls(n_rows, n_cols)

    def triples(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseIntMat":
        return SparseIntMat(self.n_cols, self.n_rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "SparseIntMat") -> "SparseIntMat":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseIntMat(self.n_rows, other.n_cols, {k: v for k, v in out.items() if v})

    def __eq__(self, other):
        return (
            isinstance(other, SparseIntMat)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseIntMat({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


class HomologySummand(NamedTuple):
    """``Z^free_rank`` plus cyclic torsion with invariant factors ``d_1 | d_2 | ...``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def _diagonal_to_chain(diag: list[int]) -> list[int]:
    """Turn a list of positive diagonal entries into a divisibility chain."""
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
        # d[i] now divides every later entry
    return d


class _Eliminator:
    """Row/column storage for in-place unimodular elimination."""

    def __init__(self, M: SparseIntMat):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (r, c), v in M.entries.items():
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, set()).add(r)

    def drop(self, r: int, c: int):
        """Remove pivot row ``r`` and column ``c`` (column ``c`` must be clear elsewhere)."""
        for cc in self.rows.pop(r):
            s = self.cols[cc]
            s.discard(r)
            if not s:
                del self.cols[cc]
        self.cols.pop(c, None)

    def row_axpy(self, target: int, q: int, src: int, touched=None):
        """row[target] -= q * row[src]."""
        rt = self.rows[target]
        cols = self.cols
        for c, v in self.rows[src].items():
            nv = rt.get(c, 0) - q * v
            if nv:
                if c not in rt:
                    cols.setdefault(c, set()).add(target)
                rt[c] = nv
            else:
                rt.pop(c, None)
                s = cols[c]
                s.discard(target)
                if not s:
                    del cols[c]
            if touched is not None:
                touched.add(c)
        if not rt:
            del self.rows[target]

    def col_axpy(self, target: int, q: int, src: int):
        """col[target] -= q * col[src]."""
        rows = self.rows
        for r in list(self.cols[src]):
            row = rows[r]
            nv = row.get(target, 0) - q * row[src]
            if nv:
                if target not in row:
                    self.cols.setdefault(target, set()).add(r)
                row[target] = nv
            else:
                row.pop(target, None)
                s = self.cols.get(target)
                if s is not None:
                    s.discard(r)
                    if not s:
                        del self.cols[target]


def _eliminate(M: SparseIntMat, want_factors: bool = True) -> list[int]:
    E = _Eliminator(M)
    factors: list[int] = []
    rows, cols = E.rows, E.cols

    # phase 1: unit pivots, column with fewest entries first
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    deferred: set[int] = set()
    while True:
        while heap:
            n, c = heapq.heappop(heap)
            s = cols.get(c)
            if s is None:
                continue
            if len(s) != n:
                heapq.heappush(heap, (len(s), c))
                continue
            best = None
            for r in s:
                v = rows[r][c]
                if v == 1 or v == -1:
                    key = (len(rows[r]), r)
                    if best is None or key < best[0]:
                        best = (key, r, v)
            if best is None:
                deferred.add(c)
                continue
            _, r, v = best
            touched: set[int] = set()
            for r2 in sorted(s - {r}):
                q = rows[r2][c] * v  # v is a unit, so v == 1/v
                E.row_axpy(r2, q, r, touched)
            E.drop(r, c)
            factors.append(1)
            deferred.discard(c)
            for c2 in touched:
                if c2 in cols and c2 != c:
                    heapq.heappush(heap, (len(cols[c2]), c2))
                    deferred.discard(c2)
        retry = [c for c in deferred if c in cols and any(rows[r][c] in (1, -1) for r in cols[c])]
        deferred = {c for c in deferred if c in cols}
        if not retry:
            break
        for c in retry:
            heapq.heappush(heap, (len(cols[c]), c))

    # phase 2: Euclidean reduction on the unit-free remainder
    while cols:
        r, c, p = min(
            ((r, c, v) for r, row in rows.items() for c, v in row.items()),
            key=lambda t: (abs(t[2]), t[0], t[1]),
        )
        clean = True
        for r2 in sorted(cols[c] - {r}):
            q = _round_div(rows[r2][c], p)
            E.row_axpy(r2, q, r)
            if r2 in rows and c in rows[r2]:
                clean = False
        for c2 in sorted(set(rows[r]) - {c}):
            q = _round_div(rows[r][c2], p)
            E.col_axpy(c2, q, c)
            if c2 in rows[r]:
                clean = False
        if clean:
            E.drop(r, c)
            factors.append(abs(p))
    if not want_factors:
        return factors
    return _diagonal_to_chain(factors)


def _round_div(a: int, b: int) -> int:
    """Nearest-integer quotient, so remainders satisfy |a - q b| <= |b| / 2."""
    q, rem = divmod(a, b)
    if 2 * abs(rem) > abs(b):
        q += 1
    return q


def smith_normal_form(M: SparseIntMat) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r`` of ``M`` (``r`` = rank)."""
    return _eliminate(M)


def rank_over_rationals(M: SparseIntMat) -> int:
    return len(_eliminate(M, want_factors=False))


def homology_pair(
    d_in: SparseIntMat, d_out: SparseIntMat, *, check: bool = True
) -> HomologySummand:
    """Homology ``ker d_out / im d_in`` at the middle group of ``. -> . -> .``."""
    if d_in.n_rows != d_out.n_cols:
        raise ValueError(
            f"middle dimensions disagree: {d_in.n_rows} rows into {d_out.n_cols} columns"
        )
    if check and not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out composed with d_in is not zero")
    f_in = smith_normal_form(d_in)
    r_out = rank_over_rationals(d_out)
    free = d_out.n_cols - r_out - len(f_in)
    return HomologySummand(free, tuple(d for d in f_in if d > 1))
