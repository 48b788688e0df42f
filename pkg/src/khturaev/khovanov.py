"""The enhanced-state Khovanov complex and its homology.

An enhanced state is a resolution word plus a sign on every circle.  Its
gradings are ``i = b`` (number of B-smoothings) and ``j = b + theta``
where ``theta`` is the number of ``+`` circles minus the number of ``-``
circles.  The differential flips one A-smoothing to a B-smoothing and
carries the sign ``(-1)^{number of B letters before that crossing}``.

Bases are ordered by word (read crossing 1 first, ``A < B``) and then by
labels (``+ < -`` circle by circle).  Internally a label set is a bit
mask whose bit ``m`` is set when circle ``m`` carries ``-``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple

import numpy as np

from . import _fp
from .diagram import LinkDiagram, crossing_signs, resolve_with_map
from .errors import EmptyHomology
from .intlinalg import HomologySummand, SparseIntMat, rank_over_rationals, smith_normal_form
from .laurent import LaurentPoly
from .states import check_cap, cube, word_mask, word_string

__all__ = [
    "EnhancedState",
    "BigradedGroups",
    "ExtremalProfile",
    "StatementResult",
    "TheoremMainReport",
    "ExactnessReport",
    "enumerate_enhanced",
    "incidence",
    "differential_matrix",
    "unshifted_homology",
    "shifted_homology",
    "graded_euler",
    "les_exactness",
    "extremal_profile",
    "verify_theorem_main",
    "genus_two_obstruction",
]


class EnhancedState(NamedTuple):
    """``word`` is a B-bit mask; ``labels[m]`` is +1 or -1 for circle ``m``."""

    word: int
    labels: tuple[int, ...]

    @property
    def i(self) -> int:
        return bin(self.word).count("1")

    @property
    def theta(self) -> int:
        return sum(self.labels)

    @property
    def j(self) -> int:
        return self.i + self.theta


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reverse_bits(x: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = out << 1 | (x & 1)
        x >>= 1
    return out


@lru_cache(maxsize=None)
def _label_table(n: int):
    """For ``n`` circles: sorted label masks per ``theta`` and each mask's rank."""
    masks = np.arange(1 << n, dtype=np.int64)
    minus = np.zeros(1 << n, dtype=np.int64)
    for m in range(n):
        minus += (masks >> m) & 1
    theta = n - 2 * minus
    # lexicographic on (label of circle 0, circle 1, ...), with + first
    key = np.zeros(1 << n, dtype=np.int64)
    for m in range(n):
        key |= ((masks >> m) & 1) << (n - 1 - m)
    by_theta = {}
    rank = np.zeros(1 << n, dtype=np.int64)
    for t in range(-n, n + 1, 2):
        sel = masks[theta == t]
        sel = sel[np.argsort(key[sel], kind="stable")]
        by_theta[t] = sel
        rank[sel] = np.arange(sel.size)
    return by_theta, rank


class _Complex:
    """Lazily built chain groups and differentials of one diagram."""

    def __init__(self, D: LinkDiagram):
        self.D = D
        self.c = D.c
        self.cube = cube(D)
        c = D.c
        words = sorted(range(1 << c), key=lambda w: _reverse_bits(w, c))
        self.words_by_b: list[list[int]] = [[] for _ in range(c + 1)]
        for w in words:
            self.words_by_b[_popcount(w)].append(w)
        self._offsets: dict[tuple[int, int], tuple[dict[int, int], int]] = {}
        self._rep: dict[int, list[int]] = {}
        self._trans: dict[tuple[int, int], tuple] = {}

    def n_circles(self, w: int) -> int:
        return self.cube.count(w)

    def offsets(self, i: int, j: int) -> tuple[dict[int, int], int]:
        """Start index of each word's block in the basis of ``C^{i,j}``, and the dimension."""
        key = (i, j)
        hit = self._offsets.get(key)
        if hit is not None:
            return hit
        off: dict[int, int] = {}
        total = 0
        if 0 <= i <= self.c:
            theta = j - i
            for w in self.words_by_b[i]:
                n = self.n_circles(w)
                if abs(theta) <= n and (n - theta) % 2 == 0:
                    off[w] = total
                    total += _label_table(n)[0][theta].size
        self._offsets[key] = (off, total)
        return off, total

    def dim(self, i: int, j: int) -> int:
        return self.offsets(i, j)[1]

    def j_range(self) -> list[int]:
        js = set()
        for b in range(self.c + 1):
            for w in self.words_by_b[b]:
                n = self.n_circles(w)
                js.update(b + t for t in range(-n, n + 1, 2))
        return sorted(js)

    def representatives(self, w: int) -> list[int]:
        """One arc index per circle of ``w`` (``-1`` for crossingless circles)."""
        hit = self._rep.get(w)
        if hit is not None:
            return hit
        circ, n = self.cube.circles(w)
        rep = [-1] * n
        for a in range(len(circ) - 1, -1, -1):
            rep[circ[a]] = a
        self._rep[w] = rep
        return rep

    def transition(self, w: int, t: int):
        """Describe flipping crossing ``t`` of word ``w`` from A to B.

        Returns ``(kind, cmap, special)`` where ``cmap[m]`` is the image of
        each uninvolved circle.  For a merge ``special = (c1, c2, m)``; for a
        split ``special = (C, C1, C2)``.
        """
        hit = self._trans.get((w, t))
        if hit is not None:
            return hit
        out = self._transition(w, t)
        self._trans[(w, t)] = out
        return out

    def _transition(self, w: int, t: int):
        cb = self.cube
        w2 = w | (1 << t)
        circ, n = cb.circles(w)
        circ2, n2 = cb.circles(w2)
        n_free = self.D.n_free
        a0 = cb.slot_arc[4 * t]
        a1 = cb.slot_arc[4 * t + 1]
        a2 = cb.slot_arc[4 * t + 2]
        rep = self.representatives(w)
        cmap = [0] * n
        for m in range(n):
            cmap[m] = circ2[rep[m]] if m < n - n_free else n2 - (n - m)
        ca, cb_ = circ[a0], circ[a2]
        if ca != cb_:
            return "merge", cmap, (ca, cb_, circ2[a0])
        return "split", cmap, (ca, circ2[a0], circ2[a1])

    def matrix(self, i: int, j: int, sign_fn: Callable | None = None) -> SparseIntMat:
        """``d^{i,j}`` as a ``dim C^{i+1,j} x dim C^{i,j}`` matrix."""
        src_off, n_src = self.offsets(i, j)
        dst_off, n_dst = self.offsets(i + 1, j)
        entries: dict[tuple[int, int], int] = {}
        if n_src == 0 or n_dst == 0:
            return SparseIntMat(n_dst, n_src)
        theta = j - i
        rows_all, cols_all, vals_all = [], [], []
        for w, start in src_off.items():
            n = self.n_circles(w)
            labels = _label_table(n)[0][theta]
            cols = start + np.arange(labels.size, dtype=np.int64)
            for t in range(self.c):
                if w >> t & 1:
                    continue
                w2 = w | (1 << t)
                if w2 not in dst_off:
                    continue
                sign = -1 if _popcount(w & ((1 << t) - 1)) % 2 else 1
                if sign_fn is not None:
                    sign = sign_fn(w, t, sign)
                kind, cmap, sp = self.transition(w, t)
                n2 = self.n_circles(w2)
                rank2 = _label_table(n2)[1]
                base = np.zeros(labels.size, dtype=np.int64)
                involved = sp[:2] if kind == "merge" else sp[:1]
                for m in range(n):
                    if m in involved:
                        continue
                    base |= ((labels >> m) & 1) << cmap[m]
                if kind == "merge":
                    c1, c2, mm = sp
                    b1 = (labels >> c1) & 1
                    b2 = (labels >> c2) & 1
                    keep = (b1 & b2) == 0
                    out = base | ((b1 | b2) << mm)
                    r = dst_off[w2] + rank2[out[keep]]
                    rows_all.append(r)
                    cols_all.append(cols[keep])
                    vals_all.append((r.size, sign))
                else:
                    C, C1, C2 = sp
                    bc = (labels >> C) & 1
                    plus = bc == 0
                    # + -> (+,-) + (-,+);  - -> (-,-)
                    for out, sel in (
                        (base | (1 << C2), plus),
                        (base | (1 << C1), plus),
                        (base | (1 << C1) | (1 << C2), ~plus),
                    ):
                        r = dst_off[w2] + rank2[out[sel]]
                        rows_all.append(r)
                        cols_all.append(cols[sel])
                        vals_all.append((r.size, sign))
        if rows_all:
            R = np.concatenate(rows_all).tolist()
            Cc = np.concatenate(cols_all).tolist()
            V = np.repeat([v for _, v in vals_all], [n for n, _ in vals_all]).tolist()
            entries = dict(zip(zip(R, Cc), V))
        M = SparseIntMat(n_dst, n_src)
        M.entries = entries
        return M

    def basis(self, i: int, j: int) -> list[EnhancedState]:
        off, _ = self.offsets(i, j)
        out = []
        for w in off:
            n = self.n_circles(w)
            for L in _label_table(n)[0][j - i].tolist():
                out.append(EnhancedState(w, tuple(-1 if L >> m & 1 else 1 for m in range(n))))
        return out

    def index(self, S: EnhancedState) -> int:
        off, _ = self.offsets(S.i, S.j)
        n = self.n_circles(S.word)
        L = sum(1 << m for m, s in enumerate(S.labels) if s < 0)
        return off[S.word] + int(_label_table(n)[1][L])


@lru_cache(maxsize=32)
def _complex(D: LinkDiagram) -> _Complex:
    return _Complex(D)


# ---------------------------------------------------------------------------
# enumeration and the incidence rule


def enumerate_enhanced(D: LinkDiagram, i: int, j: int) -> list[EnhancedState]:
    """Basis of ``CKh^{i,j}(D)`` in canonical order."""
    check_cap(D)
    return _complex(D).basis(i, j)


def incidence(D: LinkDiagram, S: EnhancedState, S2: EnhancedState) -> int:
    """Incidence number of ``S2`` in ``d(S)``, evaluated directly from the circle sets."""
    diff = S.word ^ S2.word
    if diff == 0 or diff & (diff - 1) or not (S2.word & diff):
        return 0
    t = diff.bit_length() - 1
    cb = cube(D)
    circ, n = cb.circles(S.word)
    circ2, n2 = cb.circles(S2.word)
    if len(S.labels) != n or len(S2.labels) != n2:
        raise ValueError("labels do not match the circles of the words")
    n_free = D.n_free
    arcs1 = [frozenset(a for a, k in enumerate(circ) if k == m) for m in range(n - n_free)]
    arcs2 = [frozenset(a for a, k in enumerate(circ2) if k == m) for m in range(n2 - n_free)]
    lab1 = {s: S.labels[m] for m, s in enumerate(arcs1)}
    lab2 = {s: S2.labels[m] for m, s in enumerate(arcs2)}
    if S.labels[n - n_free:] != S2.labels[n2 - n_free:]:
        return 0
    old = set(arcs1) - set(arcs2)
    new = set(arcs2) - set(arcs1)
    if any(lab1[s] != lab2[s] for s in set(arcs1) & set(arcs2)):
        return 0
    before = [lab1[s] for s in old]
    after = [lab2[s] for s in new]
    if len(old) == 2 and len(new) == 1:
        p = before.count(1)
        if p == 2:
            ok = after == [1]
        elif p == 1:
            ok = after == [-1]
        else:
            ok = False
    elif len(old) == 1 and len(new) == 2:
        if before == [1]:
            ok = sorted(after) == [-1, 1]
        else:
            ok = after == [-1, -1]
    else:
        ok = False
    if not ok:
        return 0
    return -1 if _popcount(S.word & ((1 << t) - 1)) % 2 else 1


def differential_matrix(D: LinkDiagram, i: int, j: int) -> SparseIntMat:
    """Matrix of ``d^{i,j}: CKh^{i,j} -> CKh^{i+1,j}`` in the canonical bases."""
    check_cap(D)
    return _complex(D).matrix(i, j)


# ---------------------------------------------------------------------------
# homology


class BigradedGroups:
    """Nonzero homology groups indexed by ``(i, j)``, over ``Z`` or ``Q``."""

    __slots__ = ("groups", "ring")

    def __init__(self, groups: Mapping[tuple[int, int], HomologySummand] | None = None, ring: str = "Z"):
        ring = ring.upper()
        if ring not in ("Z", "Q"):
            raise ValueError("ring must be 'Z' or 'Q'")
        clean = {}
        for (i, j), h in (groups or {}).items():
            if not isinstance(h, HomologySummand):
                h = HomologySummand(*h) if isinstance(h, tuple) else HomologySummand(int(h))
            if ring == "Q":
                h = HomologySummand(h.free_rank, ())
            if not h.is_zero():
                clean[(int(i), int(j))] = h
        self.groups = dict(sorted(clean.items()))
        self.ring = ring

    def __getitem__(self, key: tuple[int, int]) -> HomologySummand:
        return self.groups.get(key, HomologySummand(0, ()))

    def rank(self, i: int, j: int) -> int:
        return self[(i, j)].free_rank

    def torsion(self, i: int, j: int) -> tuple[int, ...]:
        return self[(i, j)].torsion

    def is_zero_at(self, i: int, j: int) -> bool:
        return (i, j) not in self.groups

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.groups)

    def items(self):
        return self.groups.items()

    def __bool__(self):
        return bool(self.groups)

    def __eq__(self, other):
        return isinstance(other, BigradedGroups) and self.ring == other.ring and self.groups == other.groups

    def __repr__(self):
        body = ", ".join(f"{k}: {v.free_rank}{'+' + str(list(v.torsion)) if v.torsion else ''}" for k, v in self.groups.items())
        return f"BigradedGroups[{self.ring}]({{{body}}})"

    def shift(self, di: int, dj: int) -> "BigradedGroups":
        """Move the entry at ``(i, j)`` to ``(i + di, j + dj)``."""
        return BigradedGroups({(i + di, j + dj): h for (i, j), h in self.groups.items()}, self.ring)

    def rational(self) -> "BigradedGroups":
        return BigradedGroups(self.groups, "Q")

    def to_records(self) -> list[dict]:
        return [
            {"i": i, "j": j, "rank": h.free_rank, "torsion": list(h.torsion)}
            for (i, j), h in self.groups.items()
        ]

    @classmethod
    def from_records(cls, records: Iterable[Mapping], ring: str = "Z") -> "BigradedGroups":
        return cls(
            {(r["i"], r["j"]): HomologySummand(r["rank"], tuple(r.get("torsion", ()))) for r in records},
            ring,
        )


def _homology_row(D: LinkDiagram, j: int, ring: str) -> dict[tuple[int, int], HomologySummand]:
    cx = _complex(D)
    c = D.c
    factors: dict[int, list[int]] = {}
    for i in range(-1, c + 1):
        if cx.dim(i, j) and cx.dim(i + 1, j):
            M = cx.matrix(i, j)
            factors[i] = smith_normal_form(M) if ring == "Z" else [1] * rank_over_rationals(M)
        else:
            factors[i] = []
    out = {}
    for i in range(c + 1):
        n = cx.dim(i, j)
        if not n:
            continue
        f_in, f_out = factors[i - 1], factors[i]
        h = HomologySummand(n - len(f_out) - len(f_in), tuple(d for d in f_in if d > 1))
        if not h.is_zero():
            out[(i, j)] = h
    return out


def _row_job(args):
    D, j, ring = args
    return _homology_row(D, j, ring)


def _default_jobs() -> int:
    raw = os.environ.get("KH_JOBS")
    return int(raw) if raw else 1


def unshifted_homology(D: LinkDiagram, ring: str = "Z", *, jobs: int | None = None) -> BigradedGroups:
    """Homology of the enhanced-state complex before the orientation shift."""
    check_cap(D)
    ring = ring.upper()
    if ring not in ("Z", "Q"):
        raise ValueError("ring must be 'Z' or 'Q'")
    js = _complex(D).j_range()
    jobs = _default_jobs() if jobs is None else jobs
    groups: dict[tuple[int, int], HomologySummand] = {}
    if jobs > 1 and len(js) > 1:
        # largest rows first so the pool stays busy
        order = sorted(js, key=lambda j: -sum(_complex(D).dim(i, j) for i in range(D.c + 1)))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_row_job, [(D, j, ring) for j in order]):
                groups.update(part)
    else:
        for j in js:
            groups.update(_homology_row(D, j, ring))
    return BigradedGroups(groups, ring)


def shift_of(D: LinkDiagram) -> tuple[int, int]:
    """``(di, dj)`` taking unshifted gradings to the link-invariant ones."""
    cp, cm = crossing_signs(D)
    return -cm, cp - 2 * cm


def shifted_homology(D: LinkDiagram, ring: str = "Z", *, jobs: int | None = None) -> BigradedGroups:
    """``Kh^{i,j}(D) = unshifted Kh^{i + c_-, j - c_+ + 2 c_-}(D)``."""
    return unshifted_homology(D, ring, jobs=jobs).shift(*shift_of(D))


def graded_euler(H: BigradedGroups) -> LaurentPoly:
    return LaurentPoly([(j, (-1) ** (i % 2) * h.free_rank) for (i, j), h in H.items()])


# ---------------------------------------------------------------------------
# extremal data and the main theorem


class ExtremalProfile(NamedTuple):
    j_min: int
    j_max: int
    i_min: int
    i_max: int
    delta_min: int
    delta_max: int


def extremal_profile(H: BigradedGroups) -> ExtremalProfile:
    """Extreme gradings over all nonzero entries (torsion included)."""
    if not H:
        raise EmptyHomology("homology has no nonzero entries")
    sup = H.support()
    return ExtremalProfile(
        min(j for _, j in sup),
        max(j for _, j in sup),
        min(i for i, _ in sup),
        max(i for i, _ in sup),
        min(2 * i - j for i, j in sup),
        max(2 * i - j for i, j in sup),
    )


class StatementResult(NamedTuple):
    passed: bool
    witness: dict


class TheoremMainReport(NamedTuple):
    side: str
    stmt1: StatementResult
    stmt2: StatementResult
    stmt3: StatementResult

    @property
    def passed(self) -> bool:
        return self.stmt1.passed and self.stmt2.passed and self.stmt3.passed


def _describe(h: HomologySummand) -> dict:
    return {"rank": h.free_rank, "torsion": list(h.torsion)}


def verify_theorem_main(D_or_H, side: str = "A") -> TheoremMainReport:
    """Check the three extremal statements on the min side (A) or max side (B).

    Accepts a diagram (its shifted integral homology is computed) or a
    precomputed :class:`BigradedGroups`.
    """
    H = D_or_H if isinstance(D_or_H, BigradedGroups) else shifted_homology(D_or_H, "Z")
    side = side.upper()
    P = extremal_profile(H)
    if side == "A":
        i0, j0, step, delta, target = P.i_min, P.j_min, 2, P.delta_min, P.delta_min + 2
    elif side == "B":
        i0, j0, step, delta, target = P.i_max, P.j_max, -2, P.delta_max, P.delta_max - 2
    else:
        raise ValueError("side must be 'A' or 'B'")
    row = {i: h for (i, j), h in H.items() if j == j0}
    corner = H[(i0, j0)]
    ok1 = set(row) == {i0} and corner == HomologySummand(1, ())
    s1 = StatementResult(ok1, {"j": j0, "row": {i: _describe(h) for i, h in row.items()}, "i_expected": i0})
    s2 = StatementResult(2 * i0 - j0 == target, {"2i-j": 2 * i0 - j0, "delta": delta, "expected": target})
    probe = (i0 + step, j0 + step)
    s3 = StatementResult(H.is_zero_at(*probe), {"at": probe, "group": _describe(H[probe])})
    return TheoremMainReport(side, s1, s2, s3)


def genus_two_obstruction(H: BigradedGroups) -> bool:
    """True when both the min-side and the max-side statements fail."""
    return not verify_theorem_main(H, "A").passed and not verify_theorem_main(H, "B").passed


# ---------------------------------------------------------------------------
# the long exact sequence of a crossing


class ExactnessReport(NamedTuple):
    """``failures`` lists ``(spot, i, j, detail)`` for every inexact position."""

    crossing: int
    prime: int
    checked: int
    failures: tuple

    @property
    def exact(self) -> bool:
        return not self.failures


def _dense(M: SparseIntMat) -> np.ndarray:
    A = np.zeros((M.n_rows, M.n_cols), dtype=np.int64)
    for (r, c), v in M.entries.items():
        A[r, c] = v
    return A


@dataclass
class _FieldComplex:
    """Cycles, boundaries and differentials of one complex over F_p, for one j."""

    dims: dict[int, int]
    d: dict[int, np.ndarray]  # d[i]: C^i -> C^{i+1}
    p: int

    def Z(self, i):
        n = self.dims.get(i, 0)
        M = self.d.get(i)
        if M is None or M.size == 0:
            return np.eye(n, dtype=np.int64)
        return _fp.nullspace(M, self.p, n)

    def B(self, i):
        n = self.dims.get(i, 0)
        M = self.d.get(i - 1)
        if M is None or M.size == 0:
            return np.zeros((n, 0), dtype=np.int64)
        return M % self.p

    def h(self, i):
        n = self.dims.get(i, 0)
        return self.Z(i).shape[1] - _fp.column_space_rank(self.B(i), p=self.p, n_rows=n)


def _field_complex(D, j, prime, lo, hi, differential) -> _FieldComplex:
    cx = _complex(D)
    dims = {i: cx.dim(i, j) for i in range(lo, hi + 1)}
    d = {}
    for i in range(lo, hi):
        M = differential(D, i, j) if differential is not None else cx.matrix(i, j)
        d[i] = _dense(M) % prime
    return _FieldComplex(dims, d, prime)


def _state_image(D, S: EnhancedState, k: int, Dk: LinkDiagram, amap) -> tuple[EnhancedState, int]:
    """The state of the resolved diagram matching ``S`` (``S`` has its letter fixed at ``k``)."""
    cbD, cbK = cube(D), cube(Dk)
    w = S.word
    low = w & ((1 << k) - 1)
    high = w >> (k + 1)
    w2 = low | (high << k)
    circ, n = cbD.circles(w)
    circ2, n2 = cbK.circles(w2)
    labels2 = [0] * n2
    n_free_K = Dk.n_free
    labels_K = Dk.arc_labels
    index_K = {a: t for t, a in enumerate(labels_K)}
    labels_D = D.arc_labels
    for a_idx, m in enumerate(circ):
        kind, val = amap[labels_D[a_idx]]
        if kind == "arc":
            m2 = circ2[index_K[val]]
        else:
            m2 = n2 - n_free_K + val
        labels2[m2] = S.labels[m]
    for f in range(D.n_free):
        labels2[n2 - n_free_K + f] = S.labels[n - D.n_free + f]
    after = _popcount(high)
    return EnhancedState(w2, tuple(labels2)), after


def les_exactness(
    D: LinkDiagram,
    k: int,
    *,
    prime: int = _fp.DEFAULT_PRIME,
    differential: Callable[[LinkDiagram, int, int], SparseIntMat] | None = None,
) -> ExactnessReport:
    """Check exactness of the long exact sequence attached to crossing ``k``.

    For each ``j`` the sequence reads
    ``H^{i-1,j-1}(D_B) -f-> H^{i,j}(D) -g-> H^{i,j}(D_A) -delta-> H^{i,j-1}(D_B) -f-> ...``
    with coefficients in ``F_prime``.  ``f`` sends a state of ``D_B`` to the
    state of ``D`` with the B letter inserted at ``k``, times
    ``(-1)^{number of B letters after k}``; ``g`` keeps the states with an A
    letter at ``k``.  Besides ``im = ker`` at every spot, the report flags
    nonzero composites and chain-map failures.  ``differential`` replaces
    the differential of ``D`` (for negative controls).
    """
    check_cap(D)
    k0 = D.check_crossing(k)
    DA, amapA = resolve_with_map(D, k, "A")
    DB, amapB = resolve_with_map(D, k, "B")
    cxD, cxA, cxB = _complex(D), _complex(DA), _complex(DB)
    c = D.c
    p = prime
    failures = []
    checked = 0
    all_j = sorted(set(cxD.j_range()) | set(cxA.j_range()) | {j + 1 for j in cxB.j_range()})
    for j in all_j:
        CD = _field_complex(D, j, p, -2, c + 2, differential)
        CA = _field_complex(DA, j, p, -2, c + 2, None)
        CB = _field_complex(DB, j - 1, p, -2, c + 2, None)
        f, g = {}, {}
        for i in range(0, c + 2):
            nD = CD.dims.get(i, 0)
            F = np.zeros((nD, CB.dims.get(i - 1, 0)), dtype=np.int64)
            G = np.zeros((CA.dims.get(i, 0), nD), dtype=np.int64)
            if nD:
                for col, S in enumerate(cxD.basis(i, j)):
                    if S.word >> k0 & 1:
                        S2, after = _state_image(D, S, k0, DB, amapB)
                        F[col, cxB.index(S2)] = -1 if after % 2 else 1
                    else:
                        S2, _ = _state_image(D, S, k0, DA, amapA)
                        G[cxA.index(S2), col] = 1
            f[i], g[i] = F % p, G
        # chain-map checks
        for i in range(0, c + 1):
            if not np.array_equal(_fp.matmul(CD.d[i], f[i], p), _fp.matmul(f[i + 1], CB.d[i - 1], p)):
                failures.append(("chain-f", i, j, "d f != f d"))
            if not np.array_equal(_fp.matmul(CA.d[i], g[i], p), _fp.matmul(g[i + 1], CD.d[i], p)):
                failures.append(("chain-g", i, j, "d g != g d"))

        def delta(i, cols):
            up = _fp.matmul(g[i].T, cols, p)
            img = _fp.matmul(CD.d[i], up, p)
            pre = _fp.matmul(f[i + 1].T, img, p)
            if not np.array_equal(_fp.matmul(f[i + 1], pre, p), img):
                failures.append(("delta", i, j, "d of a lift is not in the image of f"))
            return pre

        for i in range(0, c + 1):
            spots = (
                ("D", CD, i, _fp.matmul(f[i], CB.Z(i - 1), p), lambda x, i=i: _fp.matmul(g[i], x, p), CA, i),
                ("A", CA, i, _fp.matmul(g[i], CD.Z(i), p), lambda x, i=i: delta(i, x), CB, i),
                ("B", CB, i, delta(i, CA.Z(i)), lambda x, i=i: _fp.matmul(f[i + 1], x, p), CD, i + 1),
            )
            for name, mid, im, inc, out, nxt, im_next in spots:
                checked += 1
                problem = _check_spot(mid, im, inc, out, nxt, im_next, p)
                if problem:
                    failures.append((name, i, j, problem))
    return ExactnessReport(k, prime, checked, tuple(failures))


def _check_spot(mid: _FieldComplex, i, inc, out, nxt: _FieldComplex, i_next, p) -> str | None:
    """Exactness at ``H^i(mid)`` between an incoming image and an outgoing map."""
    n_mid, n_next = mid.dims.get(i, 0), nxt.dims.get(i_next, 0)
    Bm, Bn = mid.B(i), nxt.B(i_next)
    Zm = mid.Z(i)
    rB = _fp.column_space_rank(Bm, p=p, n_rows=n_mid)
    rBn = _fp.column_space_rank(Bn, p=p, n_rows=n_next)
    dim_h = Zm.shape[1] - rB
    dim_im = _fp.column_space_rank(inc, Bm, p=p, n_rows=n_mid) - rB
    dim_out = _fp.column_space_rank(out(Zm), Bn, p=p, n_rows=n_next) - rBn
    if _fp.column_space_rank(out(inc), Bn, p=p, n_rows=n_next) != rBn:
        return "composite is not zero on homology"
    if dim_im != dim_h - dim_out:
        return f"dim im {dim_im} != dim ker {dim_h - dim_out}"
    return None
