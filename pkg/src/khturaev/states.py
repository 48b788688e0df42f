"""Kauffman states and the diagram invariants read off from them.

Resolution words are bit masks: bit ``t`` set means the B-smoothing at
crossing ``t + 1``.  Strings such as ``"ABBA"`` (letter ``t`` for crossing
``t + 1``) and sequences of letters are accepted wherever a word is.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache
from typing import NamedTuple, Sequence

from .diagram import SMOOTHING_PAIRS, LinkDiagram, crossing_signs
from .errors import CapExceeded, LengthMismatch, NotAdequate
from .laurent import LaurentPoly

__all__ = [
    "KauffmanState",
    "StateGraph",
    "GammaCycle",
    "GammaDecomposition",
    "crossing_cap",
    "check_cap",
    "word_mask",
    "word_string",
    "state_components",
    "state_counts",
    "diagram_turaev_genus",
    "state_graph",
    "girth",
    "is_A_adequate",
    "is_B_adequate",
    "seifert_word",
    "seifert_state",
    "gamma_cycles",
    "euler_oracle",
]

DEFAULT_CAP = 16


def crossing_cap() -> int:
    """Largest crossing number accepted by the exponential algorithms."""
    raw = os.environ.get("KH_MAX_CROSSINGS")
    if raw is None or not raw.strip():
        return DEFAULT_CAP
    return int(raw)


def check_cap(D: LinkDiagram, cap: int | None = None):
    cap = crossing_cap() if cap is None else cap
    if D.c > cap:
        raise CapExceeded(f"diagram has {D.c} crossings; the cap is {cap}")


def word_mask(D: LinkDiagram, r) -> int:
    """Normalize a resolution word to a bit mask, checking its length."""
    if isinstance(r, int) and not isinstance(r, bool):
        if r < 0 or r >> D.c:
            raise LengthMismatch(f"mask {r} does not fit {D.c} crossings")
        return r
    letters = list(r)
    if len(letters) != D.c:
        raise LengthMismatch(f"word of length {len(letters)} for {D.c} crossings")
    mask = 0
    for t, x in enumerate(letters):
        x = str(x).upper()
        if x in ("B", "1"):
            mask |= 1 << t
        elif x not in ("A", "0"):
            raise ValueError(f"resolution letters must be A or B, got {x!r}")
    return mask


def word_string(c: int, mask: int) -> str:
    return "".join("B" if mask >> t & 1 else "A" for t in range(c))


class _Cube:
    """Slot bookkeeping for fast circle tracing on one diagram."""

    def __init__(self, D: LinkDiagram):
        self.D = D
        self.c = D.c
        labels = D.arc_labels
        self.arc_index = {a: n for n, a in enumerate(labels)}
        self.n_arcs = len(labels)
        self.slot_arc = [self.arc_index[a] for x in D.crossings for a in x.arcs]
        other = [0] * (4 * self.c)
        for a, ((i, p), (j, q)) in D.arc_slots.items():
            other[4 * i + p] = 4 * j + q
            other[4 * j + q] = 4 * i + p
        self.other_end = other
        # partner slot under each smoothing
        partner = []
        for pairs in SMOOTHING_PAIRS:
            m = [0] * 4
            for p, q in pairs:
                m[p], m[q] = q, p
            partner.append(m)
        self.partner = partner
        self._memo: dict[int, tuple[tuple[int, ...], int]] = {}

    def circles(self, mask: int) -> tuple[tuple[int, ...], int]:
        """Circle index of each arc and the total circle count (free circles last)."""
        hit = self._memo.get(mask)
        if hit is not None:
            return hit
        n_arcs = self.n_arcs
        circ = [-1] * n_arcs
        slot_arc, other, partner = self.slot_arc, self.other_end, self.partner
        arc_first_slot = self._first_slot
        n = 0
        for a in range(n_arcs):
            if circ[a] >= 0:
                continue
            s = arc_first_slot[a]
            while circ[slot_arc[s]] < 0:
                circ[slot_arc[s]] = n
                e = other[s]
                i, p = divmod(e, 4)
                s = 4 * i + partner[mask >> i & 1][p]
            n += 1
        out = (tuple(circ), n + self.D.n_free)
        if len(self._memo) < 1 << 17:
            self._memo[mask] = out
        return out

    @property
    def _first_slot(self):
        fs = self.__dict__.get("_fs")
        if fs is None:
            fs = [0] * self.n_arcs
            seen = set()
            for s, a in enumerate(self.slot_arc):
                if a not in seen:
                    seen.add(a)
                    fs[a] = s
            self.__dict__["_fs"] = fs
        return fs

    def count(self, mask: int) -> int:
        return self.circles(mask)[1]


@lru_cache(maxsize=64)
def cube(D: LinkDiagram) -> _Cube:
    return _Cube(D)


class KauffmanState(NamedTuple):
    """A resolution word with its circles, each given as a frozenset of arc labels.

    Crossingless circles of the diagram appear as empty sets at the end.
    """

    word: str
    circles: tuple[frozenset, ...]
    circle_count: int


def state_components(D: LinkDiagram, r) -> KauffmanState:
    mask = word_mask(D, r)
    circ, n = cube(D).circles(mask)
    labels = D.arc_labels
    groups = [set() for _ in range(n)]
    for a, k in enumerate(circ):
        groups[k].add(labels[a])
    return KauffmanState(word_string(D.c, mask), tuple(frozenset(g) for g in groups), n)


def state_counts(D: LinkDiagram) -> tuple[int, int]:
    """``(s_A, s_B)``: circle counts of the all-A and all-B states."""
    cb = cube(D)
    return cb.count(0), cb.count((1 << D.c) - 1)


def diagram_turaev_genus(D: LinkDiagram) -> int:
    sa, sb = state_counts(D)
    twice = 2 + D.c - sa - sb
    assert twice >= 0 and twice % 2 == 0, "Turaev genus must be a nonnegative integer"
    return twice // 2


class StateGraph(NamedTuple):
    """Circles of an extreme state as vertices; edge ``t`` comes from crossing ``t + 1``."""

    side: str
    n_vertices: int
    edges: tuple[tuple[int, int], ...]


def state_graph(D: LinkDiagram, side: str = "A") -> StateGraph:
    side = side.upper()
    bit = 0 if side == "A" else 1
    mask = 0 if bit == 0 else (1 << D.c) - 1
    cb = cube(D)
    circ, n = cb.circles(mask)
    edges = []
    for i in range(D.c):
        u = circ[cb.slot_arc[4 * i + SMOOTHING_PAIRS[bit][0][0]]]
        v = circ[cb.slot_arc[4 * i + SMOOTHING_PAIRS[bit][1][0]]]
        edges.append((u, v))
    return StateGraph(side, n, tuple(edges))


def girth(g: StateGraph) -> float:
    """Shortest cycle length; a loop has length 1, a double edge length 2, a forest ``inf``."""
    if any(u == v for u, v in g.edges):
        return 1
    seen_pairs = set()
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            return 2
        seen_pairs.add(key)
    adj: dict[int, list[int]] = {v: [] for v in range(g.n_vertices)}
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    best = math.inf
    # simple graph from here on: BFS from every vertex
    for s in range(g.n_vertices):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_A_adequate(D: LinkDiagram) -> bool:
    return all(u != v for u, v in state_graph(D, "A").edges)


def is_B_adequate(D: LinkDiagram) -> bool:
    return all(u != v for u, v in state_graph(D, "B").edges)


def seifert_word(D: LinkDiagram) -> int:
    """The oriented smoothing: A at positive crossings, B at negative ones."""
    return sum(1 << t for t, s in enumerate(D.signs) if s < 0)


def seifert_state(D: LinkDiagram) -> int:
    """``f(D)``, the number of Seifert circles."""
    return cube(D).count(seifert_word(D))


class GammaCycle(NamedTuple):
    """One all-A circle viewed as a closed walk of the oriented 4-valent graph.

    ``visits`` lists ``(crossing id, kind)`` along the circle, where kind is
    ``"pass"`` at a positive crossing and ``"sink"`` or ``"source"`` at a
    negative one.
    """

    arcs: tuple[int, ...]
    visits: tuple[tuple[int, str], ...]
    negative_count: int
    sinks: int
    sources: int


class GammaDecomposition(NamedTuple):
    cycles: tuple[GammaCycle, ...]


def gamma_cycles(D: LinkDiagram) -> GammaDecomposition:
    """Decompose the oriented diagram graph along the all-A circles."""
    if not is_A_adequate(D):
        raise NotAdequate("the cycle decomposition needs an A-adequate diagram")
    cb = cube(D)
    labels = D.arc_labels
    seen = set()
    cycles = []
    partner = cb.partner[0]
    for a0 in range(cb.n_arcs):
        if a0 in seen:
            continue
        arcs, visits = [], []
        s = cb._first_slot[a0]
        while cb.slot_arc[s] not in seen:
            seen.add(cb.slot_arc[s])
            arcs.append(labels[cb.slot_arc[s]])
            e = cb.other_end[s]
            i, p = divmod(e, 4)
            q = partner[p]
            if D.signs[i] > 0:
                kind = "pass"
            else:
                # at a negative crossing slots 0 and 1 are heads, 2 and 3 tails
                kind = "sink" if p in (0, 1) else "source"
            visits.append((i + 1, kind))
            s = 4 * i + q
        negs = {k for k, kind in visits if kind != "pass"}
        cycles.append(
            GammaCycle(
                tuple(arcs),
                tuple(visits),
                len(negs),
                sum(1 for _, k in visits if k == "sink"),
                sum(1 for _, k in visits if k == "source"),
            )
        )
    return GammaDecomposition(tuple(cycles))


def euler_oracle(D: LinkDiagram, *, shifted: bool = True) -> LaurentPoly:
    """State-sum graded Euler characteristic, computed without homology.

    Sums ``(-1)^b q^b (q + 1/q)^{circles}`` over all resolutions and, when
    ``shifted``, multiplies by ``(-1)^{c_-} q^{c_+ - 2 c_-}``.
    """
    check_cap(D)
    cb = cube(D)
    # bucket by (b, circle count) first; powers of (q + 1/q) are reused
    buckets: dict[tuple[int, int], int] = {}
    for mask in range(1 << D.c):
        key = (bin(mask).count("1"), cb.circles(mask)[1] if D.c <= 17 else cb.count(mask))
        buckets[key] = buckets.get(key, 0) + 1
    qq = LaurentPoly({1: 1, -1: 1})
    total = LaurentPoly()
    for (b, n), mult in sorted(buckets.items()):
        total = total + (qq ** n).shift(b) * (mult * (-1) ** b)
    if shifted:
        cp, cm = crossing_signs(D)
        total = total.shift(cp - 2 * cm) * ((-1) ** cm)
    return total
