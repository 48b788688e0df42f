"""Oriented planar link diagrams in PD notation.

A crossing is stored as the KnotTheory-style quadruple ``X[a, b, c, d]``:
arc labels listed counterclockwise starting from the incoming
under-strand, so the under-strand runs ``a -> c`` and the over-strand
joins ``b`` and ``d``.  Slot ``p`` of a crossing is position ``p`` in the
quadruple; corner ``k`` is the wedge between slots ``k`` and ``k + 1``.

With this layout the A-smoothing pairs slots ``(0, 1)`` and ``(2, 3)``
and opens a channel between corners 1 and 3; the B-smoothing pairs
``(0, 3)`` and ``(1, 2)`` and joins corners 0 and 2.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Sequence

from .errors import (
    BadCrossing,
    DisconnectedDiagram,
    EmbeddingError,
    ParseError,
    ValidationError,
)

__all__ = [
    "CrossingPD",
    "LinkDiagram",
    "FaceDecomposition",
    "PlaneGraph",
    "Move",
    "parse_pd",
    "from_quadruples",
    "resolve_with_map",
    "to_pd_text",
    "faces",
    "checkerboard_graphs",
    "medial_diagram",
    "mirror",
    "crossing_signs",
    "resolve",
    "change_crossing",
    "perturb",
    "from_braid",
]

# smoothing pairs of slots: index 0 = A, 1 = B
SMOOTHING_PAIRS = (((0, 1), (2, 3)), ((0, 3), (1, 2)))
# corners joined by each smoothing
SMOOTHING_CORNERS = ((1, 3), (0, 2))


@dataclass(frozen=True)
class CrossingPD:
    arcs: tuple[int, int, int, int]
    id: int


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``signs[i]`` is +1 for a positive crossing and -1 for a negative one;
    together with the PD quadruples it fixes the orientation of every arc.
    ``n_free`` counts crossingless circles.  ``black_corner`` optionally
    names one corner ``(crossing index, corner)`` that the checkerboard
    coloring should paint black; it does not take part in equality.
    """

    crossings: tuple[CrossingPD, ...]
    signs: tuple[int, ...]
    n_free: int = 0
    black_corner: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.signs) != len(self.crossings):
            raise ValidationError("one sign per crossing is required")
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x.arcs) != 4:
                raise ValidationError(f"crossing {x.id} does not have four arcs")
            for a in x.arcs:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise ValidationError(f"arc labels must appear exactly twice: {bad}")
        roles: dict[int, list[str]] = {a: [] for a in counts}
        for i, x in enumerate(self.crossings):
            for p in range(4):
                roles[x.arcs[p]].append("head" if self._is_head(i, p) else "tail")
        for a, r in roles.items():
            if sorted(r) != ["head", "tail"]:
                raise ValidationError(f"inconsistent orientation flow along arc {a}")
        if self.n_free < 0:
            raise ValidationError("negative number of free circles")

    # orientation bookkeeping -------------------------------------------

    def _is_head(self, i: int, p: int) -> bool:
        """True when slot ``p`` of crossing ``i`` is where its arc ends."""
        if p == 0:
            return True
        if p == 2:
            return False
        # over-strand runs b -> d at negative crossings, d -> b at positive
        if self.signs[i] < 0:
            return p == 1
        return p == 3

    @property
    def c(self) -> int:
        return len(self.crossings)

    @property
    def n_arcs(self) -> int:
        return 2 * self.c

    @cached_property
    def arc_labels(self) -> tuple[int, ...]:
        return tuple(sorted({a for x in self.crossings for a in x.arcs}))

    @cached_property
    def arc_slots(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        slots: dict[int, list[tuple[int, int]]] = {}
        for i, x in enumerate(self.crossings):
            for p, a in enumerate(x.arcs):
                slots.setdefault(a, []).append((i, p))
        return {a: (s[0], s[1]) for a, s in slots.items()}

    @cached_property
    def head_slot(self) -> dict[int, tuple[int, int]]:
        return {
            a: (s if self._is_head(*s) else t)
            for a, (s, t) in self.arc_slots.items()
        }

    @cached_property
    def tail_slot(self) -> dict[int, tuple[int, int]]:
        return {
            a: (t if self._is_head(*s) else s)
            for a, (s, t) in self.arc_slots.items()
        }

    def next_arc(self, a: int) -> int:
        i, p = self.head_slot[a]
        return self.crossings[i].arcs[(p + 2) % 4]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Arc cycles of the components that meet a crossing, in orientation order."""
        seen: set[int] = set()
        comps = []
        for a in self.arc_labels:
            if a in seen:
                continue
            cyc = []
            x = a
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self.next_arc(x)
            comps.append(tuple(cyc))
        return tuple(comps)

    @property
    def mu(self) -> int:
        return len(self.components) + self.n_free

    @cached_property
    def passages(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per component: the sequence of ``(crossing index, entry slot)`` visited."""
        return tuple(
            tuple(self.head_slot[a] for a in comp) for comp in self.components
        )

    def check_crossing(self, k: int) -> int:
        """Validate a 1-based crossing id and return its 0-based index."""
        if not isinstance(k, int) or not 1 <= k <= self.c:
            raise BadCrossing(f"crossing {k!r} not in 1..{self.c}")
        return k - 1

    def pieces(self) -> int:
        """Number of connected pieces of the diagram on the sphere."""
        if self.c == 0:
            return self.n_free
        parent = list(range(self.c))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for (i, _), (j, _) in self.arc_slots.values():
            parent[find(i)] = find(j)
        return len({find(i) for i in range(self.c)}) + self.n_free

    def __str__(self):
        return to_pd_text(self)


class FaceDecomposition(NamedTuple):
    """Faces of a diagram with a checkerboard coloring.

    ``faces[f]`` lists the arcs along the boundary of face ``f``;
    ``corners[f]`` the ``(crossing index, corner)`` wedges it occupies;
    ``corner_faces[i][k]`` inverts that map; ``coloring[f]`` is
    ``"black"`` or ``"white"``.
    """

    faces: tuple[tuple[int, ...], ...]
    corners: tuple[tuple[tuple[int, int], ...], ...]
    corner_faces: tuple[tuple[int, int, int, int], ...]
    coloring: tuple[str, ...]

    def color_of_corner(self, i: int, k: int) -> str:
        return self.coloring[self.corner_faces[i][k]]


@dataclass(frozen=True)
class PlaneGraph:
    """A multigraph with a rotation system.

    ``edges[e] = (u, v, sign)``; half-edge ``(e, 0)`` sits at ``u`` and
    ``(e, 1)`` at ``v``.  ``rotation[v]`` lists the half-edges at ``v`` in
    counterclockwise order.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    rotation: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if len(self.rotation) != self.n_vertices:
            raise EmbeddingError("one rotation per vertex is required")
        seen = set()
        for v, rot in enumerate(self.rotation):
            for e, end in rot:
                if not 0 <= e < len(self.edges) or end not in (0, 1):
                    raise EmbeddingError(f"bad half-edge {(e, end)}")
                if self.edges[e][end] != v:
                    raise EmbeddingError(f"half-edge {(e, end)} is not at vertex {v}")
                if (e, end) in seen:
                    raise EmbeddingError(f"half-edge {(e, end)} listed twice")
                seen.add((e, end))
        if len(seen) != 2 * len(self.edges):
            raise EmbeddingError("every half-edge must appear in the rotation system")
        for u, v, s in self.edges:
            if s not in (1, -1):
                raise EmbeddingError("edge signs must be +1 or -1")

    @cached_property
    def _position(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {h: (v, n) for v, rot in enumerate(self.rotation) for n, h in enumerate(rot)}

    def succ(self, h: tuple[int, int]) -> tuple[int, int]:
        v, n = self._position[h]
        rot = self.rotation[v]
        return rot[(n + 1) % len(rot)]

    def pred(self, h: tuple[int, int]) -> tuple[int, int]:
        v, n = self._position[h]
        rot = self.rotation[v]
        return rot[(n - 1) % len(rot)]

    def faces(self) -> list[list[tuple[int, int]]]:
        """Face boundaries as cycles of half-edges."""
        seen = set()
        out = []
        for v in range(self.n_vertices):
            for h in self.rotation[v]:
                if h in seen:
                    continue
                cyc = []
                while h not in seen:
                    seen.add(h)
                    cyc.append(h)
                    h = self.succ((h[0], 1 - h[1]))
                out.append(cyc)
        return out

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        adj = {v: set() for v in range(self.n_vertices)}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        stack, seen = [0], {0}
        while stack:
            u = stack.pop()
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n_vertices

    def is_spherical(self) -> bool:
        if not self.is_connected():
            return False
        if not self.edges:
            return self.n_vertices == 1
        return self.n_vertices - len(self.edges) + len(self.faces()) == 2

    @classmethod
    def from_edge_list(cls, n_vertices, edges, rotation=None) -> "PlaneGraph":
        """Build from ``(u, v, sign)`` triples and per-vertex rotations of edge indices.

        ``rotation[v]`` may list plain edge indices; a loop must then appear
        twice, and its first occurrence is taken as end 0.
        """
        edges = tuple((int(u), int(v), int(s)) for u, v, s in edges)
        if rotation is None:
            rotation = [[] for _ in range(n_vertices)]
            for e, (u, v, _) in enumerate(edges):
                rotation[u].append(e)
                rotation[v].append(e)
        rot = []
        for v, items in enumerate(rotation):
            used = set()
            r = []
            for item in items:
                if isinstance(item, tuple):
                    r.append(item)
                    continue
                u, w, _ = edges[item]
                end = 0 if u == v and (item, 0) not in used else 1
                used.add((item, end))
                r.append((item, end))
            rot.append(tuple(r))
        return cls(n_vertices, edges, tuple(rot))


class Move(NamedTuple):
    """One entry of a perturbation ledger.

    ``shift`` is the bigrading offset ``(di, dj)`` with
    ``Kh^{i,j}(before) = Kh^{i+di, j+dj}(after)`` for unshifted homology.
    """

    kind: str
    arc: int

    @property
    def shift(self) -> tuple[int, int]:
        return {"R1+": (0, -1), "R1-": (1, 2), "R2": (1, 1)}[self.kind]


# ---------------------------------------------------------------------------
# parsing and serialization

_RECORD = re.compile(r"^\s*([A-Za-z]+)\s*(.*?)\s*$")


def parse_pd(text: str, *, allow_split: bool = False) -> LinkDiagram:
    """Parse ``"X a b c d"`` / ``"O k"`` records separated by ``;`` or newlines.

    Orientation: under-strands run ``a -> c``; along a component with no
    under-passage the direction follows increasing arc labels, and a
    two-arc component with no under-passage is oriented so that its first
    passage runs ``b -> d``.
    """
    quads: list[tuple[int, int, int, int]] = []
    free: list[int] = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0]
        for rec in line.split(";"):
            if not rec.strip():
                continue
            m = _RECORD.match(rec)
            if not m:
                raise ParseError(f"cannot read record {rec!r}")
            tag, rest = m.group(1).upper(), m.group(2)
            rest = rest.strip().strip("[]()").replace(",", " ")
            try:
                nums = [int(t) for t in rest.split()]
            except ValueError:
                raise ParseError(f"non-integer label in {rec.strip()!r}") from None
            if tag == "X":
                if len(nums) != 4:
                    raise ParseError(f"crossing record needs 4 labels: {rec.strip()!r}")
                quads.append(tuple(nums))
            elif tag == "O":
                if len(nums) != 1:
                    raise ParseError(f"circle record needs 1 label: {rec.strip()!r}")
                free.append(nums[0])
            else:
                raise ParseError(f"unknown record type {tag!r}")
    if not quads and not free:
        raise ParseError("empty PD code")
    crossings_labels = {a for q in quads for a in q}
    if len(set(free)) != len(free) or crossings_labels & set(free):
        raise ValidationError("circle labels must be distinct from all other labels")
    D = from_quadruples(quads, n_free=len(free))
    _check_planar(D)
    if not allow_split and D.pieces() > 1:
        raise DisconnectedDiagram("split diagrams are not supported")
    return D


def from_quadruples(quads: Sequence[Sequence[int]], n_free: int = 0) -> LinkDiagram:
    """Infer signs for PD quadruples and return the diagram (no planarity check)."""
    quads = [tuple(int(a) for a in q) for q in quads]
    counts: dict[int, int] = {}
    for q in quads:
        for a in q:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise ValidationError(f"arc labels must appear exactly twice: {bad}")
    slots: dict[int, list[tuple[int, int]]] = {}
    for i, q in enumerate(quads):
        for p, a in enumerate(q):
            slots.setdefault(a, []).append((i, p))

    def other(a, s):
        s1, s2 = slots[a]
        return s2 if s == s1 else s1

    over_forward: dict[int, bool] = {}  # crossing -> over-strand runs b -> d
    seen: set[int] = set()
    for start in sorted(slots):
        if start in seen:
            continue
        # walk with start's head at its first slot; record entry slots
        walks = []
        for head in slots[start]:
            arcs, entries = [], []
            a, h = start, head
            while True:
                arcs.append(a)
                entries.append(h)
                i, p = h
                nxt_slot = (i, (p + 2) % 4)
                a = quads[i][(p + 2) % 4]
                h = other(a, nxt_slot)
                if a == start and h == head:
                    break
                if len(arcs) > 4 * len(quads) + 4:
                    raise ValidationError("arc cycle does not close")
            walks.append((arcs, entries))
        seen.update(walks[0][0])

        def under_ok(entries):
            return all(p != 2 for _, p in entries)

        def has_under(entries):
            return any(p in (0, 2) for _, p in entries)

        chosen = None
        if has_under(walks[0][1]):
            ok = [w for w in walks if under_ok(w[1])]
            if not ok:
                raise ValidationError(
                    f"inconsistent orientation flow through the component of arc {start}"
                )
            chosen = ok[0]
        else:
            arcs0 = walks[0][0]
            if len(set(arcs0)) >= 3:
                for w in walks:
                    if w[0][1] == w[0][0] + 1 or (
                        len(w[0]) > 1 and w[0][1] == min(w[0]) and w[0][0] == max(w[0])
                    ):
                        chosen = w
                        break
            if chosen is None:
                for w in walks:
                    first = min(w[1])
                    if first[1] == 1:
                        chosen = w
                        break
                if chosen is None:
                    chosen = walks[0]
        for i, p in chosen[1]:
            if p in (1, 3):
                over_forward[i] = p == 1
    signs = tuple(-1 if over_forward[i] else 1 for i in range(len(quads)))
    crossings = tuple(CrossingPD(q, i + 1) for i, q in enumerate(quads))
    return LinkDiagram(crossings, signs, n_free)


def to_pd_text(D: LinkDiagram, *, sort: bool = True) -> str:
    """Serialize as ``;``-separated records; crossing records sorted when ``sort``."""
    recs = [x.arcs for x in D.crossings]
    if sort:
        recs = sorted(recs)
    out = ["X " + " ".join(str(a) for a in q) for q in recs]
    top = max(D.arc_labels, default=0)
    out += [f"O {top + k + 1}" for k in range(D.n_free)]
    return "; ".join(out)


# ---------------------------------------------------------------------------
# faces and checkerboard graphs


def _trace_faces(D: LinkDiagram):
    """Face cycles by left-turn traversal.  Returns (arc lists, corner lists)."""
    face_arcs, face_corners = [], []
    seen = set()
    for i in range(D.c):
        for p in range(4):
            if (i, p) in seen:
                continue
            arcs, corners = [], []
            d = (i, p)
            while d not in seen:
                seen.add(d)
                a = D.crossings[d[0]].arcs[d[1]]
                s1, s2 = D.arc_slots[a]
                j, q = s2 if s1 == d else s1
                arcs.append(a)
                k = (q - 1) % 4
                corners.append((j, k))
                d = (j, k)
            face_arcs.append(tuple(arcs))
            face_corners.append(tuple(corners))
    return face_arcs, face_corners


def _check_planar(D: LinkDiagram):
    if D.c == 0:
        return
    face_arcs, face_corners = _trace_faces(D)
    # count faces per piece
    parent = list(range(D.c))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for (i, _), (j, _) in D.arc_slots.values():
        parent[find(i)] = find(j)
    per_piece: dict[int, int] = {}
    size: dict[int, int] = {}
    for i in range(D.c):
        size[find(i)] = size.get(find(i), 0) + 1
    for corners in face_corners:
        r = find(corners[0][0])
        per_piece[r] = per_piece.get(r, 0) + 1
    for r, n in size.items():
        if per_piece.get(r, 0) != n + 2:
            raise ValidationError("PD code does not describe a planar diagram")


def faces(D: LinkDiagram) -> FaceDecomposition:
    """Faces of a connected diagram with a proper checkerboard coloring.

    The coloring paints black the face at ``D.black_corner`` when set, and
    otherwise the face at corner 1 of the first crossing (the side the
    A-smoothing opens up there).
    """
    if D.pieces() != 1:
        raise DisconnectedDiagram("faces of a split diagram are not defined here")
    if D.c == 0:
        return FaceDecomposition(((), ()), ((), ()), (), ("black", "white"))
    face_arcs, face_corners = _trace_faces(D)
    corner_faces = [[-1] * 4 for _ in range(D.c)]
    for f, corners in enumerate(face_corners):
        for i, k in corners:
            corner_faces[i][k] = f
    root_i, root_k = D.black_corner if D.black_corner is not None else (0, 1)
    color = [None] * len(face_arcs)
    color[corner_faces[root_i][root_k]] = 0
    stack = [corner_faces[root_i][root_k]]
    while stack:
        f = stack.pop()
        for i, k in face_corners[f]:
            for dk in (1, 3):
                g = corner_faces[i][(k + dk) % 4]
                want = 1 - color[f]
                if color[g] is None:
                    color[g] = want
                    stack.append(g)
                elif color[g] != want:
                    raise ValidationError("diagram faces admit no checkerboard coloring")
    return FaceDecomposition(
        tuple(face_arcs),
        tuple(face_corners),
        tuple(tuple(cf) for cf in corner_faces),
        tuple("black" if c == 0 else "white" for c in color),
    )


def checkerboard_graphs(D: LinkDiagram, F: FaceDecomposition | None = None):
    """Return ``(white, black)`` checkerboard graphs.

    Edge ``i`` corresponds to crossing ``i + 1``; its sign is +1 when the
    A-smoothing of that crossing joins the two faces of the graph's color.
    """
    if F is None:
        F = faces(D)
    out = {}
    for col in ("white", "black"):
        verts = [f for f, c in enumerate(F.coloring) if c == col]
        index = {f: n for n, f in enumerate(verts)}
        if D.c == 0:
            out[col] = PlaneGraph(1, (), ((),))
            continue
        edges = []
        for i in range(D.c):
            lo = 1 if F.color_of_corner(i, 1) == col else 0
            edges.append(
                (index[F.corner_faces[i][lo]], index[F.corner_faces[i][lo + 2]], 1 if lo == 1 else -1)
            )
        rotation = []
        for f in verts:
            r = []
            for i, k in F.corners[f]:
                r.append((i, 0 if k in (0, 1) else 1))
            rotation.append(tuple(r))
        out[col] = PlaneGraph(len(verts), tuple(edges), tuple(rotation))
    return out["white"], out["black"]


# ---------------------------------------------------------------------------
# generic assembly from slot data


def _assemble(
    slots: Sequence[Sequence[Hashable]],
    under_odd: Sequence[bool],
    heads: dict[Hashable, tuple[int, int]],
    n_free: int = 0,
    black_corner: tuple[int, int] | None = None,
) -> tuple[LinkDiagram, dict[Hashable, int]]:
    """Build a diagram from counterclockwise slot lists of arbitrary arc ids.

    ``under_odd[i]`` puts the under-strand of crossing ``i`` on slots 1 and 3
    instead of 0 and 2.  ``heads`` maps arc ids to the slot where the arc
    ends; each component follows the first hinted arc it contains and is
    otherwise oriented arbitrarily.  Arcs are relabeled ``1..2c`` along the
    components.  Returns the diagram and the id -> label map.
    """
    where: dict[Hashable, list[tuple[int, int]]] = {}
    order: list[Hashable] = []
    for i, sl in enumerate(slots):
        for p, a in enumerate(sl):
            if a not in where:
                where[a] = []
                order.append(a)
            where[a].append((i, p))
    for a, s in where.items():
        if len(s) != 2:
            raise ValidationError(f"arc {a!r} must meet exactly two slots")

    def other(a, s):
        s1, s2 = where[a]
        return s2 if s == s1 else s1

    head_of: dict[Hashable, tuple[int, int]] = {}
    label: dict[Hashable, int] = {}
    nxt = 1
    for a0 in order:
        if a0 in label:
            continue
        # gather the component unoriented, then orient it
        comp = []
        a, h = a0, where[a0][0]
        while True:
            comp.append((a, h))
            i, p = h
            s = (i, (p + 2) % 4)
            a = slots[i][(p + 2) % 4]
            h = other(a, s)
            if a == a0 and h == where[a0][0]:
                break
        reverse = False
        for a, h in comp:
            if a in heads:
                reverse = heads[a] != h
                break
        if reverse:
            comp = [(a, other(a, h)) for a, h in reversed(comp)]
            # start the labels at a0 again
            k = next(n for n, (a, _) in enumerate(comp) if a == a0)
            comp = comp[k:] + comp[:k]
        for a, h in comp:
            head_of[a] = h
            label[a] = nxt
            nxt += 1
    crossings = []
    signs = []
    shifts = []
    for i, sl in enumerate(slots):
        under = (1, 3) if under_odd[i] else (0, 2)
        p_in = next(p for p in under if head_of[sl[p]] == (i, p))
        quad = tuple(label[sl[(p_in + t) % 4]] for t in range(4))
        b_pos = (p_in + 1) % 4
        over_b_to_d = head_of[sl[b_pos]] == (i, b_pos)
        crossings.append(CrossingPD(quad, i + 1))
        signs.append(-1 if over_b_to_d else 1)
        shifts.append(p_in)
    hint = None
    if black_corner is not None:
        bi, bk = black_corner
        hint = (bi, (bk - shifts[bi]) % 4)
    D = LinkDiagram(tuple(crossings), tuple(signs), n_free, hint)
    _check_planar(D)
    return D, label


def _slot_data(D: LinkDiagram):
    slots = [list(x.arcs) for x in D.crossings]
    heads = dict(D.head_slot)
    return slots, [False] * D.c, heads


# ---------------------------------------------------------------------------
# transformations


def _flip(arcs, sign):
    """Swap over/under at one crossing.  Returns (arcs, sign, slot shift)."""
    a, b, c, d = arcs
    if sign < 0:  # over b -> d, so b is the new incoming under-strand
        return (b, c, d, a), 1, 1
    return (d, a, b, c), -1, 3


def mirror(D: LinkDiagram) -> LinkDiagram:
    """Reverse every crossing."""
    crossings, signs = [], []
    hint = None
    for i, (x, s) in enumerate(zip(D.crossings, D.signs)):
        arcs, sign, shift = _flip(x.arcs, s)
        crossings.append(CrossingPD(arcs, x.id))
        signs.append(sign)
        if D.black_corner is not None and D.black_corner[0] == i:
            hint = (i, (D.black_corner[1] - shift) % 4)
    return LinkDiagram(tuple(crossings), tuple(signs), D.n_free, hint)


def change_crossing(D: LinkDiagram, k: int) -> LinkDiagram:
    """Swap over and under at crossing ``k`` (1-based) only."""
    i = D.check_crossing(k)
    crossings, signs = list(D.crossings), list(D.signs)
    arcs, sign, shift = _flip(crossings[i].arcs, signs[i])
    crossings[i] = CrossingPD(arcs, crossings[i].id)
    signs[i] = sign
    hint = D.black_corner
    if hint is not None and hint[0] == i:
        hint = (i, (hint[1] - shift) % 4)
    return LinkDiagram(tuple(crossings), tuple(signs), D.n_free, hint)


def crossing_signs(D: LinkDiagram) -> tuple[int, int]:
    """``(c_plus, c_minus)``."""
    plus = sum(1 for s in D.signs if s > 0)
    return plus, D.c - plus


def resolve(D: LinkDiagram, k: int, mode: str) -> LinkDiagram:
    """Smooth crossing ``k`` with the A- or B-resolution."""
    return resolve_with_map(D, k, mode)[0]


def resolve_with_map(D: LinkDiagram, k: int, mode: str):
    """Like :func:`resolve`, also returning where each old arc went.

    The map sends an old arc label to ``("arc", new_label)`` or to
    ``("free", n)`` for the ``n``-th crossingless circle of the result
    (numbered after the circles already free in ``D``).
    """
    i0 = D.check_crossing(k)
    mode = mode.upper()
    if mode not in ("A", "B"):
        raise ValueError("mode must be 'A' or 'B'")
    pairs = SMOOTHING_PAIRS[0 if mode == "A" else 1]
    parent = {a: a for a in D.arc_labels}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    arcs = D.crossings[i0].arcs
    for p, q in pairs:
        ra, rb = find(arcs[p]), find(arcs[q])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    keep = [i for i in range(D.c) if i != i0]
    slots = [[find(a) for a in D.crossings[i].arcs] for i in keep]
    present = {a for sl in slots for a in sl}
    heads = {}
    for a in D.arc_labels:
        r = find(a)
        if r in heads or r not in present:
            continue
        hi, hp = D.head_slot[a]
        if hi != i0:
            heads[r] = (keep.index(hi), hp)
    free_roots = sorted({find(a) for a in D.arc_labels} - present)
    hint = None
    if D.black_corner is not None and D.black_corner[0] != i0:
        hint = (keep.index(D.black_corner[0]), D.black_corner[1])
    if keep:
        D2, label = _assemble(slots, [False] * len(keep), heads, D.n_free + len(free_roots), hint)
    else:
        D2, label = LinkDiagram((), (), D.n_free + len(free_roots)), {}
    amap = {}
    for a in D.arc_labels:
        r = find(a)
        if r in present:
            amap[a] = ("arc", label[r])
        else:
            amap[a] = ("free", D.n_free + free_roots.index(r))
    return D2, amap


def medial_diagram(P: PlaneGraph) -> LinkDiagram:
    """The alternating-or-not diagram whose black checkerboard graph is ``P``.

    An edge of sign +1 becomes a crossing whose A-smoothing joins the two
    faces corresponding to its endpoints.
    """
    if not P.is_spherical():
        raise EmbeddingError("rotation system is not a connected sphere embedding")
    if not P.edges:
        return LinkDiagram((), (), 1)
    slots, under_odd = [], []
    for e, (u, v, sign) in enumerate(P.edges):
        h0, h1 = (e, 0), (e, 1)
        # counterclockwise: NE, NW, SW, SE with u on the west and v on the east
        slots.append([("corner", P.pred(h1)), ("corner", h0), ("corner", P.pred(h0)), ("corner", h1)])
        under_odd.append(sign < 0)
    # corner 1 of the first crossing is the face of its vertex u
    D, _ = _assemble(slots, under_odd, {}, 0, (0, 1))
    return D


def from_braid(word: Iterable[int], n_strands: int) -> LinkDiagram:
    """Closure of a braid word; ``+i`` is the positive generator sigma_i."""
    word = [int(g) for g in word]
    for g in word:
        if g == 0 or abs(g) >= n_strands:
            raise ValueError(f"generator {g} out of range for {n_strands} strands")
    cur = [("s", k) for k in range(n_strands)]
    slots, under_odd, heads = [], [], {}
    count = 0
    for t, g in enumerate(word):
        i = abs(g) - 1
        sw, se = cur[i], cur[i + 1]
        nw, ne = ("a", count), ("a", count + 1)
        count += 2
        # counterclockwise: SE, NE, NW, SW
        slots.append([se, ne, nw, sw])
        under_odd.append(g < 0)
        heads[se] = (t, 0)
        heads[sw] = (t, 3)
        cur[i], cur[i + 1] = nw, ne
    rename = {}
    n_free = 0
    for k in range(n_strands):
        if cur[k] == ("s", k):
            n_free += 1
        else:
            rename[cur[k]] = ("s", k)
    slots = [[rename.get(a, a) for a in sl] for sl in slots]
    if not slots:
        return LinkDiagram((), (), n_free)
    D, _ = _assemble(slots, under_odd, heads, n_free)
    return D


def perturb(D: LinkDiagram, seed, n_moves: int):
    """Apply ``n_moves`` random R1/R2 insertions; returns ``(D', ledger)``."""
    if n_moves < 0:
        raise ValueError("n_moves must be nonnegative")
    rng = random.Random(seed)
    ledger: list[Move] = []
    for _ in range(n_moves):
        kinds = ["R1+", "R1-"]
        if D.c > 0:
            kinds.append("R2")
        kind = rng.choice(kinds)
        if kind == "R2":
            moved = _r2(D, rng)
            if moved is None:
                kind = rng.choice(["R1+", "R1-"])
            else:
                D, arc = moved
                ledger.append(Move("R2", arc))
                continue
        D, arc = _r1(D, rng, positive=kind == "R1+")
        ledger.append(Move(kind, arc))
    return D, ledger


def _r1(D: LinkDiagram, rng: random.Random, positive: bool):
    slots, under_odd, heads = _slot_data(D)
    K = len(slots)
    n_free = D.n_free
    if D.c == 0:
        x1 = x2 = ("r1", "x")
        n_free -= 1
        arc = 0
    else:
        arc = rng.choice(D.arc_labels)
        (ti, tp), (hi, hp) = D.tail_slot[arc], D.head_slot[arc]
        x1, x2 = ("r1", "x1"), ("r1", "x2")
        slots[ti][tp] = x1
        slots[hi][hp] = x2
        heads.pop(arc)
        heads[x2] = (hi, hp)
    loop = ("r1", "loop")
    if rng.random() < 0.5:
        layout, odd = (x1, x2, loop, loop), not positive
    else:
        layout, odd = (x1, loop, loop, x2), positive
    slots.append(list(layout))
    under_odd.append(odd)
    heads[x1] = (K, 0)
    heads[loop] = (K, 3) if layout[3] == loop else (K, 1)
    D2, _ = _assemble(slots, under_odd, heads, n_free)
    return D2, arc


def _r2(D: LinkDiagram, rng: random.Random):
    face_arcs, face_corners = _trace_faces(D)
    cands = [f for f, arcs in enumerate(face_arcs) if len(set(arcs)) >= 2]
    if not cands:
        return None
    f = rng.choice(cands)
    arcs = face_arcs[f]
    n = len(arcs)
    ix, iy = rng.sample(range(n), 2)
    while arcs[ix] == arcs[iy]:
        ix, iy = rng.sample(range(n), 2)
    # a face step leaves through slot ``(corner_prev)`` and arrives at ``corners[t]``
    def face_step(t):
        j, k = face_corners[f][t]
        arrive = (j, (k + 1) % 4)
        a = arcs[t]
        s1, s2 = D.arc_slots[a]
        depart = s2 if s1 == arrive else s1
        return a, depart, arrive

    slots, under_odd, heads = _slot_data(D)
    K1, K2 = len(slots), len(slots) + 1
    x, sx_from, sx_to = face_step(ix)
    y, sy_from, sy_to = face_step(iy)
    x1, x2, x3 = ("r2", "x1"), ("r2", "x2"), ("r2", "x3")
    y1, y2, y3 = ("r2", "y1"), ("r2", "y2"), ("r2", "y3")
    slots[sx_from[0]][sx_from[1]] = x1
    slots[sx_to[0]][sx_to[1]] = x3
    slots[sy_from[0]][sy_from[1]] = y1
    slots[sy_to[0]][sy_to[1]] = y3
    heads.pop(x, None)
    heads.pop(y, None)
    slots.append([y2, x2, y3, x1])
    slots.append([y1, x2, y2, x3])
    if D.head_slot[x] == sx_to:
        heads.update({x1: (K1, 3), x2: (K2, 1), x3: sx_to})
    else:
        heads.update({x3: (K2, 3), x2: (K1, 1), x1: sx_from})
    if D.head_slot[y] == sy_to:
        heads.update({y1: (K2, 0), y2: (K1, 0), y3: sy_to})
    else:
        heads.update({y3: (K1, 2), y2: (K2, 2), y1: sy_from})
    x_over = rng.random() < 0.5
    under_odd += [not x_over, not x_over]
    D2, _ = _assemble(slots, under_odd, heads, D.n_free)
    return D2, x
