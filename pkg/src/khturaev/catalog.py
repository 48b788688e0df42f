"""Built-in named diagrams and seeded random diagram generators."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable

from .diagram import (
    LinkDiagram,
    PlaneGraph,
    from_braid,
    from_quadruples,
    medial_diagram,
    mirror,
    parse_pd,
)
from .errors import KhError

__all__ = [
    "UnknownDiagram",
    "names",
    "get",
    "describe",
    "lookup",
    "resolve_input",
    "random_plane_graph",
    "random_almost_alternating",
    "random_alternating",
    "random_medial",
]


class UnknownDiagram(KhError):
    """Raised for a catalog name that does not exist."""


def _l6n1_graph() -> PlaneGraph:
    # black graph u1 - a - b - u2 with the path doubled and one opposite edge u1 - u2
    edges = [(0, 1, -1), (0, 1, -1), (1, 2, -1), (1, 2, -1), (2, 3, -1), (2, 3, -1), (0, 3, 1)]
    rotation = [[0, 1, 6], [0, 2, 3, 1], [2, 4, 5, 3], [4, 6, 5]]
    return PlaneGraph.from_edge_list(4, edges, rotation)


# PD codes transcribed from figure drawings by intersecting the drawn curves
_KNOT14 = [
    (11, 28, 12, 1), (2, 9, 3, 10), (1, 23, 2, 22), (26, 4, 27, 3), (19, 5, 20, 4),
    (6, 14, 7, 13), (5, 19, 6, 18), (7, 25, 8, 24), (15, 9, 16, 8), (21, 11, 22, 10),
    (12, 18, 13, 17), (25, 14, 26, 15), (16, 23, 17, 24), (20, 28, 21, 27),
]
_ADEQUATE_TREFOIL = [(8, 6, 1, 5), (4, 2, 5, 1), (7, 3, 8, 2), (3, 7, 4, 6)]
_KNOT_9_43 = [
    (18, 14, 1, 13), (9, 3, 10, 2), (16, 2, 17, 1), (3, 7, 4, 6), (11, 4, 12, 5),
    (5, 10, 6, 11), (7, 15, 8, 14), (15, 9, 16, 8), (12, 18, 13, 17),
]
_A_NOT_B = [
    (18, 9, 1, 10), (1, 7, 2, 6), (7, 3, 8, 2), (3, 9, 4, 8), (13, 5, 14, 4),
    (5, 15, 6, 14), (15, 11, 16, 10), (11, 17, 12, 16), (17, 13, 18, 12),
]


def _entries() -> dict[str, tuple[str, Callable[[], LinkDiagram]]]:
    b = from_braid
    return {
        "unknot": ("crossingless unknot", lambda: parse_pd("O 1")),
        "unknot-kink+": ("unknot with one positive kink", lambda: parse_pd("X 2 2 1 1")),
        "unknot-kink-": ("unknot with one negative kink", lambda: parse_pd("X 1 2 2 1")),
        "trefoil-right": ("positive trefoil, closure of s1^3", lambda: b([1, 1, 1], 2)),
        "trefoil-left": ("negative trefoil, closure of s1^-3", lambda: b([-1, -1, -1], 2)),
        "figure-eight": ("figure-eight knot, closure of (s1 s2^-1)^2", lambda: b([1, -2, 1, -2], 3)),
        "hopf+": ("positive Hopf link", lambda: b([1, 1], 2)),
        "hopf-": ("negative Hopf link", lambda: b([-1, -1], 2)),
        "t24": ("positive (2,4) torus link", lambda: b([1, 1, 1, 1], 2)),
        "t25": ("positive (2,5) torus knot", lambda: b([1] * 5, 2)),
        "t34": ("positive (3,4) torus knot, closure of (s1 s2)^4", lambda: b([1, 2] * 4, 3)),
        "knot-5-2": ("twist knot 5_2, closure of s1^3 s2 s1^-1 s2", lambda: b([1, 1, 1, 2, -1, 2], 3)),
        "knot-6-2": ("knot 6_2, closure of s1^3 s2^-1 s1 s2^-1", lambda: b([1, 1, 1, -2, 1, -2], 3)),
        "l6n1": (
            "seven-crossing almost alternating link from the doubled-path checkerboard graph",
            lambda: medial_diagram(_l6n1_graph()),
        ),
        "l6n1-parent": (
            "same diagram as l6n1, named for its role as the base-case parent",
            lambda: medial_diagram(_l6n1_graph()),
        ),
        "l6n1-mirror": ("mirror of l6n1", lambda: mirror(medial_diagram(_l6n1_graph()))),
        "knot14-genus-two": (
            "fourteen-crossing knot with the genus-two obstruction (transcribed)",
            lambda: from_quadruples(_KNOT14),
        ),
        "adequate-trefoil": (
            "four-crossing A-adequate trefoil diagram of Turaev genus one (transcribed)",
            lambda: from_quadruples(_ADEQUATE_TREFOIL),
        ),
        "knot-9-43": ("nine-crossing A-adequate diagram of 9_43 (transcribed)", lambda: from_quadruples(_KNOT_9_43)),
        "a-not-b": (
            "nine-crossing A-almost alternating diagram that is not B-almost alternating (transcribed)",
            lambda: from_quadruples(_A_NOT_B),
        ),
    }


_ENTRIES = _entries()


def names() -> list[str]:
    return list(_ENTRIES)


def describe(name: str) -> str:
    return _lookup_entry(name)[0]


def _lookup_entry(name: str):
    try:
        return _ENTRIES[name]
    except KeyError:
        raise UnknownDiagram(f"no catalog diagram named {name!r}") from None


@lru_cache(maxsize=None)
def get(name: str) -> LinkDiagram:
    """The catalog diagram called ``name``."""
    return _lookup_entry(name)[1]()


def lookup(max_crossings: int | None = None, *, knots_only: bool = False) -> dict[str, LinkDiagram]:
    """All catalog diagrams, optionally filtered by size and component count."""
    out = {}
    for n in _ENTRIES:
        D = get(n)
        if max_crossings is not None and D.c > max_crossings:
            continue
        if knots_only and D.mu != 1:
            continue
        out[n] = D
    return out


def resolve_input(source: str) -> LinkDiagram:
    """Read ``catalog:NAME``, a PD file path, or ``-`` for standard input."""
    if source.startswith("catalog:"):
        return get(source[len("catalog:"):])
    if source == "-":
        import sys

        return parse_pd(sys.stdin.read())
    with open(source, encoding="utf-8") as fh:
        return parse_pd(fh.read())


# ---------------------------------------------------------------------------
# random generators


def random_plane_graph(
    rng: random.Random,
    n_edges: int,
    *,
    sign: int = -1,
    pendant_rate: float = 0.1,
    subdivide_rate: float = 0.35,
    bridgeless: bool = False,
) -> PlaneGraph:
    """A random connected loopless plane multigraph with ``n_edges`` edges.

    Grown from a single edge by subdividing edges, attaching pendant
    vertices, or adding a chord between two distinct vertices on one face,
    so the rotation system stays a sphere embedding throughout.  With
    ``bridgeless`` the growth starts from a 2-cycle and never adds pendant
    edges, so no edge is a bridge.
    """
    if n_edges < 1:
        raise ValueError("need at least one edge")
    if bridgeless and n_edges >= 2:
        edges = [(0, 1, sign), (0, 1, sign)]
        rot: list[list[tuple[int, int]]] = [[(0, 0), (1, 0)], [(0, 1), (1, 1)]]
    else:
        edges = [(0, 1, sign)]
        rot = [[(0, 0)], [(0, 1)]]
    while len(edges) < n_edges:
        P = PlaneGraph(len(rot), tuple(edges), tuple(tuple(r) for r in rot))
        e = len(edges)
        roll = rng.random()
        if roll < subdivide_rate:
            t = rng.randrange(e)
            u, v, _ = edges[t]
            w = len(rot)
            edges[t] = (u, w, sign)
            edges.append((w, v, sign))
            rot[v][rot[v].index((t, 1))] = (e, 1)
            rot.append([(t, 1), (e, 0)])
            continue
        if not bridgeless and roll < subdivide_rate + pendant_rate:
            v = rng.randrange(len(rot))
            w = len(rot)
            edges.append((v, w, sign))
            rot[v].insert(rng.randrange(len(rot[v]) + 1), (e, 0))
            rot.append([(e, 1)])
            continue
        face = rng.choice(P.faces())
        # each corner sits at the head of a face half-edge, just after its twin
        corners = []
        for h in face:
            tw = (h[0], 1 - h[1])
            corners.append((edges[h[0]][tw[1]], tw))
        pairs = [(a, b) for a in range(len(corners)) for b in range(len(corners)) if corners[a][0] < corners[b][0]]
        if not pairs:
            continue
        a, b = rng.choice(pairs)
        (u, hu), (v, hv) = corners[a], corners[b]
        edges.append((u, v, sign))
        rot[u].insert(rot[u].index(hu) + 1, (e, 0))
        rot[v].insert(rot[v].index(hv) + 1, (e, 1))
    return PlaneGraph(len(rot), tuple(edges), tuple(tuple(r) for r in rot))


def _nontrivial_graph(rng, n_edges, sign):
    # no bridges, so no nugatory crossings
    return random_plane_graph(rng, n_edges, sign=sign, subdivide_rate=0.4, bridgeless=True)


def _connected_without(P: PlaneGraph, drop: set[int]) -> bool:
    adj = [[] for _ in range(P.n_vertices)]
    for f, (u, v, _) in enumerate(P.edges):
        if f not in drop:
            adj[u].append(v)
            adj[v].append(u)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == P.n_vertices


def _isolated_edges(P: PlaneGraph) -> list[int]:
    """Edges that are neither parallel to another edge nor in a cut of size at most two.

    Those are the edges whose crossing can satisfy the no-shared-crossing
    condition on both checkerboard sides.
    """
    out = []
    for e, (u, v, _) in enumerate(P.edges):
        if u == v or any(f != e and {a, b} == {u, v} for f, (a, b, _) in enumerate(P.edges)):
            continue
        if not _connected_without(P, {e}):
            continue
        if all(_connected_without(P, {e, f}) for f in range(len(P.edges)) if f != e):
            out.append(e)
    return out


def random_alternating(seed, n_crossings: int) -> LinkDiagram:
    """Medial diagram of a random plane graph with all edges of one sign."""
    rng = random.Random(seed)
    return medial_diagram(_nontrivial_graph(rng, n_crossings, -1))


def _distances(P: PlaneGraph, src: int) -> list[float]:
    adj = [[] for _ in range(P.n_vertices)]
    for u, v, _ in P.edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = [float("inf")] * P.n_vertices
    dist[src] = 0
    queue = [src]
    for x in queue:
        for w in adj[x]:
            if dist[w] == float("inf"):
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def _far_chords(P: PlaneGraph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Corner pairs on a common face whose vertices are at distance at least three."""
    out = []
    for face in P.faces():
        corners = []
        for h in face:
            tw = (h[0], 1 - h[1])
            corners.append((P.edges[h[0]][tw[1]], tw))
        for a, (u, hu) in enumerate(corners):
            d = _distances(P, u)
            for v, hv in corners[a + 1:]:
                if d[v] >= 3:
                    out.append(((u, hu), (v, hv)))
    return out


def _with_chord(P: PlaneGraph, chord, sign: int) -> PlaneGraph:
    (u, hu), (v, hv) = chord
    e = len(P.edges)
    rot = [list(r) for r in P.rotation]
    rot[u].insert(rot[u].index(hu) + 1, (e, 0))
    rot[v].insert(rot[v].index(hv) + 1, (e, 1))
    return PlaneGraph(P.n_vertices, P.edges + ((u, v, sign),), tuple(tuple(r) for r in rot))


def random_almost_alternating(seed, n_crossings: int) -> tuple[LinkDiagram, int]:
    """A random almost alternating diagram and its intended dealternator.

    One edge of an alternating medial diagram has the opposite sign; the
    crossing with the same index is the dealternator.  Most draws place
    that edge as a chord between far-apart vertices of a face, which is
    where the A-side region conditions can hold; the rest flip a random
    edge.  Half of the draws are mirrored.
    """
    rng = random.Random(seed)
    P = None
    if n_crossings >= 4 and rng.random() < 0.8:
        for _ in range(20):
            Q = _nontrivial_graph(rng, n_crossings - 1, -1)
            chords = _far_chords(Q)
            if chords:
                P = _with_chord(Q, rng.choice(chords), 1)
                e = n_crossings - 1
                break
    if P is None:
        Q = _nontrivial_graph(rng, n_crossings, -1)
        good = _isolated_edges(Q)
        e = rng.choice(good) if good else rng.randrange(len(Q.edges))
        edges = list(Q.edges)
        u, v, s = edges[e]
        edges[e] = (u, v, -s)
        P = PlaneGraph(Q.n_vertices, tuple(edges), Q.rotation)
    D = medial_diagram(P)
    if rng.random() < 0.5:
        D = mirror(D)
    return D, e + 1


def random_medial(seed, n_crossings: int, n_flips: int) -> LinkDiagram:
    """Medial diagram of a random bridgeless plane graph with ``n_flips`` edges of the opposite sign."""
    rng = random.Random(seed)
    P = _nontrivial_graph(rng, n_crossings, -1)
    edges = list(P.edges)
    for e in rng.sample(range(len(edges)), min(n_flips, len(edges))):
        u, v, s = edges[e]
        edges[e] = (u, v, -s)
    return medial_diagram(PlaneGraph(P.n_vertices, tuple(edges), P.rotation))
