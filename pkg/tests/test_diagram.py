from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from khturaev import catalog
from khturaev.classify import dealternator_candidates, is_alternating
from khturaev.diagram import (
    PlaneGraph,
    change_crossing,
    checkerboard_graphs,
    crossing_signs,
    faces,
    medial_diagram,
    mirror,
    parse_pd,
    perturb,
    resolve,
    to_pd_text,
)
from khturaev.errors import BadCrossing, DisconnectedDiagram, EmbeddingError, ParseError, ValidationError
from khturaev.states import state_counts


def _nx(P: PlaneGraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(range(P.n_vertices))
    for u, v, s in P.edges:
        G.add_edge(u, v, sign=s)
    return G


def isomorphic(P: PlaneGraph, Q: PlaneGraph) -> bool:
    return nx.is_isomorphic(_nx(P), _nx(Q), edge_match=nx.algorithms.isomorphism.categorical_multiedge_match("sign", 0))


class TestParse:
    def test_trefoil_counts(self, trefoil):
        assert (trefoil.c, trefoil.mu) == (3, 1)

    def test_circle_record(self):
        D = parse_pd("O 1")
        assert (D.c, D.mu) == (0, 1)

    @pytest.mark.parametrize("text", ["X 1 2 3", "Y 1 2 3 4", "X 1 2 a 4", ""])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_pd(text)

    def test_label_multiplicity(self):
        with pytest.raises(ValidationError):
            parse_pd("X 1 1 2 3")

    def test_comments_and_brackets(self, trefoil):
        D = parse_pd("# trefoil\nX[1,4,2,5]\nX[3,6,4,1] ; X[5,2,6,3]  # done")
        assert D == trefoil

    def test_split_rejected(self):
        with pytest.raises(DisconnectedDiagram):
            parse_pd("O 1 ; O 2")

    def test_serializer_round_trip(self, small_catalog):
        for D in small_catalog.values():
            assert parse_pd(to_pd_text(D)) == parse_pd(to_pd_text(parse_pd(to_pd_text(D))))
            assert crossing_signs(parse_pd(to_pd_text(D))) == crossing_signs(D)


class TestFaces:
    def test_unknot(self, unknot):
        F = faces(unknot)
        assert sorted(F.coloring) == ["black", "white"]

    def test_euler_count(self, small_catalog):
        for D in small_catalog.values():
            if D.c:
                assert len(faces(D).faces) == D.c + 2

    def test_coloring_proper(self, small_catalog):
        for D in small_catalog.values():
            F = faces(D)
            for i in range(D.c):
                cols = [F.color_of_corner(i, k) for k in range(4)]
                assert cols.count("white") == 2
                assert all(cols[k] != cols[(k + 1) % 4] for k in range(4))

    def test_disconnected(self):
        with pytest.raises(DisconnectedDiagram):
            faces(parse_pd("O 1 ; O 2", allow_split=True))


class TestCheckerboard:
    def test_trefoil(self, trefoil):
        w, b = checkerboard_graphs(trefoil)
        sizes = sorted([(g.n_vertices, len(g.edges)) for g in (w, b)])
        assert sizes == [(2, 3), (3, 3)]

    def test_unknot(self, unknot):
        for g in checkerboard_graphs(unknot):
            assert (g.n_vertices, g.edges) == (1, ())

    def test_kink_has_loop_and_bridge(self):
        w, b = checkerboard_graphs(catalog.get("unknot-kink+"))
        kinds = sorted("loop" if g.edges[0][0] == g.edges[0][1] else "bridge" for g in (w, b))
        assert kinds == ["bridge", "loop"]

    def test_dual_counts(self, small_catalog):
        for D in small_catalog.values():
            w, b = checkerboard_graphs(D)
            assert len(w.edges) == len(b.edges) == D.c
            if D.c:
                assert w.n_vertices + b.n_vertices == D.c + 2


class TestMedial:
    def test_single_edge(self):
        D = medial_diagram(PlaneGraph.from_edge_list(2, [(0, 1, 1)]))
        assert (D.c, D.mu) == (1, 1)

    def test_triangle_is_trefoil(self):
        D = medial_diagram(PlaneGraph.from_edge_list(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]))
        assert D.c == 3 and D.mu == 1 and is_alternating(D)
        assert sorted(state_counts(D)) == [2, 3]

    def test_not_spherical(self):
        # K4 with a rotation that does not close up on the sphere
        edges = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]
        rot = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]]
        P = PlaneGraph.from_edge_list(4, edges, rot)
        if not P.is_spherical():
            with pytest.raises(EmbeddingError):
                medial_diagram(P)

    def test_round_trip_catalog(self, small_catalog):
        for name, D in small_catalog.items():
            if D.c == 0:
                continue
            b = checkerboard_graphs(D)[1]
            assert isomorphic(checkerboard_graphs(medial_diagram(b))[1], b), name

    @given(st.integers(0, 10_000), st.integers(2, 9))
    def test_round_trip_random(self, seed, n):
        import random

        P = catalog.random_plane_graph(random.Random(seed), n)
        D = medial_diagram(P)
        assert isomorphic(checkerboard_graphs(D)[1], P)

    def test_base_case_diagram(self):
        D = catalog.get("l6n1")
        assert D.c == 7 and not is_alternating(D)
        assert 7 in dealternator_candidates(D)


class TestTransformations:
    def test_mirror_involution(self, small_catalog):
        for D in small_catalog.values():
            assert mirror(mirror(D)) == D
            cp, cm = crossing_signs(D)
            assert crossing_signs(mirror(D)) == (cm, cp)
            assert state_counts(mirror(D)) == state_counts(D)[::-1]

    def test_mirror_unknot(self, unknot):
        assert mirror(unknot) == unknot

    def test_trefoil_signs(self, trefoil):
        # hand trace of X 1 4 2 5: under 1 -> 2, over 5 -> 4 runs right to left
        assert crossing_signs(trefoil) == (0, 3)

    def test_change_crossing(self, small_catalog):
        for D in small_catalog.values():
            for k in range(1, D.c + 1):
                assert change_crossing(change_crossing(D, k), k) == D

    @pytest.mark.parametrize("k", [0, 4])
    def test_bad_crossing(self, trefoil, k):
        with pytest.raises(BadCrossing):
            change_crossing(trefoil, k)
        with pytest.raises(BadCrossing):
            resolve(trefoil, k, "A")

    def test_dealternator_change_alternates(self):
        for name in ("l6n1", "a-not-b", "knot-5-2"):
            D = catalog.get(name)
            for k in dealternator_candidates(D):
                assert is_alternating(change_crossing(D, k))

    def test_resolve_kink(self):
        K = catalog.get("unknot-kink+")
        assert sorted(resolve(K, 1, m).mu for m in "AB") == [1, 2]

    def test_resolve_commutes(self, small_catalog):
        for D in small_catalog.values():
            for k in range(1, D.c):
                for m1 in "AB":
                    for m2 in "AB":
                        a = resolve(resolve(D, k + 1, m2), k, m1)
                        b = resolve(resolve(D, k, m1), k, m2)
                        assert a.c == b.c == D.c - 2
                        assert state_counts(a) == state_counts(b)

    def test_perturb_zero(self, trefoil):
        D, ledger = perturb(trefoil, 0, 0)
        assert D == trefoil and ledger == []

    @given(st.integers(0, 10_000), st.integers(1, 4))
    def test_perturb_ledger(self, seed, n):
        D0 = catalog.get("trefoil-right")
        D, ledger = perturb(D0, seed, n)
        added = {"R1+": (1, 0), "R1-": (0, 1), "R2": (1, 1)}
        cp = crossing_signs(D0)[0] + sum(added[m.kind][0] for m in ledger)
        cm = crossing_signs(D0)[1] + sum(added[m.kind][1] for m in ledger)
        assert crossing_signs(D) == (cp, cm)
        assert len(ledger) == n
