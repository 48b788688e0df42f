from __future__ import annotations

import random

import pytest

from khturaev import catalog
from khturaev.classify import dealternator_candidates, is_alternating
from khturaev.diagram import crossing_signs, mirror
from khturaev.errors import KhError


def test_required_entries():
    required = {"unknot", "unknot-kink+", "unknot-kink-", "trefoil-right", "trefoil-left", "figure-eight",
                "hopf+", "hopf-", "t24", "l6n1", "l6n1-parent", "knot14-genus-two", "adequate-trefoil"}
    assert required <= set(catalog.names())


def test_descriptions():
    for n in catalog.names():
        assert catalog.describe(n)


def test_unknown():
    with pytest.raises(KhError):
        catalog.get("no-such-knot")


def test_lookup_filters():
    knots = catalog.lookup(8, knots_only=True)
    assert all(D.mu == 1 and D.c <= 8 for D in knots.values())
    assert "hopf+" not in knots


def test_chirality():
    assert crossing_signs(catalog.get("trefoil-right")) == (3, 0)
    assert catalog.get("trefoil-left") == mirror(catalog.get("trefoil-right"))
    assert catalog.get("l6n1-mirror") == mirror(catalog.get("l6n1"))


def test_resolve_input(tmp_path, trefoil):
    p = tmp_path / "t.pd"
    p.write_text("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n")
    assert catalog.resolve_input(str(p)) == trefoil
    assert catalog.resolve_input("catalog:unknot") == catalog.get("unknot")


def test_random_plane_graph_spherical():
    rng = random.Random(1)
    for n in range(1, 15):
        P = catalog.random_plane_graph(rng, n)
        assert P.is_spherical() and len(P.edges) == n


@pytest.mark.parametrize("seed", range(20))
def test_random_almost_alternating(seed):
    D, k = catalog.random_almost_alternating(seed, 7)
    assert not is_alternating(D)
    assert k in dealternator_candidates(D)


@pytest.mark.parametrize("seed", range(10))
def test_random_alternating(seed):
    assert is_alternating(catalog.random_alternating(seed, 6))


def test_seed_determinism():
    assert catalog.random_medial(5, 8, 2) == catalog.random_medial(5, 8, 2)
