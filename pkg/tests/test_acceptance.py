"""One test per acceptance criterion, each at its stated tolerance and time limit."""

from __future__ import annotations

import time

import pytest

from khturaev import catalog
from khturaev.catalog import _l6n1_graph
from khturaev.classify import classify_diagram, dealternator_candidates, is_alternating
from khturaev.diagram import medial_diagram
from khturaev.khovanov import extremal_profile, genus_two_obstruction, shifted_homology, unshifted_homology, verify_theorem_main
from khturaev.render import parse_table
from khturaev.verify import run_suite

L6N1_TABLE = """
j\\i | 1 | 2 | 3 | 4   | 5
----+---+---+---+-----+--
  9 |   |   |   |     | 2
  7 |   |   |   | 1   | 3
  5 |   |   |   | 1_2 | 1
  3 |   |   | 1 |     |
  1 | 1 |   |   |     |
 -1 | 1 |   |   |     |
"""

KNOT14_TABLE = """
j\\i | -2 | -1  | 0 | 1     | 2     | 3     | 4     | 5     | 6     | 7      | 8
----+----+-----+---+-------+-------+-------+-------+-------+-------+--------+----
 19 |    |     |   |       |       |       |       |       |       |        | 2
 17 |    |     |   |       |       |       |       |       |       | 1      | 2_2
 15 |    |     |   |       |       |       |       |       | 2     | 2, 1_2 |
 13 |    |     |   |       |       |       | 1     | 3     | 1,2_2 |        |
 11 |    |     |   |       |       |       | 1,1_2 | 2,3_2 |       |        |
  9 |    |     |   |       | 1     | 4     | 3,1_2 |       |       |        |
  7 |    |     |   | 1     | 1,1_2 | 1,3_2 |       |       |       |        |
  5 |    |     |   | 1,1_2 | 3,1_2 |       |       |       |       |        |
  3 |    | 1   | 2 | 1     |       |       |       |       |       |        |
  1 |    | 1_2 | 1 |       |       |       |       |       |       |        |
 -1 | 1  |     |   |       |       |       |       |       |       |        |
"""


def _suite(criterion, label, name, limit=None, **kw):
    t0 = time.perf_counter()
    rep = run_suite(name, **kw)
    dt = time.perf_counter() - t0
    ok = rep.passed and (limit is None or dt < limit)
    budget = f" (limit {limit:.0f}s)" if limit else ""
    criterion(label, ok, f"{rep.line()} in {dt:.1f}s{budget}")
    return ok


def test_01_complex_validity(criterion):
    assert _suite(criterion, "1 complex validity", "complex", limit=120, max_crossings=12, n_random=200)


def test_02_euler_oracle(criterion):
    assert _suite(criterion, "2 Euler oracle", "euler", limit=300, max_crossings=12)


def test_03_l6n1_golden(criterion):
    t0 = time.perf_counter()
    D = medial_diagram(_l6n1_graph())
    H = unshifted_homology(D)
    dt = time.perf_counter() - t0
    ok = D.c == 7 and H == parse_table(L6N1_TABLE) and dt < 10
    criterion("3 seven-crossing golden table", ok, f"seven-crossing medial diagram, exact match in {dt:.2f}s (limit 10s)")
    assert ok
    assert H.torsion(4, 5) == (2,)


@pytest.mark.slow
def test_04_knot14_golden(criterion):
    D = catalog.get("knot14-genus-two")
    t0 = time.perf_counter()
    H = shifted_homology(D, jobs=4)
    dt = time.perf_counter() - t0
    P = extremal_profile(H)
    match = H == parse_table(KNOT14_TABLE)
    obstructed = genus_two_obstruction(H)
    a, b = verify_theorem_main(H, "A"), verify_theorem_main(H, "B")
    ok = D.c == 14 and match and obstructed and dt < 600
    criterion(
        "4 fourteen-crossing golden table",
        ok,
        f"c=14, exact match={match}, obstruction={obstructed}, "
        f"A stmt3={a.stmt3.passed}, B stmt1={b.stmt1.passed}, {dt:.1f}s (limit 600s)",
    )
    assert ok
    assert (P.j_min, P.j_max, P.i_min, P.i_max) == (-1, 19, -2, 8)
    assert not a.stmt3.passed and not b.stmt1.passed


def test_05_reidemeister(criterion):
    assert _suite(criterion, "5 Reidemeister shifts", "reidemeister", limit=300, n_random=100)


def test_06_mirror(criterion):
    assert _suite(criterion, "6 mirror duality", "mirror", max_crossings=10)


def test_07_theorem_main(criterion):
    ok = _suite(criterion, "7 extremal statements", "thm-main", max_crossings=10)
    for name in ("l6n1", "l6n1-mirror", "a-not-b"):
        D = catalog.get(name)
        assert classify_diagram(D).a_side or classify_diagram(D).b_side
    assert ok


def test_08_diagonals(criterion):
    a = _suite(criterion, "8a diagonal bound", "diagonal", max_crossings=10)
    b = _suite(criterion, "8b alternating thinness", "thin", max_crossings=10)
    assert a and b


def test_09_vanishing(criterion):
    assert _suite(criterion, "9 vanishing near the all-A corner", "vanishing", max_crossings=10)


def test_10_concordance(criterion):
    a = _suite(criterion, "10a cycle parity", "parity", max_crossings=12)
    b = _suite(criterion, "10b s consistency", "sinv", max_crossings=10)
    c = _suite(criterion, "10c no two negative", "no2neg", n_random=500)
    assert a and b and c


def test_11_les(criterion):
    assert _suite(criterion, "11 long exact sequence", "les", limit=600, max_crossings=8)


def test_named_almost_alternating_diagrams_exist():
    for name in ("l6n1", "a-not-b"):
        D = catalog.get(name)
        assert not is_alternating(D) and dealternator_candidates(D)
