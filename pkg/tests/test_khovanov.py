from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khturaev import catalog
from khturaev.classify import dealternator_candidates, region_quad
from khturaev.diagram import LinkDiagram, mirror, perturb
from khturaev.errors import CapExceeded, EmptyHomology
from khturaev.intlinalg import HomologySummand, SparseIntMat
from khturaev.khovanov import (
    BigradedGroups,
    EnhancedState,
    differential_matrix,
    enumerate_enhanced,
    extremal_profile,
    genus_two_obstruction,
    graded_euler,
    incidence,
    les_exactness,
    shifted_homology,
    unshifted_homology,
    verify_theorem_main,
)
from khturaev.laurent import LaurentPoly
from khturaev.render import parse_table
from khturaev.states import cube, euler_oracle, state_counts
from khturaev.verify import almost_alternating_pool, lemma_path2_applies

Z = HomologySummand

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


def _all(D):
    cx_states = []
    for i in range(D.c + 1):
        for j in range(-D.c - 2 * D.c - 2, 3 * D.c + 3):
            cx_states += enumerate_enhanced(D, i, j)
    return cx_states


class TestEnumeration:
    def test_unknot(self, unknot):
        assert len(enumerate_enhanced(unknot, 0, 1)) == 1
        assert enumerate_enhanced(unknot, 0, 0) == []

    def test_total_count(self, small_catalog):
        for D in list(small_catalog.values())[:12]:
            cb = cube(D)
            expected = sum(2 ** cb.count(w) for w in range(1 << D.c))
            assert len(_all(D)) == expected

    def test_gradings(self, trefoil):
        for i in range(4):
            for j in range(-6, 8):
                for S in enumerate_enhanced(trefoil, i, j):
                    assert (S.i, S.j) == (i, j)
                    assert (S.j - S.i - len(S.labels)) % 2 == 0


class TestIncidence:
    def test_two_letters(self, trefoil):
        S = enumerate_enhanced(trefoil, 0, 3)[0]
        for S2 in enumerate_enhanced(trefoil, 2, 3):
            assert incidence(trefoil, S, S2) == 0

    def test_rules_and_signs(self):
        D = catalog.get("figure-eight")
        seen = set()
        for i in range(D.c):
            for j in range(-D.c - 4, D.c + 5):
                for S in enumerate_enhanced(D, i, j):
                    for S2 in enumerate_enhanced(D, i + 1, j):
                        v = incidence(D, S, S2)
                        if not v:
                            continue
                        t = (S.word ^ S2.word).bit_length() - 1
                        earlier = bin(S.word & ((1 << t) - 1)).count("1")
                        assert v == (-1) ** earlier
                        n1, n2 = len(S.labels), len(S2.labels)
                        seen.add(("merge" if n2 < n1 else "split", earlier % 2))
        assert {("merge", 0), ("merge", 1), ("split", 0), ("split", 1)} <= seen

    def test_minus_minus_merge_vanishes(self):
        D = catalog.get("hopf+")
        # all-A state of the positive Hopf diagram has circles {a}, {b} merged by either crossing
        cb = cube(D)
        assert (cb.count(0), cb.count(1)) == (2, 1)
        S = EnhancedState(0, (-1, -1))
        for lab in (1, -1):
            assert incidence(D, S, EnhancedState(1, (lab,))) == 0
        assert incidence(D, EnhancedState(0, (1, 1)), EnhancedState(1, (1,))) == 1

    def test_matrix_matches_direct_rule(self):
        for name in ("trefoil-right", "figure-eight", "hopf-", "unknot-kink-"):
            D = catalog.get(name)
            for i in range(D.c):
                for j in range(-3 * D.c - 2, 3 * D.c + 3):
                    rows, cols = enumerate_enhanced(D, i + 1, j), enumerate_enhanced(D, i, j)
                    if not rows or not cols:
                        continue
                    M = differential_matrix(D, i, j)
                    direct = {
                        (r, c): incidence(D, S, S2)
                        for c, S in enumerate(cols)
                        for r, S2 in enumerate(rows)
                        if incidence(D, S, S2)
                    }
                    assert M.entries == direct


class TestDifferential:
    def test_unknot(self, unknot):
        assert differential_matrix(unknot, 0, 1).nnz == 0

    def test_dd_zero(self, small_catalog):
        for D in small_catalog.values():
            for j in range(-3 * D.c - 2, 3 * D.c + 3):
                for i in range(D.c - 1):
                    A, B = differential_matrix(D, i, j), differential_matrix(D, i + 1, j)
                    if A.n_rows and B.n_cols:
                        assert (B @ A).is_zero()

    def test_split_signs(self):
        """With the dealternator numbered last, d(T_k) = -S_k away from the length-two path."""
        D, k = _path2_simple_example()
        order = [x for x in range(D.c) if x != k - 1] + [k - 1]
        D2 = LinkDiagram(tuple(D.crossings[x] for x in order), tuple(D.signs[x] for x in order), D.n_free)
        q, F = region_quad(D, k)
        col = F.coloring[q.u1]
        shared = [w for w, c in enumerate(F.coloring) if c == col and w not in (q.u1, q.u2)]
        path = {
            x for x in range(D.c) if any(w in F.corner_faces[x] for w in shared)
            and (q.u1 in F.corner_faces[x] or q.u2 in F.corner_faces[x])
            and _touches_both(F, x, q, shared, k - 1)
        }
        sa = state_counts(D2)[0]
        j = 2 - sa
        cols, rows = enumerate_enhanced(D2, 1, j), enumerate_enhanced(D2, 2, j)
        M = differential_matrix(D2, 1, j)
        cb = cube(D2)
        c = D2.c
        checked = 0
        for new, old in enumerate(order[:-1]):
            if old in path:
                continue
            T = EnhancedState(1 << new, (-1,) * cb.count(1 << new))
            w = (1 << new) | (1 << (c - 1))
            S = EnhancedState(w, (-1,) * cb.count(w))
            col_entries = {r: v for (r, cc), v in M.entries.items() if cc == cols.index(T)}
            assert col_entries == {rows.index(S): -1}
            checked += 1
        assert checked >= 1


def _touches_both(F, x, q, shared, dealt):
    (w,) = [w for w in shared if _shares(F, w, q.u1, dealt) and _shares(F, w, q.u2, dealt)]
    return w in F.corner_faces[x]


def _shares(F, w, u, dealt):
    return any(w in F.corner_faces[x] and u in F.corner_faces[x] for x in range(len(F.corner_faces)) if x != dealt)


def _path2_simple_example():
    for D, _ in almost_alternating_pool(0, 60, 9):
        for k in dealternator_candidates(D):
            if not lemma_path2_applies(D, k):
                continue
            q, F = region_quad(D, k)
            col = F.coloring[q.u1]
            pairs = [frozenset(f for f in F.corner_faces[x] if F.coloring[f] == col) for x in range(D.c)]
            if len(set(pairs)) == len(pairs):
                return D, k
    raise AssertionError("no simple qualifying diagram in the pool")


class TestHomology:
    def test_unknot(self, unknot):
        assert unshifted_homology(unknot) == BigradedGroups({(0, -1): Z(1), (0, 1): Z(1)})

    def test_trefoil(self, trefoil):
        # hand computation of the 8-resolution cube (left-handed trefoil)
        expected = {(0, -1): Z(1), (0, -3): Z(1), (-2, -5): Z(1), (-2, -7): Z(0, (2,)), (-3, -9): Z(1)}
        assert shifted_homology(trefoil) == BigradedGroups(expected)
        assert shifted_homology(catalog.get("trefoil-right")) == BigradedGroups(
            {(0, 1): Z(1), (0, 3): Z(1), (2, 5): Z(1), (3, 7): Z(0, (2,)), (3, 9): Z(1)}
        )

    def test_l6n1_golden(self):
        assert unshifted_homology(catalog.get("l6n1")) == parse_table(L6N1_TABLE)

    def test_rational_matches_free(self, small_catalog):
        for D in small_catalog.values():
            assert unshifted_homology(D, "Q") == unshifted_homology(D, "Z").rational()

    def test_kink_invisible(self, unknot):
        for name in ("unknot-kink+", "unknot-kink-"):
            assert shifted_homology(catalog.get(name)) == shifted_homology(unknot)

    @given(st.integers(0, 10_000))
    def test_perturb_invariance(self, seed):
        D0 = catalog.get("trefoil-right")
        D, _ = perturb(D0, seed, 2)
        assert shifted_homology(D) == shifted_homology(D0)

    def test_mirror_rational(self, small_catalog):
        for D in small_catalog.values():
            c = D.c
            H = unshifted_homology(D, "Q")
            Hm = unshifted_homology(mirror(D), "Q")
            assert Hm == BigradedGroups({(c - i, c - j): h for (i, j), h in H.items()}, "Q")

    def test_jobs_agree(self):
        D = catalog.get("knot-5-2")
        assert unshifted_homology(D, jobs=2) == unshifted_homology(D, jobs=1)

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("KH_MAX_CROSSINGS", "4")
        with pytest.raises(CapExceeded):
            unshifted_homology(catalog.get("t25"))


class TestEuler:
    def test_unknot(self, unknot):
        assert graded_euler(shifted_homology(unknot)) == LaurentPoly({1: 1, -1: 1})

    def test_zero(self):
        assert graded_euler(BigradedGroups()) == LaurentPoly()

    def test_catalog(self, small_catalog):
        for D in small_catalog.values():
            assert graded_euler(shifted_homology(D)) == euler_oracle(D)


class TestLES:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_trefoil(self, trefoil, k):
        assert les_exactness(trefoil, k).exact

    def test_kink(self):
        for name in ("unknot-kink+", "unknot-kink-"):
            assert les_exactness(catalog.get(name), 1).exact

    def test_corrupted(self):
        D = catalog.get("figure-eight")

        def bad(D, i, j):
            M = differential_matrix(D, i, j)
            e = dict(M.entries)
            if e:
                key = min(e)
                e[key] = -e[key]
            return SparseIntMat(M.n_rows, M.n_cols, e)

        assert not les_exactness(D, 1, differential=bad).exact


class TestExtremal:
    def test_unknot(self, unknot):
        assert tuple(extremal_profile(shifted_homology(unknot))) == (-1, 1, 0, 0, -1, 1)

    def test_l6n1_golden(self):
        P = extremal_profile(unshifted_homology(catalog.get("l6n1")))
        assert (P.j_min, P.j_max, P.i_min, P.i_max) == (-1, 9, 1, 5)

    def test_empty(self):
        with pytest.raises(EmptyHomology):
            extremal_profile(BigradedGroups())


class TestTheoremMain:
    def test_unknot(self, unknot):
        H = shifted_homology(unknot)
        assert verify_theorem_main(H, "A").passed and verify_theorem_main(H, "B").passed

    def test_base_case(self):
        D = catalog.get("l6n1")
        assert verify_theorem_main(D, "A").passed
        assert verify_theorem_main(mirror(D), "B").passed
        assert not genus_two_obstruction(shifted_homology(D))

    def test_alternating_not_obstructed(self):
        for name in ("trefoil-right", "figure-eight", "t25", "knot-6-2"):
            assert not genus_two_obstruction(shifted_homology(catalog.get(name)))

    def test_obstruction_needs_both_sides(self):
        H = BigradedGroups({(0, 1): Z(1), (0, 3): Z(1), (1, 3): Z(1), (2, 5): Z(2), (2, 7): Z(2)})
        a, b = verify_theorem_main(H, "A"), verify_theorem_main(H, "B")
        assert genus_two_obstruction(H) == (not a.passed and not b.passed)
