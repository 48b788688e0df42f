from __future__ import annotations

from fractions import Fraction

import pytest

from khturaev import catalog
from khturaev.concordance import (
    four_genus_bounds,
    hypotheses,
    i0_support,
    nakamura_four_genus,
    rasmussen_s,
    s_consistency_check,
    seifert_genus_diagram,
    verify_no_two_negative,
)
from khturaev.diagram import mirror
from khturaev.errors import HypothesisNotMet, NotAKnot, NotPositiveDiagram
from khturaev.khovanov import shifted_homology
from khturaev.verify import almost_alternating_pool, medial_pool


def _qualifying(count=300, max_c=9):
    out = []
    for D, _ in almost_alternating_pool(0, count, max_c):
        if D.mu != 1:
            continue
        try:
            out.append((D, rasmussen_s(D)))
        except HypothesisNotMet:
            pass
    return out


@pytest.fixture(scope="module")
def qualifying():
    return _qualifying()


class TestS:
    def test_9_43(self):
        r = rasmussen_s(catalog.get("knot-9-43"))
        # case 1 with c = 9, s_A = 4
        assert (r.value, r.case_used) == (4, 1)

    def test_mirror_negates(self):
        r = rasmussen_s(mirror(catalog.get("knot-9-43")))
        assert (r.value, r.case_used) == (-4, 3)

    def test_case_formulas(self, qualifying):
        cases = set()
        for D, r in qualifying:
            h = hypotheses(D)
            c, sa, sb = h["c"], h["s_A"], h["s_B"]
            expected = {1: c - sa - 1, 2: c - sa - 2, 3: -c + sb + 1, 4: -c + sb + 2}
            for k, live in h["cases"].items():
                if live:
                    assert r.all_values[k] == expected[k]
            assert r.value == expected[r.case_used]
            cases.add(r.case_used)
        assert {2, 4} <= cases

    def test_alternating(self, trefoil):
        with pytest.raises(HypothesisNotMet) as e:
            rasmussen_s(trefoil)
        assert set(e.value.failed) == {1, 2, 3, 4}

    def test_link(self):
        with pytest.raises(NotAKnot):
            rasmussen_s(catalog.get("l6n1"))


class TestConsistency:
    def test_qualifying(self, qualifying):
        for D, r in qualifying[:25]:
            assert s_consistency_check(D)

    def test_corrupted(self):
        D = catalog.get("knot-9-43")
        s = rasmussen_s(D).value
        assert s_consistency_check(D, s=s)
        assert not s_consistency_check(D, s=s + 2)

    def test_support_reported(self):
        H = shifted_homology(catalog.get("knot-9-43"), "Q")
        assert set(i0_support(H)) >= {3, 5}

    def test_unknot(self, unknot):
        with pytest.raises(HypothesisNotMet):
            s_consistency_check(unknot)


class TestGenus:
    def test_seifert(self, unknot, trefoil):
        assert seifert_genus_diagram(unknot) == 0
        assert seifert_genus_diagram(trefoil) == 1

    def test_seifert_link(self):
        with pytest.raises(NotAKnot):
            seifert_genus_diagram(catalog.get("hopf+"))

    def test_nakamura(self, unknot):
        assert nakamura_four_genus(unknot) == 0
        assert nakamura_four_genus(catalog.get("trefoil-right")) == 1
        assert nakamura_four_genus(catalog.get("t34")) == 3
        assert nakamura_four_genus(catalog.get("hopf+")) == 0
        assert nakamura_four_genus(catalog.get("t24")) == 1

    def test_nakamura_positive_knot_matches_seifert(self):
        for name in ("trefoil-right", "t25", "t34"):
            D = catalog.get(name)
            assert nakamura_four_genus(D) == seifert_genus_diagram(D)

    def test_nakamura_mixed(self):
        with pytest.raises(NotPositiveDiagram):
            nakamura_four_genus(catalog.get("figure-eight"))

    def test_bounds_9_43(self):
        b = four_genus_bounds(catalog.get("knot-9-43"))
        assert (b.g4_lower, b.g4_upper) == (2, 3)
        assert b.g4_upper <= b.g3_diagram

    def test_bounds_shape(self, qualifying):
        for D, r in qualifying:
            b = four_genus_bounds(D)
            assert b.g4_lower == Fraction(abs(r.value), 2)
            assert b.g4_upper == b.g4_lower + 1
            assert b.g4_lower <= b.g3_diagram

    def test_bounds_s_zero(self, qualifying):
        zero = [D for D, r in qualifying if r.value == 0]
        for D in zero[:3]:
            b = four_genus_bounds(D)
            assert (b.g4_lower, b.g4_upper) == (0, 1)

    def test_bounds_non_qualifying(self, trefoil):
        with pytest.raises(HypothesisNotMet):
            four_genus_bounds(trefoil)


class TestNoTwoNegative:
    def test_catalog(self):
        assert verify_no_two_negative(catalog.lookup().values()) == []

    def test_empty(self):
        assert verify_no_two_negative([]) == []

    def test_b_mirrors(self):
        pool = [mirror(D) for D in medial_pool(3, 80, 9)]
        assert verify_no_two_negative([D for D in pool if D.mu == 1]) == []
