"""Closed-form Rasmussen invariants and genus bounds for qualifying diagrams."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .classify import almost_alternating_type, dealternator_candidates, is_alternating
from .diagram import LinkDiagram, crossing_signs
from .errors import HypothesisNotMet, NotAKnot, NotPositiveDiagram
from .khovanov import BigradedGroups, shifted_homology
from .states import diagram_turaev_genus, is_A_adequate, is_B_adequate, seifert_state, state_counts

__all__ = [
    "SInvariantResult",
    "GenusBounds",
    "hypotheses",
    "rasmussen_s",
    "i0_support",
    "s_consistency_check",
    "seifert_genus_diagram",
    "nakamura_four_genus",
    "four_genus_bounds",
    "verify_no_two_negative",
]


class SInvariantResult(NamedTuple):
    value: int
    case_used: int
    hypothesis_witness: dict
    all_values: dict


class GenusBounds(NamedTuple):
    g3_diagram: int
    g4_lower: Fraction
    g4_upper: Fraction
    s: int
    case: int
    nakamura: Fraction | None = None


def _require_knot(D: LinkDiagram):
    if D.mu != 1:
        raise NotAKnot(f"the diagram has {D.mu} components")


def _almost_alt_sides(D: LinkDiagram) -> dict[str, list[int]]:
    sides = {"A": [], "B": []}
    if is_alternating(D):
        return sides
    for k in dealternator_candidates(D):
        t = almost_alternating_type(D, k)
        if t in ("A", "both"):
            sides["A"].append(k)
        if t in ("B", "both"):
            sides["B"].append(k)
    return sides


def hypotheses(D: LinkDiagram) -> dict:
    """Diagram facts behind the four closed-form cases, and which cases hold."""
    cp, cm = crossing_signs(D)
    sa, sb = state_counts(D)
    g = diagram_turaev_genus(D)
    aa = _almost_alt_sides(D)
    facts = {
        "c": D.c,
        "c_plus": cp,
        "c_minus": cm,
        "s_A": sa,
        "s_B": sb,
        "turaev_genus": g,
        "A_adequate": is_A_adequate(D),
        "B_adequate": is_B_adequate(D),
        "A_almost_alternating": aa["A"],
        "B_almost_alternating": aa["B"],
    }
    facts["cases"] = {
        1: facts["A_adequate"] and g == 1 and cm == 2,
        2: bool(aa["A"]) and cm == 3,
        3: facts["B_adequate"] and g == 1 and cp == 2,
        4: bool(aa["B"]) and cp == 3,
    }
    return facts


def _case_value(case: int, c: int, sa: int, sb: int) -> int:
    return {1: c - sa - 1, 2: c - sa - 2, 3: -c + sb + 1, 4: -c + sb + 2}[case]


def rasmussen_s(D: LinkDiagram) -> SInvariantResult:
    """``s`` from the first applicable closed form; all applicable forms must agree."""
    _require_knot(D)
    facts = hypotheses(D)
    live = [k for k, ok in facts["cases"].items() if ok]
    if not live:
        failed = {
            1: "needs A-adequate, Turaev genus one, two negative crossings",
            2: "needs A-almost alternating with three negative crossings",
            3: "needs B-adequate, Turaev genus one, two positive crossings",
            4: "needs B-almost alternating with three positive crossings",
        }
        raise HypothesisNotMet("no closed-form case applies to this diagram", failed)
    values = {k: _case_value(k, D.c, facts["s_A"], facts["s_B"]) for k in live}
    assert len(set(values.values())) == 1, f"closed forms disagree: {values}"
    first = live[0]
    witness = {k: v for k, v in facts.items() if k != "cases"}
    return SInvariantResult(values[first], first, witness, values)


def i0_support(H: BigradedGroups) -> list[int]:
    """Polynomial gradings ``j`` with ``Kh^{0,j}`` nonzero."""
    return sorted(j for (i, j) in H.support() if i == 0)


def s_consistency_check(D: LinkDiagram, *, s: int | None = None, H: BigradedGroups | None = None) -> bool:
    """Whether rational ``Kh^{0, s - 1}`` and ``Kh^{0, s + 1}`` are both nonzero.

    ``s`` defaults to :func:`rasmussen_s`; pass a value to test another.
    """
    if s is None:
        s = rasmussen_s(D).value
    if H is None:
        H = shifted_homology(D, "Q")
    H = H.rational()
    return H.rank(0, s - 1) > 0 and H.rank(0, s + 1) > 0


def seifert_genus_diagram(D: LinkDiagram) -> int:
    """Genus of the Seifert-algorithm surface, ``(1 + c - f) / 2``."""
    _require_knot(D)
    twice = 1 + D.c - seifert_state(D)
    assert twice % 2 == 0 and twice >= 0
    return twice // 2


def nakamura_four_genus(D: LinkDiagram) -> Fraction:
    """``(2 - mu - f + c) / 2`` for a diagram with only positive crossings."""
    if any(s < 0 for s in D.signs):
        raise NotPositiveDiagram("every crossing must be positive")
    return Fraction(2 - D.mu - seifert_state(D) + D.c, 2)


def four_genus_bounds(D: LinkDiagram) -> GenusBounds:
    r = rasmussen_s(D)
    g3 = seifert_genus_diagram(D)
    lower = Fraction(abs(r.value), 2)
    upper = lower + 1
    # Seifert's surface already realizes the upper bound in these cases
    seifert_path = r.case_used in (1, 3)
    if r.case_used in (2, 4):
        deal = r.hypothesis_witness["A_almost_alternating" if r.case_used == 2 else "B_almost_alternating"]
        want = -1 if r.case_used == 2 else 1
        seifert_path = any(D.signs[k - 1] == want for k in deal)
    if seifert_path:
        assert upper <= g3, "Seifert genus of the diagram is below the upper bound"
    nak = nakamura_four_genus(D) if all(s > 0 for s in D.signs) else None
    return GenusBounds(g3, lower, upper, r.value, r.case_used, nak)


def verify_no_two_negative(catalog: Iterable[LinkDiagram]) -> list[LinkDiagram]:
    """Knots in ``catalog`` that are A-almost alternating with exactly two negative crossings."""
    bad = []
    for D in catalog:
        if D.mu != 1 or crossing_signs(D)[1] != 2 or is_alternating(D):
            continue
        if _almost_alt_sides(D)["A"]:
            bad.append(D)
    return bad
