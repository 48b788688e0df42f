"""Alternating, almost alternating and Turaev-genus-one certificates for diagrams."""

from __future__ import annotations

import dataclasses
from typing import NamedTuple

from .diagram import LinkDiagram, change_crossing, faces
from .errors import AlreadyAlternating, AlternatingInput, NotADealternator
from .states import diagram_turaev_genus, is_A_adequate, is_B_adequate

__all__ = [
    "RegionQuad",
    "SideCertificate",
    "TuraevOneCertificate",
    "is_alternating",
    "dealternator_candidates",
    "region_quad",
    "almost_alternating_conditions",
    "almost_alternating_type",
    "classify_diagram",
]


def is_alternating(D: LinkDiagram) -> bool:
    """Over- and under-passages alternate along every component."""
    for comp in D.passages:
        kinds = [p in (1, 3) for _, p in comp]
        n = len(kinds)
        if any(kinds[t] == kinds[(t + 1) % n] for t in range(n)):
            return False
    return True


def dealternator_candidates(D: LinkDiagram) -> list[int]:
    """Crossings whose change makes the diagram alternating."""
    if is_alternating(D):
        raise AlreadyAlternating("the diagram is already alternating")
    return [k for k in range(1, D.c + 1) if is_alternating(change_crossing(D, k))]


class RegionQuad(NamedTuple):
    """Face indices around a dealternator: ``u`` joined by its A-smoothing, ``v`` by its B-smoothing."""

    u1: int
    u2: int
    v1: int
    v2: int


def region_quad(D: LinkDiagram, k: int):
    """Faces around crossing ``k`` with ``v1, v2`` colored black.

    Returns ``(quad, face decomposition)``.
    """
    i = D.check_crossing(k)
    F = faces(dataclasses.replace(D, black_corner=(i, 0)))
    cf = F.corner_faces[i]
    return RegionQuad(cf[1], cf[3], cf[0], cf[2]), F


def _faces_at(F, i: int) -> set[int]:
    return set(F.corner_faces[i])


def _sharing(F, f: int, g: int, skip: int) -> set[int]:
    """Crossings (other than ``skip``) whose corners include both faces."""
    return {
        i for i in range(len(F.corner_faces)) if i != skip and f in F.corner_faces[i] and g in F.corner_faces[i]
    }


def almost_alternating_conditions(D: LinkDiagram, k: int) -> dict[str, bool]:
    """Evaluate the region conditions ``1``, ``2``, ``3A`` and ``3B`` at dealternator ``k``."""
    if is_alternating(D) or k not in dealternator_candidates(D):
        raise NotADealternator(f"crossing {k} is not a dealternator")
    i = k - 1
    q, F = region_quad(D, k)
    cond1 = q.u1 != q.u2 and q.v1 != q.v2
    cond2 = not _sharing(F, q.u1, q.u2, i) and not _sharing(F, q.v1, q.v2, i)

    def third(color: str, a: int, b: int) -> bool:
        for w, col in enumerate(F.coloring):
            if col != color or w in (a, b):
                continue
            touches_a = any(
                w in F.corner_faces[x] and a in F.corner_faces[x] for x in range(D.c) if x != i
            )
            touches_b = any(
                w in F.corner_faces[x] and b in F.corner_faces[x] for x in range(D.c) if x != i
            )
            if touches_a and touches_b:
                return False
        return True

    return {
        "1": cond1,
        "2": cond2,
        "3A": third("white", q.u1, q.u2),
        "3B": third("black", q.v1, q.v2),
    }


def almost_alternating_type(D: LinkDiagram, k: int) -> str:
    """``"A"``, ``"B"``, ``"both"`` or ``"neither"`` at dealternator ``k``."""
    cond = almost_alternating_conditions(D, k)
    base = cond["1"] and cond["2"]
    a, b = base and cond["3A"], base and cond["3B"]
    return {(True, True): "both", (True, False): "A", (False, True): "B"}.get((a, b), "neither")


class SideCertificate(NamedTuple):
    """``kind`` is ``"almost-alternating"`` (with its dealternator) or ``"adequate-genus-one"``."""

    kind: str
    dealternator: int | None = None


class TuraevOneCertificate(NamedTuple):
    a_side: SideCertificate | None
    b_side: SideCertificate | None

    def to_json(self) -> dict:
        def side(s):
            if s is None:
                return None
            out = {"kind": s.kind}
            if s.dealternator is not None:
                out["dealternator"] = s.dealternator
            return out

        return {"alternating": False, "a_side": side(self.a_side), "b_side": side(self.b_side)}


def classify_diagram(D: LinkDiagram) -> TuraevOneCertificate:
    """Diagram-level evidence for the A and B Turaev-genus-one conditions.

    An adequate genus-one certificate takes precedence over an almost
    alternating one when both are available on the same side.
    """
    if is_alternating(D):
        raise AlternatingInput("the diagram is alternating")
    genus_one = diagram_turaev_genus(D) == 1
    a = b = None
    if genus_one and is_A_adequate(D):
        a = SideCertificate("adequate-genus-one")
    if genus_one and is_B_adequate(D):
        b = SideCertificate("adequate-genus-one")
    if a is None or b is None:
        for k in dealternator_candidates(D):
            t = almost_alternating_type(D, k)
            if a is None and t in ("A", "both"):
                a = SideCertificate("almost-alternating", k)
            if b is None and t in ("B", "both"):
                b = SideCertificate("almost-alternating", k)
    return TuraevOneCertificate(a, b)
