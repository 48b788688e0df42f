"""Property suites run over the catalog and seeded random diagrams.

Each suite returns a :class:`SuiteReport`; the CLI prints them and the
acceptance tests assert on them.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import catalog
from .classify import (
    almost_alternating_type,
    classify_diagram,
    dealternator_candidates,
    is_alternating,
    region_quad,
)
from .concordance import i0_support, rasmussen_s, s_consistency_check, verify_no_two_negative
from .diagram import LinkDiagram, faces, mirror, perturb, to_pd_text
from .errors import HypothesisNotMet, NotAKnot
from .khovanov import (
    _complex,
    differential_matrix,
    genus_two_obstruction,
    graded_euler,
    les_exactness,
    shift_of,
    unshifted_homology,
    verify_theorem_main,
)
from .states import euler_oracle, gamma_cycles, girth, is_A_adequate, state_counts, state_graph, diagram_turaev_genus

__all__ = [
    "SuiteReport",
    "SUITES",
    "run_suite",
    "run_all",
    "homology",
    "random_perturbations",
    "almost_alternating_pool",
    "alternating_pool",
    "medial_pool",
    "lemma_path2_applies",
]


class SuiteReport(NamedTuple):
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None
    notes: str = ""

    def line(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.checked} checks"
        if self.notes:
            head += f" ({self.notes})"
        if self.counterexample:
            head += f"; first counterexample: {self.counterexample}"
        return head


@lru_cache(maxsize=512)
def homology(D: LinkDiagram, ring: str = "Z"):
    """Cached unshifted homology; suites share results."""
    return unshifted_homology(D, ring)


def shifted(D: LinkDiagram, ring: str = "Z"):
    return homology(D, ring).shift(*shift_of(D))


def _name(D: LinkDiagram) -> str:
    return to_pd_text(D).replace("\n", "; ")


# ---------------------------------------------------------------------------
# diagram pools


def random_perturbations(seed: int, count: int, max_crossings: int, *, base_max: int = 7):
    """``count`` triples ``(base, perturbed, ledger)`` with ``c(perturbed) <= max_crossings``."""
    rng = random.Random(seed)
    bases = [D for D in catalog.lookup(base_max).values()]
    out = []
    while len(out) < count:
        D = rng.choice(bases)
        room = max_crossings - D.c
        if room < 1:
            continue
        n = rng.randint(1, min(3, room))
        D2, ledger = perturb(D, rng.randrange(1 << 30), n)
        if D2.c <= max_crossings:
            out.append((D, D2, ledger))
    return out


def almost_alternating_pool(seed: int, count: int, max_crossings: int, *, min_crossings: int = 4):
    """Random almost alternating diagrams (with their dealternator)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_crossings, max_crossings)
        D, k = catalog.random_almost_alternating(rng.randrange(1 << 30), n)
        if not is_alternating(D):
            out.append((D, k))
    return out


def alternating_pool(seed: int, count: int, max_crossings: int):
    rng = random.Random(seed)
    return [
        catalog.random_alternating(rng.randrange(1 << 30), rng.randint(2, max_crossings)) for _ in range(count)
    ]


def medial_pool(seed: int, count: int, max_crossings: int, *, flips=(2, 2, 3)):
    """Random medial diagrams a few crossing changes away from alternating."""
    rng = random.Random(seed)
    return [
        catalog.random_medial(rng.randrange(1 << 30), rng.randint(4, max_crossings), rng.choice(flips))
        for _ in range(count)
    ]


def _catalog(max_crossings: int) -> list[tuple[str, LinkDiagram]]:
    return list(catalog.lookup(max_crossings).items())


def _is_reduced(D: LinkDiagram) -> bool:
    """No crossing touches the same face twice."""
    if D.c == 0:
        return True
    F = faces(D)
    return all(len(set(cf)) == 4 for cf in F.corner_faces)


def lemma_path2_applies(D: LinkDiagram, k: int) -> bool:
    """The dealternator ``k`` is the only crossing joining ``u1`` to ``u2``, and
    exactly one other face of their color shares crossings with both."""
    q, F = region_quad(D, k)
    i = k - 1
    if q.u1 == q.u2:
        return False
    others = [x for x in range(D.c) if x != i]
    if any(q.u1 in F.corner_faces[x] and q.u2 in F.corner_faces[x] for x in others):
        return False
    color = F.coloring[q.u1]
    count = 0
    for w, col in enumerate(F.coloring):
        if col != color or w in (q.u1, q.u2):
            continue
        a = any(w in F.corner_faces[x] and q.u1 in F.corner_faces[x] for x in others)
        b = any(w in F.corner_faces[x] and q.u2 in F.corner_faces[x] for x in others)
        count += a and b
    return count == 1


# ---------------------------------------------------------------------------
# suites


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.bad: str | None = None

    def check(self, ok: bool, what: Callable[[], str] | str):
        self.checked += 1
        if not ok and self.bad is None:
            self.bad = what() if callable(what) else what

    def report(self, notes: str = "") -> SuiteReport:
        return SuiteReport(self.name, self.bad is None, self.checked, self.bad, notes)


def _composite_is_zero(M2, M1) -> bool:
    """``M2 @ M1 == 0`` for integer matrices, via vectorized sparse expansion."""
    if not M1.entries or not M2.entries:
        return True
    k1 = np.fromiter((k for k, _ in M1.entries), dtype=np.int64)
    col1 = np.fromiter((c for _, c in M1.entries), dtype=np.int64)
    val1 = np.fromiter(M1.entries.values(), dtype=np.int64)
    r2 = np.fromiter((r for r, _ in M2.entries), dtype=np.int64)
    k2 = np.fromiter((k for _, k in M2.entries), dtype=np.int64)
    val2 = np.fromiter(M2.entries.values(), dtype=np.int64)
    order = np.argsort(k2, kind="stable")
    r2, k2, val2 = r2[order], k2[order], val2[order]
    start = np.searchsorted(k2, np.arange(M2.n_cols + 1))
    counts = start[k1 + 1] - start[k1]
    src = np.repeat(np.arange(k1.size), counts)
    offs = np.arange(src.size) - np.repeat(np.cumsum(counts) - counts, counts)
    pos = start[k1][src] + offs
    key = r2[pos] * M1.n_cols + col1[src]
    prod = val2[pos] * val1[src]
    uniq, inv = np.unique(key, return_inverse=True)
    return not np.any(np.bincount(inv, weights=prod, minlength=uniq.size))


def _dd_zero(D: LinkDiagram) -> bool:
    cx = _complex(D)
    for j in cx.j_range():
        mats = {i: differential_matrix(D, i, j) for i in range(D.c) if cx.dim(i, j) and cx.dim(i + 1, j)}
        for i, M in mats.items():
            if i + 1 in mats and not _composite_is_zero(mats[i + 1], M):
                return False
    return True


def suite_complex(max_crossings: int = 12, seed: int = 0, n_random: int = 200) -> SuiteReport:
    t = _Tally("complex")
    for name, D in _catalog(max_crossings):
        t.check(_dd_zero(D), f"d∘d ≠ 0 on {name}")
    for _, D, _ in random_perturbations(seed, n_random, max_crossings):
        t.check(_dd_zero(D), lambda: f"d∘d ≠ 0 on {_name(D)}")
    return t.report(f"catalog and {n_random} perturbations, c ≤ {max_crossings}")


def suite_euler(max_crossings: int = 12, seed: int = 0, n_random: int = 12) -> SuiteReport:
    t = _Tally("euler")
    pool = [(n, D) for n, D in _catalog(max_crossings)]
    pool += [("random", D) for D, _ in almost_alternating_pool(seed, n_random, max_crossings)]
    for name, D in pool:
        t.check(graded_euler(shifted(D)) == euler_oracle(D), lambda: f"Euler mismatch on {name}: {_name(D)}")
    return t.report(f"c ≤ {max_crossings}")


def suite_reidemeister(max_crossings: int = 10, seed: int = 0, n_random: int = 100) -> SuiteReport:
    t = _Tally("reidemeister")
    for D, D2, ledger in random_perturbations(seed + 1, n_random, max_crossings, base_max=6):
        di = sum(m.shift[0] for m in ledger)
        dj = sum(m.shift[1] for m in ledger)
        ok = homology(D).shift(di, dj) == homology(D2) and shifted(D) == shifted(D2)
        t.check(ok, lambda: f"ledger {[m.kind for m in ledger]} on {_name(D)}")
    return t.report(f"{n_random} ledgers")


def _mirror_ok(D: LinkDiagram) -> bool:
    c = D.c
    H, Hm = homology(D), homology(mirror(D))
    q = {(c - i, c - j): h.free_rank for (i, j), h in H.items() if h.free_rank}
    qm = {k: h.free_rank for k, h in Hm.items() if h.free_rank}
    tor = {(c - i + 1, c - j): h.torsion for (i, j), h in H.items() if h.torsion}
    torm = {k: h.torsion for k, h in Hm.items() if h.torsion}
    return q == qm and tor == torm


def suite_mirror(max_crossings: int = 10, seed: int = 0, n_random: int = 10) -> SuiteReport:
    t = _Tally("mirror")
    pool = _catalog(max_crossings)
    pool += [("random", D) for D, _ in almost_alternating_pool(seed, n_random, min(max_crossings, 9))]
    for name, D in pool:
        t.check(_mirror_ok(D), lambda: f"mirror relation fails on {name}: {_name(D)}")
    return t.report(f"c ≤ {max_crossings}")


def suite_thin(max_crossings: int = 10, seed: int = 0, n_random: int = 20) -> SuiteReport:
    t = _Tally("thin")
    pool = [(n, D) for n, D in _catalog(max_crossings) if is_alternating(D) and _is_reduced(D)]
    pool += [("random", D) for D in alternating_pool(seed, n_random, min(max_crossings, 9))]
    for name, D in pool:
        deltas = sorted({2 * i - j for i, j in homology(D).support()})
        ok = len(deltas) == 2 and deltas[1] - deltas[0] == 2
        t.check(ok, lambda: f"δ support {deltas} on {name}: {_name(D)}")
    return t.report("reduced alternating diagrams")


def suite_thm_main(max_crossings: int = 10, seed: int = 0, n_random: int = 30) -> SuiteReport:
    t = _Tally("thm-main")
    named = _catalog(max_crossings)
    pool = [(n, D) for n, D in named if not is_alternating(D)]
    pool += [("random", D) for D, _ in almost_alternating_pool(seed, n_random, max_crossings)]
    for name, D in pool:
        cert = classify_diagram(D)
        H = shifted(D)
        if cert.a_side is not None:
            t.check(verify_theorem_main(H, "A").passed, lambda: f"side A fails on {name}: {_name(D)}")
            Hm = shifted(mirror(D))
            t.check(verify_theorem_main(Hm, "B").passed, lambda: f"side B fails on mirror of {name}")
        if cert.b_side is not None:
            t.check(verify_theorem_main(H, "B").passed, lambda: f"side B fails on {name}: {_name(D)}")
        if cert.a_side is not None or cert.b_side is not None:
            t.check(not genus_two_obstruction(H), lambda: f"obstruction fires on {name}")
    for name, D in named:
        if is_alternating(D):
            t.check(not genus_two_obstruction(shifted(D)), f"obstruction fires on alternating {name}")
    return t.report("certified diagrams, their mirrors, and alternating diagrams")


def suite_diagonal(max_crossings: int = 10, seed: int = 0, n_random: int = 30) -> SuiteReport:
    t = _Tally("diagonal")
    pool = [(n, D) for n, D in _catalog(max_crossings) if not is_alternating(D) and dealternator_candidates(D)]
    pool += [("random", D) for D, _ in almost_alternating_pool(seed, n_random, max_crossings)]
    for name, D in pool:
        sa = state_counts(D)[0]
        bad = [(i, j) for i, j in homology(D).support() if not sa - 2 <= 2 * i - j <= sa + 2]
        t.check(not bad, lambda: f"entries {bad} outside s_A ± 2 on {name}: {_name(D)}")
    return t.report("almost alternating diagrams")


def suite_vanishing(max_crossings: int = 10, seed: int = 0, n_random: int = 40) -> SuiteReport:
    t = _Tally("vanishing")
    named = [(n, D) for n, D in _catalog(max_crossings)]
    pool = named + [("random", D) for D, _ in almost_alternating_pool(seed, n_random, max_crossings)]
    pool += [("random", D) for D in alternating_pool(seed + 7, n_random // 2, max_crossings)]
    for name, D in pool:
        sa = state_counts(D)[0]
        H = homology(D)
        if girth(state_graph(D, "A")) >= 3:
            t.check(_complex(D).dim(2, 2 - sa) == 0, f"chain group at (2, 2 - s_A) nonempty on {name}")
            t.check(H.is_zero_at(2, 2 - sa), f"homology at (2, 2 - s_A) nonzero on {name}")
        if is_A_adequate(D) and diagram_turaev_genus(D) == 1:
            t.check(H.is_zero_at(2, 2 - sa), f"(2, 2 - s_A) nonzero on adequate genus one {name}")
        if is_alternating(D):
            continue
        ks = dealternator_candidates(D)
        if any(lemma_path2_applies(D, k) for k in ks):
            t.check(H.is_zero_at(2, 2 - sa), lambda: f"(2, 2 - s_A) nonzero on {name}: {_name(D)}")
        if any(almost_alternating_type(D, k) in ("A", "both") for k in ks):
            t.check(H.is_zero_at(3, 4 - sa), lambda: f"(3, 4 - s_A) nonzero on {name}: {_name(D)}")
    return t.report("three vanishing statements near the all-A corner")


def _parity_ok(D: LinkDiagram) -> bool:
    return all(cyc.negative_count % 2 == 0 and cyc.sinks == cyc.sources for cyc in gamma_cycles(D).cycles)


def suite_parity(max_crossings: int = 12, seed: int = 0, n_random: int = 200) -> SuiteReport:
    t = _Tally("parity")
    pool = list(_catalog(max_crossings))
    pool += [("perturbed", D) for _, D, _ in random_perturbations(seed + 2, n_random, max_crossings)]
    pool += [("random", D) for D, _ in almost_alternating_pool(seed + 3, n_random // 2, max_crossings)]
    pool += [("random", D) for D in alternating_pool(seed + 8, n_random // 2, max_crossings)]
    pool += [("random", D) for D in medial_pool(seed + 9, n_random, max_crossings)]
    used = 0
    for name, D in pool:
        if not is_A_adequate(D):
            continue
        used += 1
        t.check(_parity_ok(D), lambda: f"odd negative count on {name}: {_name(D)}")
    return t.report(f"{used} A-adequate diagrams of {len(pool)}")


def suite_sinv(max_crossings: int = 10, seed: int = 0, n_random: int = 600) -> SuiteReport:
    t = _Tally("sinv")
    pool = [(n, D) for n, D in _catalog(max_crossings) if D.mu == 1]
    pool += [("random", D) for D, _ in almost_alternating_pool(seed + 4, n_random, max_crossings) if D.mu == 1]
    pool += [("random", D) for D in medial_pool(seed + 10, n_random, max_crossings) if D.mu == 1]
    for name, D in pool:
        try:
            r = rasmussen_s(D)
        except (HypothesisNotMet, NotAKnot):
            continue
        H = shifted(D, "Q")
        t.check(
            s_consistency_check(D, s=r.value, H=H),
            lambda: f"s = {r.value} but i = 0 support is {i0_support(H)} on {name}: {_name(D)}",
        )
    return t.report("diagrams with a closed-form s")


def suite_no2neg(max_crossings: int = 12, seed: int = 0, n_random: int = 500) -> SuiteReport:
    t = _Tally("no2neg")
    pool = [D for _, D in _catalog(max_crossings)]
    pool += [D for D, _ in almost_alternating_pool(seed + 5, n_random, max_crossings)]
    bad = verify_no_two_negative(pool)
    t.checked = len(pool)
    if bad:
        t.bad = _name(bad[0])
    return t.report(f"{len(pool)} candidates")


def suite_les(max_crossings: int = 8, seed: int = 0, n_random: int = 0) -> SuiteReport:
    t = _Tally("les")
    pool = _catalog(max_crossings)
    pool += [("random", D) for D, _ in almost_alternating_pool(seed + 6, n_random, max_crossings)]
    for name, D in pool:
        for k in range(1, D.c + 1):
            rep = les_exactness(D, k)
            t.check(rep.exact, lambda: f"inexact at crossing {k} of {name}: {rep.failures[:1]}")
    return t.report(f"every crossing, c ≤ {max_crossings}")


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "complex": suite_complex,
    "euler": suite_euler,
    "reidemeister": suite_reidemeister,
    "mirror": suite_mirror,
    "thin": suite_thin,
    "thm-main": suite_thm_main,
    "diagonal": suite_diagonal,
    "vanishing": suite_vanishing,
    "parity": suite_parity,
    "sinv": suite_sinv,
    "no2neg": suite_no2neg,
    "les": suite_les,
}


def run_suite(name: str, *, max_crossings: int | None = None, seed: int = 0, n_random: int | None = None) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    kwargs = {"seed": seed}
    if max_crossings is not None:
        kwargs["max_crossings"] = max_crossings
    if n_random is not None:
        kwargs["n_random"] = n_random
    return fn(**kwargs)


def run_all(names: Iterable[str] | None = None, **kwargs) -> list[SuiteReport]:
    return [run_suite(n, **kwargs) for n in (names or SUITES)]
