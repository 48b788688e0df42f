"""Command-line front end.

Exit codes: 0 success, 1 bad input (parse or validation error, unknown
catalog name, unreadable file), 2 crossing cap exceeded, 3 hypotheses of a
closed-form formula not met, 4 a verification suite failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .classify import classify_diagram
from .concordance import (
    four_genus_bounds,
    hypotheses,
    i0_support,
    nakamura_four_genus,
    rasmussen_s,
    seifert_genus_diagram,
)
from .diagram import crossing_signs, to_pd_text
from .errors import AlternatingInput, CapExceeded, HypothesisNotMet, KhError, NotAKnot, NotPositiveDiagram
from .khovanov import shifted_homology, unshifted_homology
from .render import render_table, to_json
from .states import diagram_turaev_genus, euler_oracle, state_counts

EXIT_INPUT, EXIT_CAP, EXIT_HYPOTHESIS, EXIT_SUITE = 1, 2, 3, 4


def _half(x: Fraction | None):
    if x is None:
        return None
    return int(x) if x.denominator == 1 else float(x)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, default=str))


def cmd_compute(args) -> int:
    D = catalog.resolve_input(args.input)
    if args.unshifted:
        H = unshifted_homology(D, args.ring, jobs=args.jobs)
    else:
        H = shifted_homology(D, args.ring, jobs=args.jobs)
    if args.plot:
        from .plotting import plot_homology

        kind = "unshifted" if args.unshifted else "shifted"
        plot_homology(H, args.plot, title=f"{args.input}: {kind} homology over {H.ring}")
    if args.json:
        print(to_json(H, crossings=D.c, shifted=not args.unshifted))
    else:
        sys.stdout.write(render_table(H))
    return 0


def cmd_classify(args) -> int:
    D = catalog.resolve_input(args.input)
    try:
        cert = classify_diagram(D)
    except AlternatingInput:
        _emit({"alternating": True})
        return 0
    doc = cert.to_json()
    sa, sb = state_counts(D)
    doc.update({"crossings": D.c, "s_A": sa, "s_B": sb, "turaev_genus": diagram_turaev_genus(D)})
    _emit(doc)
    return 0


def _hypothesis_failure(e: HypothesisNotMet) -> int:
    print(f"error: {e}", file=sys.stderr)
    for case, why in (e.failed or {}).items():
        print(f"  case {case}: {why}", file=sys.stderr)
    return EXIT_HYPOTHESIS


def cmd_sinv(args) -> int:
    D = catalog.resolve_input(args.input)
    r = rasmussen_s(D)
    doc = {"s": r.value, "case": r.case_used, "all_cases": r.all_values, "witness": r.hypothesis_witness}
    if args.check:
        H = shifted_homology(D, "Q")
        doc["i0_support"] = i0_support(H)
        doc["consistent"] = H.rank(0, r.value - 1) > 0 and H.rank(0, r.value + 1) > 0
    _emit(doc)
    return 0


def cmd_genus(args) -> int:
    D = catalog.resolve_input(args.input)
    doc: dict = {"crossings": D.c}
    positive = D.c > 0 and all(s > 0 for s in D.signs)
    nak = nakamura_four_genus(D) if positive or D.c == 0 else None
    if D.mu == 1:
        doc["g3"] = seifert_genus_diagram(D)
    try:
        b = four_genus_bounds(D)
    except (HypothesisNotMet, NotAKnot) as e:
        if nak is None:
            raise
        doc.update({"s": None, "case": None, "g4_lower": None, "g4_upper": None, "note": str(e)})
    else:
        doc.update(
            {"s": b.s, "case": b.case, "g3": b.g3_diagram, "g4_lower": _half(b.g4_lower), "g4_upper": _half(b.g4_upper)}
        )
    if nak is not None:
        doc["nakamura_g4"] = _half(nak)
    _emit(doc)
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for n in names:
        rep = run_suite(n, max_crossings=args.max_crossings, seed=args.seed, n_random=args.n_random)
        print(rep.line(), flush=True)
        ok &= rep.passed
    return 0 if ok else EXIT_SUITE


def cmd_catalog(args) -> int:
    if args.name is None:
        for n in catalog.names():
            D = catalog.get(n)
            print(f"{n:18s} c={D.c:<3d} components={D.mu}  {catalog.describe(n)}")
        return 0
    D = catalog.get(args.name)
    print(f"# {catalog.describe(args.name)}")
    cp, cm = crossing_signs(D)
    print(f"# crossings {D.c} (+{cp} / -{cm}), components {D.mu}")
    print(to_pd_text(D))
    return 0


def cmd_euler(args) -> int:
    D = catalog.resolve_input(args.input)
    print(" + ".join(euler_oracle(D, shifted=not args.unshifted).to_terms()) or "0")
    return 0


def cmd_hypotheses(args) -> int:
    D = catalog.resolve_input(args.input)
    doc = hypotheses(D)
    doc["cases"] = {str(k): v for k, v in doc["cases"].items()}
    _emit(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khturaev", description="Khovanov homology and Turaev genus one diagnostics")
    sub = p.add_subparsers(dest="command", required=True)
    src_help = "PD file, '-' for stdin, or catalog:NAME"

    c = sub.add_parser("compute", help="Khovanov homology table")
    c.add_argument("input", help=src_help)
    c.add_argument("--ring", choices=["Z", "Q"], default="Z")
    c.add_argument("--unshifted", action="store_true", help="skip the orientation shift")
    c.add_argument("--json", action="store_true", help="emit the v1 JSON schema")
    c.add_argument("--plot", metavar="PATH", help="also render the grid to an image file")
    c.add_argument("--jobs", type=int, default=None, help="worker processes (default KH_JOBS or 1)")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("classify", help="Turaev genus one certificate")
    c.add_argument("input", help=src_help)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("sinv", help="closed-form Rasmussen invariant")
    c.add_argument("input", help=src_help)
    c.add_argument("--check", action="store_true", help="also confirm against rational homology at i = 0")
    c.set_defaults(func=cmd_sinv)

    c = sub.add_parser("genus", help="Seifert genus of the diagram and 4-genus bounds")
    c.add_argument("input", help=src_help)
    c.set_defaults(func=cmd_genus)

    c = sub.add_parser("hypotheses", help="diagram facts behind the closed-form cases")
    c.add_argument("input", help=src_help)
    c.set_defaults(func=cmd_hypotheses)

    c = sub.add_parser("euler", help="graded Euler characteristic from the state sum")
    c.add_argument("input", help=src_help)
    c.add_argument("--unshifted", action="store_true")
    c.set_defaults(func=cmd_euler)

    from .verify import SUITES

    c = sub.add_parser("verify", help="run a property suite")
    c.add_argument("suite", choices=sorted(SUITES) + ["all"])
    c.add_argument("--max-crossings", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n-random", type=int, default=None, help="number of random diagrams")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="list catalog diagrams or print one as PD")
    c.add_argument("name", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except HypothesisNotMet as e:
        return _hypothesis_failure(e)
    except (NotAKnot, NotPositiveDiagram) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (KhError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
