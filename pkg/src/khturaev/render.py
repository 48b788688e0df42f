"""Text tables and JSON records for bigraded homology."""

from __future__ import annotations

import json
from collections import Counter

from .intlinalg import HomologySummand
from .khovanov import BigradedGroups

__all__ = [
    "SCHEMA_VERSION",
    "prime_power_parts",
    "cell_text",
    "parse_cell",
    "render_table",
    "parse_table",
    "to_json",
    "from_json",
]

SCHEMA_VERSION = "v1"


def prime_power_parts(d: int) -> list[int]:
    """Primary decomposition of ``Z_d``: ``12 -> [3, 4]``."""
    parts = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            parts.append(q)
        p += 1
    if d > 1:
        parts.append(d)
    return sorted(parts)


def cell_text(h: HomologySummand) -> str:
    """``"k"`` for ``Z^k`` and ``"k_d"`` for ``Z_d^k``, joined by commas."""
    bits = [str(h.free_rank)] if h.free_rank else []
    counts = Counter(q for d in h.torsion for q in prime_power_parts(d))
    bits += [f"{n}_{q}" for q, n in sorted(counts.items())]
    return ",".join(bits)


def _invariant_factors(primary: list[int]) -> tuple[int, ...]:
    """Rebuild the divisibility chain from prime-power cyclic orders."""
    by_prime: dict[int, list[int]] = {}
    for q in primary:
        p = next(f for f in range(2, q + 1) if q % f == 0)
        by_prime.setdefault(p, []).append(q)
    for v in by_prime.values():
        v.sort(reverse=True)
    n = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for t in range(n):
        d = 1
        for v in by_prime.values():
            if t < len(v):
                d *= v[t]
        factors.append(d)
    factors.sort()
    assert all(factors[t + 1] % factors[t] == 0 for t in range(len(factors) - 1))
    return tuple(factors)


def parse_cell(text: str) -> HomologySummand:
    text = text.strip()
    if not text:
        return HomologySummand(0, ())
    free, primary = 0, []
    for bit in text.split(","):
        bit = bit.strip()
        if "_" in bit:
            n, q = bit.split("_")
            primary += [int(q)] * int(n)
        else:
            free += int(bit)
    return HomologySummand(free, _invariant_factors(primary))


def render_table(H: BigradedGroups) -> str:
    """Rows by descending ``j`` (every other value), columns by ascending ``i``."""
    if not H:
        return "j\\i |\n(zero)\n"
    sup = H.support()
    i_lo, i_hi = min(i for i, _ in sup), max(i for i, _ in sup)
    j_lo, j_hi = min(j for _, j in sup), max(j for _, j in sup)
    cols = list(range(i_lo, i_hi + 1))
    rows = list(range(j_hi, j_lo - 1, -2))
    cells = {(i, j): cell_text(h) for (i, j), h in H.items()}
    width = max([len(str(i)) for i in cols] + [len(t) for t in cells.values()])
    lw = max(len("j\\i"), max(len(str(j)) for j in rows))
    corner = "j\\i"
    lines = [" | ".join([f"{corner:>{lw}}"] + [f"{i:>{width}}" for i in cols])]
    lines.append("-+-".join(["-" * lw] + ["-" * width] * len(cols)))
    for j in rows:
        lines.append(" | ".join([f"{j:>{lw}}"] + [f"{cells.get((i, j), ''):>{width}}" for i in cols]))
    return "\n".join(lines) + "\n"


def parse_table(text: str, ring: str = "Z") -> BigradedGroups:
    """Inverse of :func:`render_table`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) >= 2 and lines[1].strip() == "(zero)":
        return BigradedGroups({}, ring)
    cols = [int(x) for x in lines[0].split("|")[1:]]
    groups = {}
    for ln in lines[2:]:
        parts = ln.split("|")
        j = int(parts[0])
        for i, cell in zip(cols, parts[1:]):
            h = parse_cell(cell)
            if not h.is_zero():
                groups[(i, j)] = h
    return BigradedGroups(groups, ring)


def to_json(H: BigradedGroups, *, crossings: int, shifted: bool = True, extra: dict | None = None) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "crossings": crossings,
        "ring": H.ring,
        "shifted": shifted,
        "homology": H.to_records(),
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False)


def from_json(text: str) -> BigradedGroups:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return BigradedGroups.from_records(doc["homology"], doc["ring"])
