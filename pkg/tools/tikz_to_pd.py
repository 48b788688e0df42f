"""Turn a TikZ ``knots`` strand made of ``to [out=.., in=..]`` segments into PD codes.

Each segment is the cubic Bezier that TikZ draws for ``to [out, in]``:
controls at distance ``0.3915 * looseness * |p1 - p0|`` along the out and
in directions.  Crossings are found on finely sampled polylines.  The
knots library numbers crossings in the order it discovers them and has a
default over/under rule; both are unknown here, so every combination is
emitted and the caller validates against known invariants.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

FACTOR = 0.3915


def bezier(p0, p1, out_deg, in_deg, looseness=1.0, n=400):
    p0, p1 = np.asarray(p0, float), np.asarray(p1, float)
    d = FACTOR * looseness * np.linalg.norm(p1 - p0)
    c0 = p0 + d * np.array([math.cos(math.radians(out_deg)), math.sin(math.radians(out_deg))])
    c1 = p1 + d * np.array([math.cos(math.radians(in_deg)), math.sin(math.radians(in_deg))])
    t = np.linspace(0, 1, n)[:, None]
    return (1 - t) ** 3 * p0 + 3 * (1 - t) ** 2 * t * c0 + 3 * (1 - t) * t ** 2 * c1 + t ** 3 * p1


def _seg_intersect(a, b, c, d):
    """Parameters (s, t) where segment ab meets cd, or None."""
    r, s = b - a, d - c
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < 1e-14:
        return None
    q = c - a
    u = (q[0] * s[1] - q[1] * s[0]) / den
    v = (q[0] * r[1] - q[1] * r[0]) / den
    if 0 <= u < 1 and 0 <= v < 1:
        return u, v
    return None


def crossings_of(segments):
    """All transverse intersections between non-adjacent segments.

    Returns dicts with the two (segment, global parameter) positions and
    tangent vectors, in the order (segment i, segment j > i, parameter on i).
    """
    polys = [bezier(*s) for s in segments]
    n_seg = len(polys)
    found = []
    for i, j in itertools.combinations(range(n_seg), 2):
        if j == i + 1 or (i == 0 and j == n_seg - 1):
            adjacent = True
        else:
            adjacent = False
        P, Q = polys[i], polys[j]
        # bounding-box prefilter per sample pair block
        for a in range(len(P) - 1):
            pa, pb = P[a], P[a + 1]
            lo = np.minimum(pa, pb) - 1e-9
            hi = np.maximum(pa, pb) + 1e-9
            mask = ~((np.maximum(Q[:-1], Q[1:]) < lo).any(axis=1) | (np.minimum(Q[:-1], Q[1:]) > hi).any(axis=1))
            for b in np.nonzero(mask)[0]:
                hit = _seg_intersect(pa, pb, Q[b], Q[b + 1])
                if hit is None:
                    continue
                u, v = hit
                ti = (a + u) / (len(P) - 1)
                tj = (b + v) / (len(Q) - 1)
                if adjacent:
                    # skip the shared endpoint
                    if (j == i + 1 and ti > 0.98 and tj < 0.02) or (i == 0 and j == n_seg - 1 and ti < 0.02 and tj > 0.98):
                        continue
                found.append(
                    {
                        "seg": (i, j),
                        "t": (i + ti, j + tj),
                        "tangent": (pb - pa, Q[b + 1] - Q[b]),
                        "point": pa + u * (pb - pa),
                    }
                )
    return found


def pd_from(segments, crossings, over_first: list[bool]):
    """PD quadruples; ``over_first[k]`` means the earlier passage is the over-strand."""
    events = []
    for k, x in enumerate(crossings):
        events.append((x["t"][0], k, 0))
        events.append((x["t"][1], k, 1))
    events.sort()
    m = len(events)
    # edge e runs from event e to event e+1; label e+1
    incoming, outgoing = {}, {}
    for e, (_, k, which) in enumerate(events):
        incoming[(k, which)] = (e - 1) % m + 1
        outgoing[(k, which)] = e + 1
    quads = []
    for k, x in enumerate(crossings):
        under = 1 if over_first[k] else 0
        over = 1 - under
        tu, to = x["tangent"][under], x["tangent"][over]
        arms = [
            (math.atan2(-tu[1], -tu[0]), incoming[(k, under)]),
            (math.atan2(tu[1], tu[0]), outgoing[(k, under)]),
            (math.atan2(-to[1], -to[0]), incoming[(k, over)]),
            (math.atan2(to[1], to[0]), outgoing[(k, over)]),
        ]
        base = arms[0][0]
        arms.sort(key=lambda t: (t[0] - base) % (2 * math.pi))
        quads.append(tuple(a for _, a in arms))
    return quads


def variants(segments, flips):
    """Yield ``(description, quads)`` for each numbering/default-rule combination."""
    xs = crossings_of(segments)
    orders = {
        "pair-i-major": sorted(range(len(xs)), key=lambda k: (xs[k]["seg"][0], xs[k]["seg"][1], xs[k]["t"][0])),
        "pair-j-major": sorted(range(len(xs)), key=lambda k: (xs[k]["seg"][1], xs[k]["seg"][0], xs[k]["t"][1])),
        "first-visit": sorted(range(len(xs)), key=lambda k: xs[k]["t"][0]),
        "second-visit": sorted(range(len(xs)), key=lambda k: xs[k]["t"][1]),
    }
    for name, order in orders.items():
        for default_first_over in (True, False):
            over_first = [None] * len(xs)
            for rank, k in enumerate(order):
                flip = (rank + 1) in flips
                over_first[k] = default_first_over != flip
            yield f"{name}/{'earlier' if default_first_over else 'later'}-over", pd_from(segments, xs, over_first), xs


def chain(points):
    """``[(p, out, in[, looseness]), ..., (p_last,)]`` to segment tuples."""
    segs = []
    for a, b in zip(points, points[1:]):
        loose = a[3] if len(a) > 3 else 1.0
        segs.append((a[0], b[0], a[1], a[2], loose))
    return segs
