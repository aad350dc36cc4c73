"""Programmatic diagram constructors.

Builders for braid closures, pretzel links, connected sums, and clasp
insertion.  These back the bundled fixture set and the randomized diagram
tests; the certification engine itself never needs them.

Crossings are emitted counterclockwise from the incoming under-strand in a
fixed plane orientation, so mixed-sign constructions stay consistent.
"""

from __future__ import annotations

from .diagrams import LinkDiagram, PDError


class _Labeler:
    def __init__(self):
        self.next = 1

    def fresh(self):
        label = self.next
        self.next += 1
        return label


def _positive_crossing(left_in, right_in, left_out, right_out):
    # Left strand passes over; under-strand runs from the top-right corner
    # to the bottom-left.  Counterclockwise from the incoming under-strand:
    # NE, NW, SW, SE.
    return (right_in, left_in, left_out, right_out)


def _negative_crossing(left_in, right_in, left_out, right_out):
    # Right strand passes over; under-strand runs top-left to bottom-right.
    return (left_in, left_out, right_out, right_in)


def braid_closure(word, strands=None):
    """The closure of a braid word as a PD diagram.

    The word is a sequence of nonzero integers: +i crosses strand i over
    strand i+1 (1-based), -i the inverse.  Strand positions untouched by
    the word close up into free loops.
    """
    if not word:
        raise ValueError("empty braid word; use LinkDiagram([], free_loops=n) directly")
    n = strands or (max(abs(g) for g in word) + 1)
    if any(g == 0 or abs(g) >= n for g in word):
        raise ValueError("braid generators must be nonzero with |g| < strands")
    lab = _Labeler()
    top = [lab.fresh() for _ in range(n)]
    cur = list(top)
    crossings = []
    for g in word:
        i = abs(g) - 1
        nl, nr = lab.fresh(), lab.fresh()
        if g > 0:
            crossings.append(_positive_crossing(cur[i], cur[i + 1], nl, nr))
        else:
            crossings.append(_negative_crossing(cur[i], cur[i + 1], nl, nr))
        cur[i], cur[i + 1] = nl, nr
    free_loops = sum(1 for k in range(n) if cur[k] == top[k])
    relabel = {cur[k]: top[k] for k in range(n) if cur[k] != top[k]}
    fixed = [tuple(relabel.get(x, x) for x in tup) for tup in crossings]
    return LinkDiagram(fixed, free_loops)


def twist_column(lab, q):
    """A vertical column of |q| half-twists on two downward strands.
    Returns (crossings, top_left, top_right, bottom_left, bottom_right)."""
    left_top, right_top = lab.fresh(), lab.fresh()
    left, right = left_top, right_top
    crossings = []
    for _ in range(abs(q)):
        nl, nr = lab.fresh(), lab.fresh()
        if q > 0:
            crossings.append(_positive_crossing(left, right, nl, nr))
        else:
            crossings.append(_negative_crossing(left, right, nl, nr))
        left, right = nl, nr
    return crossings, left_top, right_top, left, right


def pretzel(*twists):
    """The pretzel link P(q_1, ..., q_k): vertical twist columns joined
    cyclically by a top band and a bottom band."""
    if len(twists) < 2:
        raise ValueError("a pretzel needs at least two columns")
    if any(q == 0 for q in twists):
        raise ValueError("zero columns split the diagram and are not supported")
    lab = _Labeler()
    crossings = []
    cols = []
    for q in twists:
        cross, tl, tr, bl, br = twist_column(lab, q)
        crossings.extend(cross)
        cols.append((tl, tr, bl, br))
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    k = len(cols)
    for i in range(k):
        j = (i + 1) % k
        union(cols[i][1], cols[j][0])  # top band
        union(cols[i][3], cols[j][2])  # bottom band
    fixed = [tuple(find(x) for x in tup) for tup in crossings]
    return LinkDiagram(fixed)


def connected_sum(d1, arc1, d2, arc2):
    """Splice two diagrams along the chosen arcs: cut both and join the
    loose ends crosswise.  Tries both end pairings and returns the first
    that yields a valid planar code."""
    if d1.free_loops or d2.free_loops:
        raise PDError("connected sums of diagrams with free loops are not supported")
    offset = max(x for tup in d1.crossings for x in tup)
    shifted = [tuple(x + offset for x in tup) for tup in d2.crossings]
    ends1 = d1.arc_ends[arc1]
    ends2 = [(ci + len(d1.crossings), s) for ci, s in d2.arc_ends[arc2]]
    base = [list(t) for t in d1.crossings] + [list(t) for t in shifted]
    new1 = offset + max(x for tup in d2.crossings for x in tup) + 1
    new2 = new1 + 1
    last_err = None
    for flip in (False, True):
        e2 = ends2[::-1] if flip else ends2
        crossings = [row[:] for row in base]
        crossings[ends1[0][0]][ends1[0][1]] = new1
        crossings[e2[0][0]][e2[0][1]] = new1
        crossings[ends1[1][0]][ends1[1][1]] = new2
        crossings[e2[1][0]][e2[1][1]] = new2
        try:
            return LinkDiagram([tuple(t) for t in crossings])
        except PDError as err:
            last_err = err
    raise last_err


def insert_r2_tongue(diagram, arc_a, arc_b, variant):
    """Push a tongue of arc_a across arc_b: two cancelling crossings.

    Both arcs split into three segments; the tongue tip is the middle
    segment of arc_a (returned with the new diagram).  The 8 variants pick
    the crossing rotations and which strand dives under; invalid ones for
    the face geometry raise PDError.  The result always reduces back to
    the input (same canonical form) and keeps its determinant.
    """
    if arc_a == arc_b:
        raise ValueError("tongue needs two distinct arcs")
    top = max(x for tup in diagram.crossings for x in tup)
    am, a2, bm, b2 = top + 1, top + 2, top + 3, top + 4
    crossings = [list(t) for t in diagram.crossings]
    ca, sa = diagram.arc_ends[arc_a][1]
    cb, sb = diagram.arc_ends[arc_b][1]
    crossings[ca][sa] = a2
    crossings[cb][sb] = b2
    a_under = not (variant & 4)
    if a_under:
        c1 = (arc_a, arc_b, am, bm) if not (variant & 1) else (arc_a, bm, am, arc_b)
        c2 = (am, bm, a2, b2) if not (variant & 2) else (am, b2, a2, bm)
    else:
        c1 = (arc_b, arc_a, bm, am) if not (variant & 1) else (arc_b, am, bm, arc_a)
        c2 = (bm, am, b2, a2) if not (variant & 2) else (bm, a2, b2, am)
    crossings.extend([c1, c2])
    return LinkDiagram([tuple(t) for t in crossings], diagram.free_loops), am


def insert_twist(diagram, arc_u, arc_v, twists, variant):
    """Replace two arcs by a region of `twists` crossings between them.

    twists = 1 degenerates to insert_clasp.  As there, resolution 0 of the
    outermost (last-listed) crossing peels one twist off; resolution 1 caps
    the region, unwinding everything below it.
    """
    if twists < 1:
        raise ValueError("need at least one twist")
    u, v = arc_u, arc_v
    d = diagram
    for _ in range(twists):
        top = max(x for tup in d.crossings for x in tup)
        d = insert_clasp(d, u, v, variant)
        u, v = top + 1, top + 2  # the fresh stubs extend the region outward
    return d


def insert_clasp(diagram, arc_u, arc_v, variant):
    """Insert one crossing joining two arcs, arranged so that smoothing it
    with resolution 0 restores the original diagram (after reduction) and
    resolution 1 rewires the two strands.

    variant in 0..3 selects the stub pairings (bit 0 swaps the u-side, bit
    1 the v-side), which varies the chirality and sign of the crossing.
    Only arcs that cobound a face give planar results; others raise PDError.
    """
    if arc_u == arc_v:
        raise ValueError("clasp insertion needs two distinct arcs")
    top = max(x for tup in diagram.crossings for x in tup)
    u2, v2 = top + 1, top + 2
    crossings = [list(t) for t in diagram.crossings]
    cu, su = diagram.arc_ends[arc_u][1]
    cv, sv = diagram.arc_ends[arc_v][1]
    crossings[cu][su] = u2
    crossings[cv][sv] = v2
    u_pair = (arc_u, u2) if not (variant & 1) else (u2, arc_u)
    v_pair = (arc_v, v2) if not (variant & 2) else (v2, arc_v)
    crossings.append((u_pair[0], u_pair[1], v_pair[0], v_pair[1]))
    return LinkDiagram([tuple(t) for t in crossings], diagram.free_loops)
