"""Planar link diagrams as PD codes.

A crossing is a 4-tuple of arc labels (a, b, c, d) read counterclockwise
from the incoming under-strand, so the under-strand occupies slots 0 and 2
and the over-strand slots 1 and 3.  Crossingless unknot components cannot
be encoded by PD tuples and are tracked by an explicit free-loop counter.

On top of the raw code the module computes complementary faces, the
checkerboard coloring, the link determinant via a reduced Goeritz matrix,
crossing smoothings, Reidemeister I/II reduction, the alternation test,
and a canonical key invariant under arc relabeling and crossing reorder.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass


class PDError(ValueError):
    """Malformed PD input: bad syntax, arc multiplicity, or non-planarity."""


@dataclass(frozen=True)
class SmoothingSite:
    crossing: int
    resolution: int  # 0 joins slots (0,1)+(2,3); 1 joins (0,3)+(1,2)

    def __post_init__(self):
        if self.resolution not in (0, 1):
            raise ValueError("resolution must be 0 or 1")


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


class LinkDiagram:
    """An immutable validated link diagram.

    Faces, checkerboard coloring, and connectivity are computed at
    construction; all operations return fresh diagrams.
    """

    def __init__(self, crossings, free_loops=0):
        crossings = tuple(tuple(int(x) for x in c) for c in crossings)
        if any(len(c) != 4 for c in crossings):
            raise PDError("every crossing needs exactly 4 arc labels")
        if free_loops < 0:
            raise PDError("free_loops must be >= 0")
        if not crossings and free_loops == 0:
            raise PDError("empty diagram: no crossings and no free loops")
        self.crossings = crossings
        self.free_loops = free_loops
        self._validate_arcs()
        self._compute_faces()
        self._compute_coloring()
        self._compute_connectivity()

    # -- construction-time checks ------------------------------------------

    def _validate_arcs(self):
        incidences = {}
        for ci, tup in enumerate(self.crossings):
            for s, label in enumerate(tup):
                if label <= 0:
                    raise PDError("arc labels must be positive integers, got %r" % (label,))
                incidences.setdefault(label, []).append((ci, s))
        for label, inc in incidences.items():
            if len(inc) != 2:
                raise PDError(
                    "arc %d occurs %d times; every arc label must occur exactly twice"
                    % (label, len(inc))
                )
        self.arc_ends = incidences  # label -> [(crossing, slot), (crossing, slot)]

    def _other_end(self, ci, s):
        a, b = self.arc_ends[self.crossings[ci][s]]
        return b if a == (ci, s) else a

    def _compute_faces(self):
        # Faces are orbits of the corner map (c, s) -> (c', s'-1) where
        # (c', s') is the far end of the arc at slot s.  Corner (c, s)
        # names the region between slots s and s+1 of crossing c.
        corners = {(ci, s) for ci in range(len(self.crossings)) for s in range(4)}
        faces = []
        face_of = {}
        while corners:
            start = corners.pop()
            face = [start]
            face_of[start] = len(faces)
            cur = start
            while True:
                cj, t = self._other_end(*cur)
                nxt = (cj, (t - 1) % 4)
                if nxt == start:
                    break
                if nxt not in corners:
                    raise PDError("face walk failed to close; PD code is not planar")
                corners.remove(nxt)
                face_of[nxt] = len(faces)
                face.append(nxt)
                cur = nxt
            faces.append(tuple(face))
        self.faces = tuple(faces)
        self.face_of = face_of

    def _crossing_pieces(self):
        uf = _UnionFind(range(len(self.crossings)))
        first_seen = {}
        for ci, tup in enumerate(self.crossings):
            for label in tup:
                if label in first_seen:
                    uf.union(ci, first_seen[label])
                else:
                    first_seen[label] = ci
        pieces = {}
        for ci in range(len(self.crossings)):
            pieces.setdefault(uf.find(ci), []).append(ci)
        return list(pieces.values())

    def _compute_coloring(self):
        # 2-color faces so that consecutive corners around any crossing lie
        # in different color classes; existence is equivalent to planarity
        # for 4-valent codes, checked together with Euler's formula.
        pieces = self._crossing_pieces()
        color = {}
        for piece in pieces:
            face_ids = {self.face_of[(ci, s)] for ci in piece for s in range(4)}
            nv, ne, nf = len(piece), 2 * len(piece), len(face_ids)
            if nv - ne + nf != 2:
                raise PDError(
                    "V - E + F = %d for a connected piece; PD code is not planar"
                    % (nv - ne + nf)
                )
            seed = self.face_of[(piece[0], 0)]
            color[seed] = 0
            stack = [piece[0]]
            seen_cross = {piece[0]}
            while stack:
                ci = stack.pop()
                fids = [self.face_of[(ci, s)] for s in range(4)]
                known = next((s for s in range(4) if fids[s] in color), None)
                if known is None:
                    raise PDError("coloring lost connectivity (internal error)")
                base = color[fids[known]] ^ (known & 1)
                for s in range(4):
                    want = base ^ (s & 1)
                    if fids[s] in color:
                        if color[fids[s]] != want:
                            raise PDError("diagram is not checkerboard colorable")
                    else:
                        color[fids[s]] = want
                for s in range(4):
                    cj, _ = self._other_end(ci, s)
                    if cj not in seen_cross:
                        seen_cross.add(cj)
                        stack.append(cj)
        self.face_color = color
        self.pieces = pieces

    def _compute_connectivity(self):
        labels = list(self.arc_ends)
        uf = _UnionFind(labels)
        for tup in self.crossings:
            uf.union(tup[0], tup[2])
            uf.union(tup[1], tup[3])
        self.components = len({uf.find(x) for x in labels}) + self.free_loops

    # -- basic queries ------------------------------------------------------

    @property
    def num_crossings(self):
        return len(self.crossings)

    @property
    def num_pieces(self):
        """Connected pieces of the underlying 4-valent graph plus free loops."""
        return len(self.pieces) + self.free_loops

    @property
    def is_split(self):
        return self.num_pieces > 1

    def __eq__(self, other):
        return (
            isinstance(other, LinkDiagram)
            and self.crossings == other.crossings
            and self.free_loops == other.free_loops
        )

    def __hash__(self):
        return hash((self.crossings, self.free_loops))

    def __repr__(self):
        return "LinkDiagram(%r, free_loops=%d)" % (list(self.crossings), self.free_loops)


# -- parsing / formatting ----------------------------------------------------

_PD_RE = re.compile(r"^\s*PD\s*\[(?P<body>.*)\]\s*(?:\+\s*U(?P<loops>\d+)\s*)?$", re.DOTALL)
_X_RE = re.compile(r"X\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text):
    """Parse 'PD[X(a,b,c,d), ...]' (optionally '+ Uk' for k free loops) or
    the JSON form {"crossings": [[a,b,c,d], ...], "free_loops": k}."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        data = json.loads(text)
        if isinstance(data, list):
            data = {"crossings": data}
        try:
            return LinkDiagram(data.get("crossings", ()), data.get("free_loops", 0))
        except (TypeError, AttributeError) as err:
            raise PDError("bad JSON diagram: %s" % err) from err
    m = _PD_RE.match(text)
    if m is None:
        raise PDError("cannot parse PD code: %r" % text[:80])
    body = m.group("body")
    tuples = [tuple(int(x) for x in g) for g in _X_RE.findall(body)]
    leftover = _X_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise PDError("unrecognized text in PD body: %r" % leftover)
    loops = int(m.group("loops") or 0)
    return LinkDiagram(tuples, loops)


def pd_text(diagram):
    body = ",".join("X(%d,%d,%d,%d)" % tup for tup in diagram.crossings)
    out = "PD[%s]" % body
    if diagram.free_loops:
        out += " + U%d" % diagram.free_loops
    return out


# -- determinant -------------------------------------------------------------


def _bareiss_abs_det(m):
    """|det| of a square integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return abs(m[n - 1][n - 1])


def determinant(diagram, color=0):
    """The link determinant |det(reduced Goeritz matrix)|.

    Built from one checkerboard color class: each crossing contributes +-1
    between the two faces of its same-colored opposite corner pair, with
    the sign fixed by which corner pair (0,2) or (1,3) carries that color.
    Diagrammatically split diagrams return 0; the 0-crossing unknot gives 1.
    """
    if diagram.num_pieces > 1:
        return 0
    if not diagram.crossings:
        return 1
    white = sorted(f for f, c in diagram.face_color.items() if c == color)
    index = {f: i for i, f in enumerate(white)}
    n = len(white)
    g = [[0] * n for _ in range(n)]
    for ci in range(len(diagram.crossings)):
        f0 = diagram.face_of[(ci, 0)]
        if diagram.face_color[f0] == color:
            pair, sign = ((ci, 0), (ci, 2)), 1
        else:
            pair, sign = ((ci, 1), (ci, 3)), -1
        i = index[diagram.face_of[pair[0]]]
        j = index[diagram.face_of[pair[1]]]
        if i != j:
            g[i][j] -= sign
            g[j][i] -= sign
    for i in range(n):
        g[i][i] = -sum(g[i][j] for j in range(n) if j != i)
    reduced = [row[1:] for row in g[1:]]
    return _bareiss_abs_det(reduced)


# -- smoothing and reduction --------------------------------------------------


def _rebuild(crossings, drop, unions, free_loops):
    """Remove the crossings in `drop`, merge arc labels per `unions`, close
    any arc class with no remaining incidence into a free loop, and relabel
    arcs 1..n."""
    labels = {label for ci, tup in enumerate(crossings) for label in tup}
    uf = _UnionFind(labels)
    for chain in unions:
        for x, y in zip(chain, chain[1:]):
            uf.union(x, y)
    kept = [tup for ci, tup in enumerate(crossings) if ci not in drop]
    alive = {uf.find(label) for tup in kept for label in tup}
    touched = {uf.find(x) for chain in unions for x in chain}
    free_loops += len(touched - alive)
    relabel = {}
    new_crossings = []
    for tup in kept:
        new_tup = []
        for label in tup:
            root = uf.find(label)
            if root not in relabel:
                relabel[root] = len(relabel) + 1
            new_tup.append(relabel[root])
        new_crossings.append(tuple(new_tup))
    return LinkDiagram(new_crossings, free_loops)


def smooth(diagram, site):
    """Replace one crossing by the chosen arc reconnection.

    Resolution 0 connects the under-strand's incoming arc (slot 0) to the
    rotationally adjacent arc (slot 1), and slots 2-3 likewise; resolution 1
    connects slots 0-3 and 1-2.  The result is revalidated.
    """
    if not (0 <= site.crossing < len(diagram.crossings)):
        raise PDError("no crossing with index %d" % site.crossing)
    t = diagram.crossings[site.crossing]
    if site.resolution == 0:
        unions = [(t[0], t[1]), (t[2], t[3])]
    else:
        unions = [(t[0], t[3]), (t[1], t[2])]
    return _rebuild(diagram.crossings, {site.crossing}, unions, diagram.free_loops)


def _find_r1(diagram):
    for ci, t in enumerate(diagram.crossings):
        for s in range(4):
            if t[s] == t[(s + 1) % 4]:
                return ci
    return None


def _find_r2(diagram):
    # A removable bigon: a 2-corner face whose two crossings see the shared
    # strands with matching over/under parity (same strand on top twice).
    for face in diagram.faces:
        if len(face) != 2:
            continue
        (c1, i), (c2, j) = face
        if c1 == c2:
            continue
        x = diagram.crossings[c1][i]
        if diagram.crossings[c2][(j + 1) % 4] != x:
            continue  # orientation of the walk guarantees this; stay safe
        if (i & 1) == ((j + 1) & 1):
            return (c1, i), (c2, j)
    return None


def reduce(diagram):
    """Apply Reidemeister I (kink) and II (bigon) moves until neither is
    available.  Determinant and component count are preserved; the crossing
    number never increases."""
    while True:
        ci = _find_r1(diagram)
        if ci is not None:
            t = diagram.crossings[ci]
            diagram = _rebuild(diagram.crossings, {ci}, [tuple(t)], diagram.free_loops)
            continue
        bigon = _find_r2(diagram)
        if bigon is not None:
            (c1, i), (c2, j) = bigon
            t1, t2 = diagram.crossings[c1], diagram.crossings[c2]
            x = t1[i]  # = t2[(j+1)%4]
            y = t1[(i + 1) % 4]  # = t2[j]
            chain_x = (t1[(i + 2) % 4], x, t2[(j + 3) % 4])
            chain_y = (t1[(i + 3) % 4], y, t2[(j + 2) % 4])
            diagram = _rebuild(
                diagram.crossings, {c1, c2}, [chain_x, chain_y], diagram.free_loops
            )
            continue
        return diagram


def is_alternating(diagram):
    """True iff crossings alternate over/under along every strand: each
    arc must leave an even (under) slot at one end and an odd (over) slot
    at the other.  Diagrams without crossings count as alternating."""
    for ends in diagram.arc_ends.values():
        (c1, s1), (c2, s2) = ends
        if (s1 & 1) == (s2 & 1):
            return False
    return True


# -- canonical form ------------------------------------------------------------


def _walk_relabel(crossings, arc_ends, seed_arc, seed_end):
    """Deterministically relabel all arcs of one connected piece by walking
    strands, starting along seed_arc towards the end opposite seed_end."""
    new_label = {}
    entry_slot = {}
    discovery = []

    def other(ci, s, label):
        a, b = arc_ends[label]
        return b if a == (ci, s) else a

    def walk(label, head):
        while label not in new_label:
            new_label[label] = len(new_label) + 1
            ci, s = head
            if ci not in entry_slot:
                entry_slot[ci] = s
                discovery.append(ci)
            out = (s + 2) % 4
            label = crossings[ci][out]
            head = other(ci, out, label)

    walk(seed_arc, other(*seed_end, seed_arc))
    while len(new_label) < len(arc_ends):
        nxt = None
        for ci in discovery:
            base = entry_slot[ci]
            for k in range(4):
                s = (base + k) % 4
                label = crossings[ci][s]
                if label not in new_label:
                    nxt = (label, (ci, s))
                    break
            if nxt:
                break
        if nxt is None:
            return None  # piece not strand-connected from this seed set
        walk(nxt[0], other(*nxt[1], nxt[0]))
    tuples = []
    for tup in crossings:
        if any(label not in new_label for label in tup):
            return None
        a = tuple(new_label[label] for label in tup)
        b = a[2:] + a[:2]
        tuples.append(min(a, b))
    return tuple(sorted(tuples))


def _piece_key(crossings):
    arc_ends = {}
    for ci, tup in enumerate(crossings):
        for s, label in enumerate(tup):
            arc_ends.setdefault(label, []).append((ci, s))
    best = None
    for label, ends in arc_ends.items():
        for end in ends:
            key = _walk_relabel(crossings, arc_ends, label, end)
            if key is not None and (best is None or key < best):
                best = key
    return best


def canonical_form(diagram):
    """A key invariant under arc relabeling, crossing reordering, and the
    rotation-by-two PD symmetry: the lexicographically minimal relabeled
    code over all starting arcs and directions, per connected piece.

    Keys identify diagrams up to these relabelings only; distinct codes for
    the same link type still get distinct keys.
    """
    piece_keys = []
    for piece in diagram.pieces:
        crossings = [diagram.crossings[ci] for ci in piece]
        piece_keys.append(_piece_key(crossings))
    return (tuple(sorted(piece_keys)), diagram.free_loops)


def from_canonical(key):
    """Rebuild a diagram from a canonical_form key (labels are disjoint
    across pieces after an offset shift)."""
    piece_keys, free_loops = key
    crossings = []
    offset = 0
    for pk in piece_keys:
        width = max((label for tup in pk for label in tup), default=0)
        crossings.extend(tuple(label + offset for label in tup) for tup in pk)
        offset += width
    return LinkDiagram(crossings, free_loops)
