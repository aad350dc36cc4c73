"""Recursive quasi-alternating certification of link diagrams.

The engine realizes the defining recursion of the quasi-alternating link
class: a diagram certifies if, after Reidemeister I/II reduction, it is a
leaf (crossingless unknot, connected alternating diagram, database hit, or
caller-supplied assumption) or some crossing has both smoothings certified
with determinants adding up to the diagram's determinant.  Results are
emitted as machine-checkable certificate trees; failure is always the
non-verdict Unknown, never a claim of non-quasi-alternation.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass

from .diagrams import (
    LinkDiagram,
    SmoothingSite,
    canonical_form,
    determinant,
    from_canonical,
    is_alternating,
    parse_pd,
    pd_text,
    reduce,
    smooth,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchLimits:
    max_depth: int = 16
    max_nodes: int = 100000
    max_crossings: int = 20

    def __post_init__(self):
        if min(self.max_depth, self.max_nodes, self.max_crossings) <= 0:
            raise ValueError("all search limits must be positive")


@dataclass(frozen=True)
class DBEntry:
    name: str
    diagram: LinkDiagram
    det: int
    source: str
    verdict: str  # 'QA' | 'NQA'


class QADatabase:
    """Known quasi-alternating and non-quasi-alternating diagrams, keyed by
    the canonical form of their reduced PD codes.  Stored determinants are
    recomputed at load; the two verdict classes must be disjoint."""

    def __init__(self, entries=()):
        self.qa = {}
        self.nqa = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry):
        recomputed = determinant(entry.diagram)
        if recomputed != entry.det:
            raise ValueError(
                "database entry %r claims det %d but its diagram has det %d"
                % (entry.name, entry.det, recomputed)
            )
        if entry.verdict not in ("QA", "NQA"):
            raise ValueError("entry %r has verdict %r" % (entry.name, entry.verdict))
        key = canonical_form(reduce(entry.diagram))
        other = self.nqa if entry.verdict == "QA" else self.qa
        if key in other:
            raise ValueError(
                "entries %r and %r share a canonical form with conflicting verdicts"
                % (entry.name, other[key].name)
            )
        target = self.qa if entry.verdict == "QA" else self.nqa
        target[key] = entry

    def __len__(self):
        return len(self.qa) + len(self.nqa)


def load_database(path):
    """Load a QADatabase from CSV (columns name,verdict,det,pd,source) or a
    JSON list of objects with the same fields."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_database(text)


def parse_database(text):
    stripped = text.lstrip()
    rows = []
    if stripped.startswith("[") or stripped.startswith("{"):
        for obj in json.loads(stripped or "[]"):
            rows.append((obj["name"], obj["verdict"], obj["det"], obj["pd"], obj.get("source", "")))
    elif stripped:
        reader = csv.DictReader(io.StringIO(text))
        needed = {"name", "verdict", "det", "pd"}
        if not needed.issubset(reader.fieldnames or ()):
            raise ValueError("database CSV needs columns name,verdict,det,pd[,source]")
        for row in reader:
            rows.append((row["name"], row["verdict"], row["det"], row["pd"], row.get("source", "")))
    db = QADatabase()
    for name, verdict, det, pd, source in rows:
        db.add(DBEntry(name, parse_pd(pd), int(det), source, verdict.strip().upper()))
    return db


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class AlternatingNonSplit:
    pass


@dataclass(frozen=True)
class DatabaseHit:
    name: str


@dataclass(frozen=True)
class Assumption:
    name: str


@dataclass(frozen=True)
class Smoothing:
    site: SmoothingSite
    child0: "Certificate"
    child1: "Certificate"


@dataclass(frozen=True)
class Certificate:
    key: tuple  # canonical_form of the reduced diagram
    det: int
    verdict: str
    justification: object

    def leaves(self):
        if isinstance(self.justification, Smoothing):
            yield from self.justification.child0.leaves()
            yield from self.justification.child1.leaves()
        else:
            yield self


@dataclass(frozen=True)
class CertifiedQA:
    certificate: Certificate


@dataclass(frozen=True)
class Unknown:
    reason: str


def _ordered_sites(diagram, det):
    """Crossings passing the determinant-additivity filter, with their
    reduced smoothings, cheapest child pairs first."""
    found = []
    for ci in range(diagram.num_crossings):
        d0 = reduce(smooth(diagram, SmoothingSite(ci, 0)))
        d1 = reduce(smooth(diagram, SmoothingSite(ci, 1)))
        det0, det1 = determinant(d0), determinant(d1)
        if det0 >= 1 and det1 >= 1 and det0 + det1 == det:
            cost = d0.num_crossings + d1.num_crossings
            found.append((cost, ci, d0, d1))
    found.sort(key=lambda item: (item[0], item[1]))
    return found


def crossing_order(diagram):
    """The determinant-filtered smoothing sites of a diagram, ordered by
    the total reduced crossing number of the two children (ascending,
    ties by crossing index).  Each entry is the (resolution 0, resolution 1)
    pair of sites at one crossing."""
    det = determinant(diagram)
    return [
        (SmoothingSite(ci, 0), SmoothingSite(ci, 1))
        for _, ci, _, _ in _ordered_sites(diagram, det)
    ]


class _Engine:
    def __init__(self, db, assumptions, limits):
        self.db = db or QADatabase()
        self.assumptions = {}
        for name, diagram in assumptions:
            self.assumptions[canonical_form(reduce(diagram))] = name
        self.limits = limits
        self.memo = {}
        self.unknown_at = {}
        self.nodes = 0

    def run(self, diagram, depth):
        if self.nodes >= self.limits.max_nodes:
            return Unknown("node budget %d exhausted" % self.limits.max_nodes)
        self.nodes += 1
        d = reduce(diagram)
        if d.num_pieces > 1:
            return Unknown("diagrammatically split (determinant 0)")
        det = determinant(d)
        if det == 0:
            return Unknown("determinant 0; cannot appear in a certificate")
        key = canonical_form(d)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        prev_depth = self.unknown_at.get(key)
        if prev_depth is not None and depth <= prev_depth:
            return Unknown("already exhausted with depth budget %d" % prev_depth)
        d = from_canonical(key)  # stable crossing indices for sites

        leaf = self._leaf(d, key, det)
        if leaf is not None:
            if isinstance(leaf, Certificate):
                self.memo[key] = leaf
            return leaf

        if d.num_crossings > self.limits.max_crossings:
            return Unknown(
                "reduced diagram has %d crossings > limit %d"
                % (d.num_crossings, self.limits.max_crossings)
            )
        if depth <= 0:
            return self._mark_unknown(key, depth, "depth budget exhausted")

        sites = _ordered_sites(d, det)
        if not sites:
            return self._mark_unknown(
                key, depth, "no crossing satisfies determinant additivity"
            )
        for _, ci, d0, d1 in sites:
            r0 = self.run(d0, depth - 1)
            if not isinstance(r0, Certificate):
                continue
            r1 = self.run(d1, depth - 1)
            if not isinstance(r1, Certificate):
                continue
            cert = Certificate(key, det, "QA", Smoothing(SmoothingSite(ci, 0), r0, r1))
            self.memo[key] = cert
            return cert
        return self._mark_unknown(key, depth, "all filtered smoothings exhausted")

    def _mark_unknown(self, key, depth, reason):
        prev = self.unknown_at.get(key)
        if prev is None or depth > prev:
            self.unknown_at[key] = depth
        return Unknown(reason)

    def _leaf(self, d, key, det):
        if d.num_crossings == 0:
            if d.free_loops == 1:
                return Certificate(key, det, "QA", Unknot())
            return Unknown("split unlink")  # unreachable: split was filtered
        if is_alternating(d):
            return Certificate(key, det, "QA", AlternatingNonSplit())
        entry = self.db.qa.get(key)
        if entry is not None:
            return Certificate(key, det, "QA", DatabaseHit(entry.name))
        name = self.assumptions.get(key)
        if name is not None:
            return Certificate(key, det, "QA", Assumption(name))
        if key in self.db.nqa:
            return Unknown(
                "known non-quasi-alternating diagram %r" % self.db.nqa[key].name
            )
        return None

def certify(diagram, db=None, assumptions=(), limits=SearchLimits()):
    """Certify a diagram as quasi-alternating, or return Unknown.

    Unknown is never a negative verdict: it reports an exhausted limit,
    a determinant obstruction, or the absence of filter-passing crossings.
    """
    engine = _Engine(db, assumptions, limits)
    result = engine.run(diagram, limits.max_depth)
    if isinstance(result, Certificate):
        return CertifiedQA(result)
    return result


def verify_certificate(cert, db=None, assumptions=()):
    """Independently recheck a certificate: determinants are recomputed
    from the stored canonical keys, smoothing children are rebuilt from
    their sites, leaf justifications are re-tested, and database hits are
    looked up again.  Assumption leaves are accepted (they are the caller's
    liability) but must be named.  Returns False with a logged diagnostic
    on the first failure."""
    db = db or QADatabase()
    assumed = {name for name, _ in assumptions} if assumptions else None

    def fail(message):
        log.warning("certificate invalid: %s", message)
        return False

    def walk(node):
        try:
            d = from_canonical(node.key)
        except Exception as err:  # malformed key
            return fail("cannot rebuild diagram from key: %s" % err)
        det = determinant(d)
        if det != node.det:
            return fail("stored det %d != recomputed det %d" % (node.det, det))
        if node.verdict != "QA":
            return fail("certificate nodes must carry the QA verdict")
        j = node.justification
        if isinstance(j, Unknot):
            if d.num_crossings != 0 or d.free_loops != 1:
                return fail("unknot leaf is not a crossingless unknot")
            return True
        if isinstance(j, AlternatingNonSplit):
            if d.num_crossings == 0 or d.num_pieces != 1 or not is_alternating(d):
                return fail("alternating leaf fails the alternation/connectivity test")
            return True
        if isinstance(j, DatabaseHit):
            entry = db.qa.get(node.key)
            if entry is None or entry.name != j.name:
                return fail("database hit %r not present in the database" % j.name)
            return True
        if isinstance(j, Assumption):
            if assumed is not None and j.name not in assumed:
                return fail("assumption %r was not supplied" % j.name)
            log.info("certificate rests on assumption %r", j.name)
            return True
        if isinstance(j, Smoothing):
            if j.child0.det < 1 or j.child1.det < 1:
                return fail("smoothing children must have positive determinant")
            if j.child0.det + j.child1.det != node.det:
                return fail(
                    "additivity fails: %d + %d != %d"
                    % (j.child0.det, j.child1.det, node.det)
                )
            if not (0 <= j.site.crossing < d.num_crossings):
                return fail("smoothing site out of range")
            for res, child in ((0, j.child0), (1, j.child1)):
                rebuilt = reduce(smooth(d, SmoothingSite(j.site.crossing, res)))
                if canonical_form(rebuilt) != child.key:
                    return fail(
                        "resolution %d of crossing %d does not match the stored child"
                        % (res, j.site.crossing)
                    )
            return walk(j.child0) and walk(j.child1)
        return fail("unknown justification %r" % (j,))

    return walk(cert)


# -- serialization ---------------------------------------------------------


def _key_to_json(key):
    pieces, loops = key
    return {"pieces": [[list(t) for t in piece] for piece in pieces], "free_loops": loops}


def _key_from_json(obj):
    pieces = tuple(tuple(tuple(x) for x in piece) for piece in obj["pieces"])
    return (pieces, obj["free_loops"])


def certificate_to_json(cert):
    j = cert.justification
    out = {"key": _key_to_json(cert.key), "det": cert.det, "verdict": cert.verdict}
    if isinstance(j, Unknot):
        out["justification"] = {"kind": "unknot"}
    elif isinstance(j, AlternatingNonSplit):
        out["justification"] = {"kind": "alternating-non-split"}
    elif isinstance(j, DatabaseHit):
        out["justification"] = {"kind": "database-hit", "name": j.name}
    elif isinstance(j, Assumption):
        out["justification"] = {"kind": "assumption", "name": j.name}
    elif isinstance(j, Smoothing):
        out["justification"] = {
            "kind": "smoothing",
            "crossing": j.site.crossing,
            "child0": certificate_to_json(j.child0),
            "child1": certificate_to_json(j.child1),
        }
    else:
        raise TypeError("cannot serialize justification %r" % (j,))
    return out


def certificate_from_json(obj):
    key = _key_from_json(obj["key"])
    j = obj["justification"]
    kind = j["kind"]
    if kind == "unknot":
        just = Unknot()
    elif kind == "alternating-non-split":
        just = AlternatingNonSplit()
    elif kind == "database-hit":
        just = DatabaseHit(j["name"])
    elif kind == "assumption":
        just = Assumption(j["name"])
    elif kind == "smoothing":
        just = Smoothing(
            SmoothingSite(j["crossing"], 0),
            certificate_from_json(j["child0"]),
            certificate_from_json(j["child1"]),
        )
    else:
        raise ValueError("unknown justification kind %r" % kind)
    return Certificate(key, obj["det"], obj["verdict"], just)


def render_certificate(cert, indent=0):
    """Human-readable rendering of a certificate tree."""
    pad = "  " * indent
    d = from_canonical(cert.key)
    head = "%sdet %d, %d crossings: " % (pad, cert.det, d.num_crossings)
    j = cert.justification
    if isinstance(j, Unknot):
        return head + "unknot"
    if isinstance(j, AlternatingNonSplit):
        return head + "connected alternating diagram"
    if isinstance(j, DatabaseHit):
        return head + "database hit %r" % j.name
    if isinstance(j, Assumption):
        return head + "assumed QA: %r" % j.name
    lines = [head + "smooth crossing %d (%d = %d + %d)" % (
        j.site.crossing, cert.det, j.child0.det, j.child1.det)]
    lines.append(render_certificate(j.child0, indent + 1))
    lines.append(render_certificate(j.child1, indent + 1))
    return "\n".join(lines)
