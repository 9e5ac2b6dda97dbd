"""JSON documents for double groupoids and their deformation data.

Ids are p#, h#, v#, b# on output; any distinct strings are accepted on
input.  Rationals travel as "p/q" strings in lowest terms.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import numpy as np

from .cocycles import SigmaCochain, TauCochain, ThreeCocycle
from .double import DoubleGroupoid
from .groupoid import UNDEF, Groupoid, from_tables

FORMAT = "dgpd/1"


class ParseError(ValueError):
    pass


def schema() -> dict:
    return json.loads(resources.files("dgq").joinpath("schema/dgpd.schema.json").read_text())


def rational(s: str) -> Fraction:
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational: {s!r}") from e
    if str(q) != s.lstrip("+"):
        raise ParseError(f"rational {s!r} is not in lowest terms (expected {q})")
    return q


def fmt(q) -> str:
    return str(Fraction(q))


# -- dumping ----------------------------------------------------------------------------

def _triples(table: np.ndarray, a: str, c: str) -> list:
    rows, cols = np.nonzero(table >= 0)
    return [[f"{a}{i}", f"{a}{j}", f"{c}{int(table[i, j])}"] for i, j in zip(rows.tolist(), cols.tolist())]


def to_document(T: DoubleGroupoid, theta=None, sigma: SigmaCochain | None = None,
                tau: TauCochain | None = None) -> dict:
    H, V = T.H, T.V
    doc = {
        "format": FORMAT,
        "name": T.name,
        "points": [{"id": f"p{i}", "label": str(o)} for i, o in enumerate(T.points)],
        "h_arrows": [{"id": f"h{i}", "l": f"p{int(H.source[i])}", "r": f"p{int(H.target[i])}", "label": str(a)}
                     for i, a in enumerate(H.arrows)],
        "v_arrows": [{"id": f"v{i}", "t": f"p{int(V.source[i])}", "b": f"p{int(V.target[i])}", "label": str(a)}
                     for i, a in enumerate(V.arrows)],
        "h_arrow_compose": _triples(H.comp, "h", "h"),
        "v_arrow_compose": _triples(V.comp, "v", "v"),
        "boxes": [{"id": f"b{A}", "t": f"h{int(T.t[A])}", "b": f"h{int(T.b[A])}",
                   "l": f"v{int(T.l[A])}", "r": f"v{int(T.r[A])}", "label": str(lab)}
                  for A, lab in enumerate(T.boxes)],
        "hcompose": _triples(T.hcomp, "b", "b"),
        "vcompose": _triples(T.vcomp, "b", "b"),
    }
    if theta is not None:
        doc["theta"] = {f"p{P}": fmt(theta[P]) for P in range(T.n_points)}
    if sigma is not None:
        doc["sigma"] = [[f"b{A}", f"b{B}", fmt(v)] for (A, B), v in sorted(sigma.values.items())]
    if tau is not None:
        doc["tau"] = [[f"b{A}", f"b{B}", fmt(v)] for (A, B), v in sorted(tau.values.items())]
    return doc


def dumps(doc: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def dump(T: DoubleGroupoid, **extra) -> str:
    return dumps(to_document(T, **extra))


# -- loading ----------------------------------------------------------------------------

class Loaded:
    """A parsed document: the double groupoid plus any optional sections."""

    def __init__(self, T: DoubleGroupoid, doc: dict, ids: dict):
        self.T = T
        self.doc = doc
        self.ids = ids      # section -> {id: index}

    def theta(self):
        if "theta" not in self.doc:
            return None
        return theta_from_mapping(self.T, self.doc["theta"], self.ids["points"])

    def sigma(self) -> SigmaCochain | None:
        return self._pairs("sigma", SigmaCochain)

    def tau(self) -> TauCochain | None:
        return self._pairs("tau", TauCochain)

    def _pairs(self, key, cls):
        if key not in self.doc:
            return None
        ids = self.ids["boxes"]
        values = {}
        for a, b, q in self.doc[key]:
            values[(_ref(ids, a, key), _ref(ids, b, key))] = rational(q)
        return cls(self.T, values)

    def omega(self) -> ThreeCocycle | None:
        if "omega" not in self.doc:
            return None
        return omega_from_document(self.doc["omega"])


def theta_from_mapping(T: DoubleGroupoid, mapping: dict, point_ids: dict):
    from .wha import ThetaWeights

    vals = [None] * T.n_points
    for k, q in mapping.items():
        vals[_ref(point_ids, k, "theta")] = rational(q)
    if any(v is None for v in vals):
        raise ParseError("theta must give a weight at every point")
    if any(v == 0 for v in vals):
        raise ParseError("theta weights must be nonzero")
    return ThetaWeights(tuple(vals))


def omega_from_document(d: dict) -> ThreeCocycle:
    from .groups import named_group

    try:
        G = named_group(d["group"])
    except (ValueError, IndexError) as e:
        raise ParseError(str(e)) from e
    by_label = {str(a): a for a in G.arrows}
    values = {}
    for row in d["values"]:
        *labels, q = row
        try:
            key = tuple(by_label[str(x)] for x in labels)
        except KeyError as e:
            raise ParseError(f"omega refers to unknown element {e}") from e
        values[key] = rational(str(q))
    return ThreeCocycle(G, values)


def _ref(ids: dict, key: str, where: str) -> int:
    try:
        return ids[key]
    except KeyError:
        raise ParseError(f"{where}: unknown id {key!r}") from None


def _index(items: list, where: str) -> dict:
    ids = {}
    for i, it in enumerate(items):
        if it["id"] in ids:
            raise ParseError(f"{where}: duplicate id {it['id']!r}")
        ids[it["id"]] = i
    return ids


def _table(triples: list, ids: dict, out_ids: dict, n: int, where: str) -> np.ndarray:
    table = np.full((n, n), UNDEF, dtype=np.int64)
    for a, b, c in triples:
        i, j = _ref(ids, a, where), _ref(ids, b, where)
        if table[i, j] != UNDEF:
            raise ParseError(f"{where}: two entries for ({a}, {b})")
        table[i, j] = _ref(out_ids, c, where)
    return table


def _arrow_groupoid(points, pids, arrows, src_key, tgt_key, triples, where) -> tuple[Groupoid, dict]:
    aids = _index(arrows, where)
    src = [_ref(pids, a[src_key], where) for a in arrows]
    tgt = [_ref(pids, a[tgt_key], where) for a in arrows]
    comp = _table(triples, aids, aids, len(arrows), where + " compose")
    labels = tuple(a.get("label", a["id"]) for a in arrows)
    return from_tables(points, labels, src, tgt, comp), aids


def _identity_boxes(T_sides, hcomp, vcomp, H: Groupoid, V: Groupoid):
    t, b, l, r = T_sides
    n = len(t)
    vid = np.full(H.n_arrows, UNDEF, dtype=np.int64)
    hid = np.full(V.n_arrows, UNDEF, dtype=np.int64)
    for A in range(n):
        if t[A] == b[A] and V.identity[H.source[t[A]]] == l[A] and V.identity[H.target[t[A]]] == r[A] \
                and vcomp[A, A] == A and vid[t[A]] == UNDEF:
            vid[t[A]] = A
        if l[A] == r[A] and H.identity[V.source[l[A]]] == t[A] and H.identity[V.target[l[A]]] == b[A] \
                and hcomp[A, A] == A and hid[l[A]] == UNDEF:
            hid[l[A]] = A
    return vid, hid


def from_document(doc: dict) -> Loaded:
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise ParseError(f"schema: {e.message} at /{path}") from None
    pids = _index(doc["points"], "points")
    points = tuple(p.get("label", p["id"]) for p in doc["points"])
    H, hids = _arrow_groupoid(points, pids, doc["h_arrows"], "l", "r", doc["h_arrow_compose"], "h_arrows")
    V, vids = _arrow_groupoid(points, pids, doc["v_arrows"], "t", "b", doc["v_arrow_compose"], "v_arrows")
    boxes = doc["boxes"]
    bids = _index(boxes, "boxes")
    sides = [np.array([_ref(ids, B[k], "boxes") for B in boxes], dtype=np.int64)
             for k, ids in (("t", hids), ("b", hids), ("l", vids), ("r", vids))]
    n = len(boxes)
    hcomp = _table(doc["hcompose"], bids, bids, n, "hcompose")
    vcomp = _table(doc["vcompose"], bids, bids, n, "vcompose")
    vid, hid = _identity_boxes(sides, hcomp, vcomp, H, V)
    labels = tuple(B.get("label", B["id"]) for B in boxes)
    T = DoubleGroupoid(H, V, labels, *sides, hcomp, vcomp, vid, hid, name=doc.get("name", ""))
    loaded = Loaded(T, doc, {"points": pids, "h_arrows": hids, "v_arrows": vids, "boxes": bids})
    # parse the optional sections eagerly so malformed data is a parse error
    loaded.theta(), loaded.sigma(), loaded.tau(), loaded.omega()
    return loaded


def loads(text: str) -> Loaded:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    return from_document(doc)


# -- csv --------------------------------------------------------------------------------

def boxes_csv(T: DoubleGroupoid) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "t", "b", "l", "r", "label"])
    for A, lab in enumerate(T.boxes):
        w.writerow([f"b{A}", f"h{int(T.t[A])}", f"h{int(T.b[A])}", f"v{int(T.l[A])}", f"v{int(T.r[A])}", str(lab)])
    return buf.getvalue()
