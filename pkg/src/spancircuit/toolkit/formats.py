"""Flat-file formats: line-oriented graphs and matrices, JSON trees and instances.

Every format carries a ``format 1`` header.  Graph files::

    format 1
    v a
    e ab a b 1

Matrix files::

    format 1
    3 4
    1 0 0 1
    0 1 0 1
    0 0 1 1
    e1 e2 e3 e4

Conflict trees and solver instances are JSON objects with ``"format": 1`` and
a ``"kind"`` tag.  Serialization is canonical, so reading and writing again
reproduces the same bytes.
"""

from __future__ import annotations

import json
import re
from typing import Any

from ..decomp import BasicNode, ConflictTree, TreeEdge
from ..gf2 import BinaryMatroid, Gf2Matrix
from ..graph import MultiGraph

FORMAT = 1
INSTANCE_KINDS = ("graph", "matroid", "conflict-tree", "emwc", "ctse", "wmsc", "scir")
_INT = re.compile(r"-?\d+\Z")
_TOKEN = re.compile(r"\S+\Z")


class FormatError(ValueError):
    pass


def vertex_token(v) -> str:
    """Whitespace-free text form of a vertex; tuples join their parts with ``_``."""
    if isinstance(v, tuple):
        s = "_".join(str(x) for x in v)
    else:
        s = str(v)
    if not _TOKEN.match(s):
        raise FormatError(f"vertex {v!r} has no whitespace-free form")
    return s


def parse_vertex(tok: str):
    return int(tok) if _INT.match(tok) else tok


def _label(x: str) -> str:
    if not _TOKEN.match(x):
        raise FormatError(f"label {x!r} must be non-empty without whitespace")
    return x


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _header(lines: list[str]) -> list[str]:
    if not lines or lines[0].split() != ["format", str(FORMAT)]:
        raise FormatError(f"missing 'format {FORMAT}' header")
    return lines[1:]


# -- graphs -------------------------------------------------------------------


def dumps_graph(g: MultiGraph) -> str:
    out = [f"format {FORMAT}"]
    out += [f"v {vertex_token(v)}" for v in g.vertices]
    for x, e in g.edges.items():
        out.append(f"e {_label(x)} {vertex_token(e.u)} {vertex_token(e.v)} {e.weight}")
    return "\n".join(out) + "\n"


def loads_graph(text: str) -> MultiGraph:
    vertices, edges = [], []
    for n, line in enumerate(_header(_lines(text)), start=2):
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parse_vertex(parts[1]))
        elif parts[0] == "e" and len(parts) in (4, 5):
            w = 1
            if len(parts) == 5:
                if not _INT.match(parts[4]) or int(parts[4]) < 0:
                    raise FormatError(f"line {n}: weight must be a non-negative integer")
                w = int(parts[4])
            edges.append((parts[1], parse_vertex(parts[2]), parse_vertex(parts[3]), w))
        else:
            raise FormatError(f"line {n}: expected 'v <id>' or 'e <label> <u> <v> <w>'")
    known = set(vertices)
    for x, u, v, _ in edges:
        for end in (u, v):
            if end not in known:
                vertices.append(end)
                known.add(end)
    try:
        return MultiGraph(vertices, edges)
    except (ValueError, KeyError) as exc:
        raise FormatError(str(exc)) from exc


def _graph_json(g: MultiGraph) -> dict[str, Any]:
    return {
        "vertices": [vertex_token(v) for v in g.vertices],
        "edges": [[x, vertex_token(e.u), vertex_token(e.v), e.weight] for x, e in g.edges.items()],
    }


def _graph_from_json(d: dict) -> MultiGraph:
    try:
        vs = [parse_vertex(str(v)) for v in d["vertices"]]
        es = []
        for item in d["edges"]:
            x, u, v, w = item
            if not isinstance(w, int) or w < 0:
                raise FormatError(f"edge {x!r}: weight must be a non-negative integer")
            es.append((_label(str(x)), parse_vertex(str(u)), parse_vertex(str(v)), w))
        return MultiGraph(vs, es)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed graph object: {exc}") from exc


# -- matrices -------------------------------------------------------------------


def dumps_matrix(m: BinaryMatroid) -> str:
    rows = m.matrix.rows
    n = len(m.labels)
    out = [f"format {FORMAT}", f"{len(rows)} {n}"]
    for r in rows:
        out.append(" ".join(str(r >> j & 1) for j in range(n)))
    out.append(" ".join(_label(x) for x in m.labels))
    return "\n".join(out) + "\n"


def loads_matrix(text: str) -> BinaryMatroid:
    lines = _header(_lines(text))
    if not lines:
        raise FormatError("missing 'rows cols' line")
    dims = lines[0].split()
    if len(dims) != 2 or not all(_INT.match(x) for x in dims):
        raise FormatError("second line must be 'rows cols'")
    r, c = int(dims[0]), int(dims[1])
    if r < 0 or c < 0 or len(lines) != r + 2:
        raise FormatError(f"expected {r} matrix rows and one label line")
    rows = []
    for line in lines[1:r + 1]:
        parts = line.split()
        if len(parts) != c or any(p not in ("0", "1") for p in parts):
            raise FormatError(f"matrix row {line!r} is not {c} entries of 0/1")
        rows.append([int(p) for p in parts])
    labels = lines[-1].split()
    if len(labels) != c or len(set(labels)) != c:
        raise FormatError(f"label line must hold {c} distinct labels")
    return BinaryMatroid(Gf2Matrix.from_rows(rows, c), tuple(labels))


# -- conflict trees -------------------------------------------------------------


def node_to_json(node: BasicNode) -> dict[str, Any]:
    if node.kind == "r10":
        return {
            "kind": "r10",
            "labels": list(node.r10_labels),
            "parallels": [list(p) for p in node.parallels],
            "deleted": sorted(node.deleted),
            "weights": dict(node.r10_weights),
        }
    return {"kind": node.kind, **_graph_json(node.graph)}


def node_from_json(d: dict) -> BasicNode:
    if not isinstance(d, dict):
        raise FormatError("node must be an object")
    kind = d.get("kind")
    try:
        if kind == "r10":
            weights = d.get("weights", {})
            if not all(isinstance(v, int) and v >= 0 for v in weights.values()):
                raise FormatError("R10 weights must be non-negative integers")
            return BasicNode.r10(
                [str(x) for x in d["labels"]],
                [(str(a), str(b)) for a, b in d.get("parallels", [])],
                [str(x) for x in d.get("deleted", [])],
                weights,
            )
        if kind in ("graphic", "cographic"):
            return BasicNode(kind, _graph_from_json(d))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {kind} node: {exc}") from exc
    raise FormatError(f"unknown node kind {kind!r}")


def tree_to_json(tree: ConflictTree) -> dict[str, Any]:
    return {
        "format": FORMAT,
        "kind": "conflict-tree",
        "root": tree.root,
        "nodes": [node_to_json(n) for n in tree.nodes],
        "edges": [{"nodes": [e.a, e.b], "shared": sorted(e.shared)} for e in tree.edges],
    }


def tree_from_json(d: dict) -> ConflictTree:
    _check_kind(d, "conflict-tree")
    try:
        nodes = tuple(node_from_json(n) for n in d["nodes"])
        edges = []
        for e in d.get("edges", []):
            a, b = e["nodes"]
            edges.append(TreeEdge(int(a), int(b), frozenset(str(x) for x in e["shared"])))
        return ConflictTree(nodes, tuple(edges), int(d.get("root", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed conflict tree: {exc}") from exc


def _check_kind(d, kind: str) -> None:
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    if d.get("format") != FORMAT:
        raise FormatError(f"missing \"format\": {FORMAT}")
    if d.get("kind") != kind:
        raise FormatError(f"expected kind {kind!r}, got {d.get('kind')!r}")


def dumps_json(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def loads_json(text: str) -> dict:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    return d


def dumps_tree(tree: ConflictTree) -> str:
    return dumps_json(tree_to_json(tree))


def loads_tree(text: str) -> ConflictTree:
    return tree_from_json(loads_json(text))


# -- solver instances -----------------------------------------------------------


def _labels(d: dict, key: str) -> frozenset[str]:
    v = d.get(key, [])
    if not isinstance(v, list):
        raise FormatError(f"{key!r} must be a list")
    return frozenset(str(x) for x in v)


def _int(d: dict, key: str) -> int:
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"{key!r} must be an integer")
    return v


def instance_to_json(kind: str, **fields) -> dict[str, Any]:
    """JSON object for a solver instance.

    ``emwc``: graph, terminals, r1, r2, k.  ``ctse``: graph, terminals, k.
    ``wmsc``: tree, terminals, budget.  ``scir``: tree, terminals.
    """
    out: dict[str, Any] = {"format": FORMAT, "kind": kind}
    if kind in ("emwc", "ctse"):
        out["graph"] = _graph_json(fields["graph"])
        out["terminals"] = sorted(fields["terminals"])
        out["k"] = int(fields["k"])
        if kind == "emwc":
            out["r1"] = sorted(vertex_token(v) for v in fields.get("r1", ()))
            out["r2"] = sorted(vertex_token(v) for v in fields.get("r2", ()))
    elif kind in ("wmsc", "scir"):
        out["tree"] = tree_to_json(fields["tree"])
        out["terminals"] = sorted(fields["terminals"])
        if kind == "wmsc":
            out["budget"] = int(fields["budget"])
    else:
        raise FormatError(f"unknown instance kind {kind!r}")
    return out


def instance_from_json(d: dict) -> tuple[str, dict[str, Any]]:
    """Inverse of :func:`instance_to_json`: ``(kind, fields)``."""
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise FormatError(f"missing \"format\": {FORMAT}")
    kind = d.get("kind")
    fields: dict[str, Any] = {"terminals": _labels(d, "terminals")}
    if kind in ("emwc", "ctse"):
        fields["graph"] = _graph_from_json(d.get("graph") or {})
        fields["k"] = _int(d, "k")
        if kind == "emwc":
            fields["r1"] = frozenset(parse_vertex(x) for x in _labels(d, "r1"))
            fields["r2"] = frozenset(parse_vertex(x) for x in _labels(d, "r2"))
    elif kind in ("wmsc", "scir"):
        fields["tree"] = tree_from_json(d.get("tree"))
        if kind == "wmsc":
            fields["budget"] = _int(d, "budget")
    else:
        raise FormatError(f"unknown instance kind {kind!r}")
    return kind, fields


def dumps_instance(kind: str, **fields) -> str:
    return dumps_json(instance_to_json(kind, **fields))


def loads_instance(text: str) -> tuple[str, dict[str, Any]]:
    return instance_from_json(loads_json(text))


def sniff_kind(text: str) -> str:
    """Kind tag of any supported file."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        kind = loads_json(text).get("kind")
        if kind not in INSTANCE_KINDS:
            raise FormatError(f"unknown kind {kind!r}")
        return kind
    lines = _header(_lines(text))
    if lines and len(lines[0].split()) == 2 and all(_INT.match(x) for x in lines[0].split()):
        return "matroid"
    return "graph"
