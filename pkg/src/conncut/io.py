"""File formats.

Graph files (DIMACS-like)::

    c comment
    p cmc <n> <m>
    e <u> <v> <w>        1-indexed endpoints; weight as int, decimal, or p/q
    rot <v> <u1> <u2>... optional rotation system (cyclic neighbor order)
    outer <u> <v>        optional outer-face witness dart

Weights round-trip exactly: decimals parse to exact rationals and
non-integers are written back as p/q. Vertex labels are normally 1..n;
files using other labels are remapped (sorted order) with the mapping
kept for output.

Tree decompositions use the PACE-style text form (``s td``/``b`` lines),
and monotone-SAT instances use ``p pmsat`` headers with cp/cn clause
lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .graph import Graph
from .hardness import Gadget, PM3SatInstance
from .planar import Embedding, trace_faces
from .treewidth import TreeDecomposition


def _parse_weight(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"bad weight {tok!r}") from None


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


@dataclass
class GraphDocument:
    """A parsed graph file: the graph, the file's vertex labels, and the
    embedding when rotation lines were present."""

    graph: Graph
    labels: tuple
    embedding: Embedding | None = None

    def label_of(self, v: int):
        return self.labels[v]


def parse_graph(text: str) -> GraphDocument:
    n = m = None
    raw_edges: list = []
    raw_rot: dict = {}
    outer = None
    for ln, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        kind = parts[0]
        if kind == "p":
            if len(parts) != 4 or parts[1] != "cmc":
                raise InvalidInputError(f"line {ln}: bad header {line!r}")
            n, m = int(parts[2]), int(parts[3])
        elif kind == "e":
            if len(parts) != 4:
                raise InvalidInputError(f"line {ln}: edge needs 'e u v w'")
            raw_edges.append((int(parts[1]), int(parts[2]), _parse_weight(parts[3])))
        elif kind == "rot":
            v = int(parts[1])
            raw_rot[v] = [int(x) for x in parts[2:]]
        elif kind == "outer":
            if len(parts) != 3:
                raise InvalidInputError(f"line {ln}: outer needs 'outer u v'")
            outer = (int(parts[1]), int(parts[2]))
        else:
            raise InvalidInputError(f"line {ln}: unknown record {kind!r}")
    if n is None:
        raise InvalidInputError("missing 'p cmc' header")
    if len(raw_edges) != m:
        raise InvalidInputError(f"header promises {m} edges, file has {len(raw_edges)}")

    used = sorted({u for u, _, _ in raw_edges} | {v for _, v, _ in raw_edges}
                  | set(raw_rot) | ({outer[0], outer[1]} if outer else set()))
    if any(u < 1 for u in used):
        raise InvalidInputError("vertex labels must be >= 1")
    if not used or used[-1] <= n:
        labels = tuple(range(1, n + 1))
        pos = {lbl: lbl - 1 for lbl in labels}
    else:
        if len(used) != n:
            raise InvalidInputError(
                f"labels exceed n={n}; remap needs exactly n distinct labels, got {len(used)}")
        labels = tuple(used)
        pos = {lbl: i for i, lbl in enumerate(labels)}

    g = Graph(n, [(pos[u], pos[v], w) for u, v, w in raw_edges])
    emb = None
    if raw_rot:
        rotation = []
        for v in range(n):
            lbl = labels[v]
            if lbl in raw_rot:
                rotation.append(tuple(pos[x] for x in raw_rot[lbl]))
            else:
                if g.degree(v):
                    raise InvalidInputError(f"vertex {lbl} has edges but no rot line")
                rotation.append(())
        dart = (pos[outer[0]], pos[outer[1]]) if outer else None
        emb = trace_faces(g, rotation, dart)
    return GraphDocument(g, labels, emb)


def format_graph(doc: GraphDocument, comment: str | None = None) -> str:
    g = doc.graph
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"c {c}")
    lines.append(f"p cmc {g.n} {g.m}")
    lab = doc.labels
    for u, v, w in g.edges:
        lines.append(f"e {lab[u]} {lab[v]} {format_weight(w)}")
    if doc.embedding is not None:
        for v in range(g.n):
            r = doc.embedding.rotation[v]
            if r:
                lines.append("rot " + " ".join(str(lab[x]) for x in (v, *r)))
        f0 = doc.embedding.faces[doc.embedding.outer_face]
        u, v = f0[0]
        lines.append(f"outer {lab[u]} {lab[v]}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> GraphDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path, doc: GraphDocument, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(doc, comment))


# -- tree decompositions --------------------------------------------------

def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for ln, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise InvalidInputError(f"line {ln}: bad 's td' line")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            bid = int(parts[1])
            bags[bid] = frozenset(int(x) - 1 for x in parts[2:])
        else:
            if len(parts) != 2:
                raise InvalidInputError(f"line {ln}: expected a bag-tree edge")
            edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise InvalidInputError("missing 's td' line")
    nb = header[0]
    if sorted(bags) != list(range(1, nb + 1)):
        raise InvalidInputError("bag ids must be 1..#bags")
    td = TreeDecomposition([bags[i] for i in range(1, nb + 1)],
                           [(a - 1, b - 1) for a, b in edges])
    if td.width + 1 != header[1]:
        raise InvalidInputError(
            f"header says width+1={header[1]}, bags give {td.width + 1}")
    return td


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, b in enumerate(td.bags, 1):
        lines.append("b " + " ".join(str(x) for x in (i, *(v + 1 for v in sorted(b)))))
    for a, b in td.tree:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def read_td(path) -> TreeDecomposition:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_td(fh.read())


def write_td(path, td: TreeDecomposition, n: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_td(td, n))


# -- monotone SAT instances ------------------------------------------------

def parse_pmsat(text: str) -> PM3SatInstance:
    n = m = None
    pos: list = []
    neg: list = []
    for ln, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "pmsat":
                raise InvalidInputError(f"line {ln}: bad header")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "cp":
            pos.append(tuple(int(x) for x in parts[1:]))
        elif parts[0] == "cn":
            neg.append(tuple(int(x) for x in parts[1:]))
        else:
            raise InvalidInputError(f"line {ln}: unknown record {parts[0]!r}")
    if n is None:
        raise InvalidInputError("missing 'p pmsat' header")
    if len(pos) + len(neg) != m:
        raise InvalidInputError(f"header promises {m} clauses, file has {len(pos) + len(neg)}")
    return PM3SatInstance(n, tuple(pos), tuple(neg))


def format_pmsat(inst: PM3SatInstance) -> str:
    lines = [f"p pmsat {inst.n} {inst.m}"]
    for c in inst.positive_clauses:
        lines.append("cp " + " ".join(str(v) for v in c))
    for c in inst.negative_clauses:
        lines.append("cn " + " ".join(str(v) for v in c))
    return "\n".join(lines) + "\n"


def read_pmsat(path) -> PM3SatInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pmsat(fh.read())


def write_pmsat(path, inst: PM3SatInstance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pmsat(inst))


def gadget_metadata_json(gdt: Gadget) -> str:
    """Sidecar for a generated gadget: helper count, threshold, and the
    role of every vertex (1-indexed to match the graph file)."""
    return json.dumps({
        "K": gdt.k_helpers,
        "threshold": format_weight(gdt.threshold),
        "roles": {str(v + 1): role for v, role in enumerate(gdt.roles)},
    }, indent=2)
