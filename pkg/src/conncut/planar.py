"""Planar pipeline: rotation-system embeddings, radial edge coloring,
color-class contraction, and the (1-eps) solver.

The radial coloring levels every edge by the breadth-first depth of its
incident faces in the vertex-face incidence graph, starting from the
outer face, and reduces levels mod k. Edges sharing a vertex then land in
classes differing by at most one (cyclically), so contracting one class
out of every three consecutive ones can only destroy cut edges from that
group of three. Trying every group and solving each contracted graph
exactly yields a (1-eps) approximation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import InvalidInputError, InvariantViolationError, SizeGuardError
from .exact import WIDTH_GUARD, dp_solve
from .graph import ContractionMap, Graph, Solution, contract_vertex_sets, cut_weight, \
    is_connected_induced
from .treewidth import ValidationResult, build_decomposition, make_nice


@dataclass(frozen=True)
class Embedding:
    """Combinatorial embedding: for every vertex the cyclic neighbor
    order, plus the derived face list (as dart cycles) and a designated
    outer face."""

    rotation: tuple
    faces: tuple
    outer_face: int

    @property
    def face_count(self) -> int:
        return len(self.faces)


def trace_faces(g: Graph, rotation, outer_dart=None) -> Embedding:
    """Compute the face cycles of a rotation system.

    rotation[v] must list exactly the neighbors of v, each once, in
    cyclic order. Components with edges must satisfy v - e + f = 2, else
    the rotation does not describe a planar (sphere) embedding. The outer
    face is the one containing outer_dart when given, otherwise the face
    with the most darts (lowest id on ties).
    """
    rotation = tuple(tuple(r) for r in rotation)
    if len(rotation) != g.n:
        raise InvalidInputError("rotation must cover every vertex")
    for v in range(g.n):
        expect = sorted(u for u, _ in g.adj[v])
        if sorted(rotation[v]) != expect:
            raise InvalidInputError(
                f"rotation at vertex {v} lists {sorted(rotation[v])}, expected {expect}")

    succ = {}
    for v in range(g.n):
        r = rotation[v]
        for i, u in enumerate(r):
            succ[(v, u)] = r[(i + 1) % len(r)]

    darts = [(u, v) for u in range(g.n) for v in rotation[u]]
    face_of: dict = {}
    faces = []
    for d in darts:
        if d in face_of:
            continue
        cycle = []
        cur = d
        while cur not in face_of:
            face_of[cur] = len(faces)
            cycle.append(cur)
            u, v = cur
            cur = (v, succ[(v, u)])
        faces.append(tuple(cycle))

    # Euler check per connected component (components with no edges are
    # single vertices; trivially embeddable).
    comp_of = [-1] * g.n
    cid = 0
    for r in range(g.n):
        if comp_of[r] >= 0:
            continue
        stack = [r]
        comp_of[r] = cid
        while stack:
            x = stack.pop()
            for y, _ in g.adj[x]:
                if comp_of[y] < 0:
                    comp_of[y] = cid
                    stack.append(y)
        cid += 1
    vcount = [0] * cid
    ecount = [0] * cid
    fcount = [0] * cid
    for v in range(g.n):
        vcount[comp_of[v]] += 1
    for u, v, _ in g.edges:
        ecount[comp_of[u]] += 1
    for f in faces:
        fcount[comp_of[f[0][0]]] += 1
    for c in range(cid):
        if ecount[c] == 0:
            continue
        if vcount[c] - ecount[c] + fcount[c] != 2:
            raise InvalidInputError(
                "not a planar embedding: component fails v - e + f = 2 "
                f"({vcount[c]} - {ecount[c]} + {fcount[c]})")

    if outer_dart is not None:
        outer_dart = tuple(outer_dart)
        if outer_dart not in face_of:
            raise InvalidInputError(f"outer dart {outer_dart} does not exist")
        outer = face_of[outer_dart]
    else:
        outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    return Embedding(rotation, tuple(faces), outer)


@dataclass(frozen=True)
class EdgeColoring:
    """Edge classes 0..k-1 from radial levels, with the touching-edge
    validation report attached."""

    k: int
    class_of: tuple
    levels: tuple
    validation: ValidationResult

    def class_edges(self, cls: int) -> list:
        return [i for i, c in enumerate(self.class_of) if c == cls]


def _cyclic_diff(a: int, b: int, k: int) -> int:
    d = (a - b) % k
    return min(d, k - d)


def validate_touching_classes(g: Graph, k: int, class_of) -> ValidationResult:
    """Every pair of edges sharing a vertex must have classes differing by
    at most one, cyclically."""
    problems = []
    for v in range(g.n):
        inc = [i for _, i in g.adj[v]]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                ca, cb = class_of[inc[a]], class_of[inc[b]]
                if _cyclic_diff(ca, cb, k) > 1:
                    problems.append(
                        f"edges {g.edges[inc[a]][:2]} (class {ca}) and "
                        f"{g.edges[inc[b]][:2]} (class {cb}) touch at {v}")
    return ValidationResult(not problems, problems)


def radial_coloring(g: Graph, emb: Embedding, k: int) -> EdgeColoring:
    """Level edges by face depth from the outer face and reduce mod k.

    Face depth is breadth-first distance in the vertex-face incidence
    graph divided by two; an edge's level is the smaller depth of its two
    incident faces. The touching-edge property is validated and reported,
    never assumed.
    """
    if k < 2:
        raise InvalidInputError("need at least two classes")
    if g.n and not is_connected_induced(g, range(g.n)):
        raise InvalidInputError("radial coloring expects a connected graph")

    face_verts = [sorted({u for u, _ in f}) for f in emb.faces]
    vert_faces: dict[int, list] = {v: [] for v in range(g.n)}
    for fid, vs in enumerate(face_verts):
        for v in vs:
            vert_faces[v].append(fid)

    INF = -1
    flevel = [INF] * len(emb.faces)
    vlevel = [INF] * g.n
    flevel[emb.outer_face] = 0
    frontier_f = [emb.outer_face]
    depth = 0
    while frontier_f:
        next_v = []
        for f in frontier_f:
            for v in face_verts[f]:
                if vlevel[v] == INF:
                    vlevel[v] = 2 * depth + 1
                    next_v.append(v)
        frontier_f = []
        for v in next_v:
            for f in vert_faces[v]:
                if flevel[f] == INF:
                    flevel[f] = 2 * depth + 2
                    frontier_f.append(f)
        depth += 1

    face_of_dart = {}
    for fid, f in enumerate(emb.faces):
        for d in f:
            face_of_dart[d] = fid
    levels = []
    for u, v, _ in g.edges:
        f1 = face_of_dart[(u, v)]
        f2 = face_of_dart[(v, u)]
        lv = min(flevel[f1], flevel[f2])
        if lv == INF:
            raise InvariantViolationError("radial breadth-first search missed a face")
        levels.append(lv // 2)
    class_of = tuple(lv % k for lv in levels)
    report = validate_touching_classes(g, k, class_of)
    return EdgeColoring(k, class_of, tuple(levels), report)


def contract_color_class(g: Graph, coloring: EdgeColoring, class_id: int) -> tuple:
    """Contract every edge of one class; merged parallel edges sum their
    weights so lifted cuts never lose weight."""
    if not (0 <= class_id < coloring.k):
        raise InvalidInputError(f"class {class_id} out of range")
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx in coloring.class_edges(class_id):
        u, v, _ = g.edges[idx]
        parent[find(u)] = find(v)
    groups: dict[int, list] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    parts = sorted(groups.values(), key=min)
    return contract_vertex_sets(g, parts)


# -- the (1 - eps) pipeline ------------------------------------------------

@dataclass
class GroupReport:
    group: int
    middle_class: int
    contracted_n: int = 0
    contracted_m: int = 0
    width: int = -1
    dp_value: str = ""
    lifted_value: str = ""
    skipped: bool = False
    note: str = ""


@dataclass
class PtasRunReport:
    eps: str
    k: int
    coloring_valid: bool
    groups: list = field(default_factory=list)
    chosen_group: int = -1
    exact: bool = True

    def to_json(self) -> str:
        return json.dumps({
            "eps": self.eps,
            "k": self.k,
            "coloring_valid": self.coloring_valid,
            "chosen_group": self.chosen_group,
            "exact": self.exact,
            "groups": [vars(gr) for gr in self.groups],
        }, indent=2)


def ptas_solve_report(g: Graph, emb: Embedding, eps) -> tuple:
    """(1-eps) approximation on a connected planar embedding, with the
    per-group run report.

    k = 3 * ceil(1/eps) classes are grouped in consecutive triples
    (cyclically); for each group the middle class is contracted, the
    contracted graph is solved exactly via the treewidth DP, and the
    solution is lifted by expanding the contraction parts. The best
    lifted true cut is returned. Groups whose contracted graph exceeds
    the DP width guard are skipped with a note; if every group skips, the
    general-weight approximation is returned flagged non-exact.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidInputError("eps must be positive")
    if eps > 1:
        eps = Fraction(1)
    if g.n == 0:
        raise InvalidInputError("empty graph")
    if not is_connected_induced(g, range(g.n)):
        raise InvalidInputError("planar solver expects a connected graph")

    groups_count = ceil(1 / eps)
    k = 3 * groups_count
    coloring = radial_coloring(g, emb, k)
    report = PtasRunReport(eps=str(eps), k=k, coloring_valid=bool(coloring.validation))

    best: Solution | None = None
    for j in range(groups_count):
        # group j covers classes {3j, 3j+1, 3j+2}; contracting the middle
        # one can only destroy cut edges whose class lies in this group
        middle = 3 * j + 1
        gr = GroupReport(group=j, middle_class=middle)
        h, mu = contract_color_class(g, coloring, middle)
        gr.contracted_n, gr.contracted_m = h.n, h.m
        try:
            td = build_decomposition(h)
            gr.width = td.width
            if td.width > WIDTH_GUARD:
                raise SizeGuardError(f"width {td.width} over guard")
            sol_h = dp_solve(h, make_nice(td))
        except SizeGuardError as exc:
            gr.skipped = True
            gr.note = str(exc)
            report.groups.append(gr)
            continue
        gr.dp_value = str(sol_h.cut_value)
        lifted = Solution.evaluate(g, mu.lift(sol_h.vertices))
        if not lifted.connected:
            raise InvariantViolationError("expanded contraction parts lost connectivity")
        if lifted.cut_value < sol_h.cut_value:
            raise InvariantViolationError("expanding a contraction lost cut weight")
        gr.lifted_value = str(lifted.cut_value)
        report.groups.append(gr)
        if best is None or lifted.cut_value > best.cut_value:
            best = lifted
            report.chosen_group = j
    if best is None:
        from .approx import wcmc_approx

        report.exact = False
        best = wcmc_approx(g, 1, seed=0)
    return best, report


def ptas_solve(g: Graph, emb: Embedding, eps) -> Solution:
    """See ptas_solve_report; returns just the solution."""
    sol, _ = ptas_solve_report(g, emb, eps)
    return sol
