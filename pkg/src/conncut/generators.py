"""Deterministic instance generators.

Every family is a pure function of (params, seed); planar families also
emit a rotation system so the planar solver can run on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError
from .graph import Graph
from .planar import Embedding, trace_faces


@dataclass
class Instance:
    graph: Graph
    embedding: Embedding | None
    family: str
    params: dict
    seed: int

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})#{self.seed}"


def _gnp_edges(n: int, p: float, rng: random.Random) -> list:
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                out.append((u, v))
    return out


def _grid(rows: int, cols: int):
    def vid(i, j):
        return i * cols + j

    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1), 1))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j), 1))
    g = Graph(rows * cols, edges)
    rotation = []
    for i in range(rows):
        for j in range(cols):
            order = []
            if i > 0:
                order.append(vid(i - 1, j))  # north
            if j + 1 < cols:
                order.append(vid(i, j + 1))  # east
            if i + 1 < rows:
                order.append(vid(i + 1, j))  # south
            if j > 0:
                order.append(vid(i, j - 1))  # west
            rotation.append(tuple(order))
    return g, trace_faces(g, rotation)


def _outerplanar(n: int, chord_p: float, rng: random.Random):
    if n < 3:
        raise InvalidInputError("outerplanar family needs n >= 3")
    chords = []

    def tri(lo, hi):
        if hi - lo < 2:
            return
        k = rng.randint(lo + 1, hi - 1)
        if k - lo >= 2:
            chords.append((lo, k))
        tri(lo, k)
        if hi - k >= 2:
            chords.append((k, hi))
        tri(k, hi)

    tri(0, n - 1)
    kept = [c for c in chords if rng.random() < chord_p]
    edges = [(i, (i + 1) % n, 1) for i in range(n)] + [(u, v, 1) for u, v in kept]
    g = Graph(n, edges)
    # convex-polygon rotation: neighbors in angular order around the cycle
    rotation = []
    for v in range(g.n):
        nbrs = [u for u, _ in g.adj[v]]
        rotation.append(tuple(sorted(nbrs, key=lambda u: (u - v) % n)))
    return g, trace_faces(g, rotation)


def generate_instance(family: str, params: dict | None = None, seed: int = 0) -> Instance:
    """Build one instance. Unknown families and bad parameters raise
    InvalidInputError. Identical inputs always produce identical output."""
    params = dict(params or {})
    rng = random.Random(seed)
    emb = None
    try:
        if family == "path":
            n = int(params["n"])
            g = Graph(n, [(i, i + 1, 1) for i in range(n - 1)])
        elif family == "cycle":
            n = int(params["n"])
            if n < 3:
                raise InvalidInputError("cycle needs n >= 3")
            g = Graph(n, [(i, (i + 1) % n, 1) for i in range(n)])
        elif family == "clique":
            n = int(params["n"])
            g = Graph(n, [(u, v, 1) for u in range(n) for v in range(u + 1, n)])
        elif family == "star":
            n = int(params["n"])
            g = Graph(n, [(0, i, 1) for i in range(1, n)])
        elif family == "gnp":
            n = int(params["n"])
            p = float(params.get("p", 0.5))
            g = Graph(n, [(u, v, 1) for u, v in _gnp_edges(n, p, rng)])
        elif family == "grid":
            g, emb = _grid(int(params["rows"]), int(params["cols"]))
        elif family == "outerplanar":
            g, emb = _outerplanar(int(params["n"]), float(params.get("chord_p", 0.5)), rng)
        elif family == "hypercube":
            d = int(params["d"])
            n = 1 << d
            g = Graph(n, [(u, u ^ (1 << b), 1) for u in range(n) for b in range(d)
                          if u < (u ^ (1 << b))])
        elif family == "subdivided-random":
            n = int(params["n"])
            p = float(params.get("p", 0.4))
            edges = []
            nxt = n
            for u, v in _gnp_edges(n, p, rng):
                inner = rng.randint(0, 3)
                chain = [u] + [nxt + i for i in range(inner)] + [v]
                nxt += inner
                for a, b in zip(chain, chain[1:]):
                    edges.append((a, b, rng.choice([0, 1])))
            g = Graph(nxt, edges)
        elif family == "zero-one-random":
            n = int(params["n"])
            p = float(params.get("p", 0.5))
            p1 = float(params.get("p1", 0.7))
            g = Graph(n, [(u, v, 1 if rng.random() < p1 else 0)
                          for u, v in _gnp_edges(n, p, rng)])
        elif family == "weighted-random":
            n = int(params["n"])
            p = float(params.get("p", 0.5))
            wmax = int(params.get("wmax", 10))
            den = int(params.get("den", 4))
            g = Graph(n, [(u, v, Fraction(rng.randint(0, wmax * den), den))
                          for u, v in _gnp_edges(n, p, rng)])
        else:
            raise InvalidInputError(f"unknown family {family!r}")
    except KeyError as exc:
        raise InvalidInputError(f"family {family!r} is missing parameter {exc}") from None
    return Instance(g, emb, family, params, seed)


FAMILIES = ("path", "cycle", "clique", "star", "gnp", "grid", "outerplanar",
            "hypercube", "subdivided-random", "zero-one-random", "weighted-random")
