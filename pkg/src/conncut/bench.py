"""Benchmark harness: run generated instances through solvers, verify
every reported cut, and emit machine-readable records.

A suite is a JSON object::

    {"instances": [{"family": "grid", "params": {"rows": 3, "cols": 3},
                    "seed": 0}, ...],
     "algorithms": [{"name": "bcmc"}, {"name": "ptas",
                    "params": {"epsilon": "1/2"}}, ...],
     "oracle": true}

Every instance runs under every algorithm. Records are re-verified
(connectivity plus cut recomputation) before emission; failures become
flagged records rather than being dropped. Output is byte-stable for a
fixed suite except for the wall-time column.
"""

from __future__ import annotations

import io as _io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import bcmc_approx, random_half_cmc, wcmc_approx
from .errors import ConncutError, InvalidInputError, SizeGuardError
from .exact import BRUTE_FORCE_GUARD, brute_force_cmc, solve_treewidth
from .generators import Instance, generate_instance
from .graph import Solution, cut_weight, is_connected_induced
from .planar import ptas_solve

CSV_COLUMNS = ("instance", "family", "params", "seed", "algorithm", "algo_params",
               "n", "m", "cut", "optimum", "ratio", "wall_ms", "feasible", "verified", "error")


@dataclass
class ExperimentRecord:
    instance: str
    family: str
    params: str
    seed: int
    algorithm: str
    algo_params: str
    n: int
    m: int
    cut: str = ""
    optimum: str = ""
    ratio: str = ""
    wall_ms: float = 0.0
    feasible: bool = False
    verified: bool = False
    error: str = ""

    def row(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]


def _run_algorithm(name: str, params: dict, inst: Instance) -> Solution:
    g = inst.graph
    seed = int(params.get("seed", inst.seed))
    if name == "bcmc":
        return bcmc_approx(g, seed)
    if name == "wcmc":
        return wcmc_approx(g, Fraction(str(params.get("epsilon", 1))), seed)
    if name == "randomhalf":
        return random_half_cmc(g, int(params.get("trials", 200)), seed)
    if name == "bf":
        return brute_force_cmc(g)
    if name == "tw":
        return solve_treewidth(g)
    if name == "ptas":
        if inst.embedding is None:
            raise InvalidInputError(f"instance {inst.name} has no embedding for ptas")
        return ptas_solve(g, inst.embedding, Fraction(str(params.get("epsilon", 1))))
    raise InvalidInputError(f"unknown algorithm {name!r}")


def run_bench(suite: dict) -> list:
    """Execute a suite and return verified records sorted by instance and
    algorithm name."""
    records = []
    want_oracle = bool(suite.get("oracle", False))
    algorithms = suite.get("algorithms") or [{"name": "bcmc"}]
    for spec in suite.get("instances", ()):
        inst = generate_instance(spec["family"], spec.get("params"), int(spec.get("seed", 0)))
        optimum = None
        if want_oracle and 1 <= inst.graph.n <= BRUTE_FORCE_GUARD:
            optimum = brute_force_cmc(inst.graph).cut_value
        for algo in algorithms:
            name = algo["name"]
            params = dict(algo.get("params") or {})
            rec = ExperimentRecord(
                instance=inst.name, family=inst.family,
                params=json.dumps(spec.get("params") or {}, sort_keys=True),
                seed=inst.seed, algorithm=name,
                algo_params=json.dumps(params, sort_keys=True),
                n=inst.graph.n, m=inst.graph.m)
            t0 = time.perf_counter()
            try:
                sol = _run_algorithm(name, params, inst)
                rec.wall_ms = (time.perf_counter() - t0) * 1000.0
                rec.cut = str(sol.cut_value)
                rec.feasible = bool(sol.vertices) and sol.connected
                recomputed = cut_weight(inst.graph, sol.vertices)
                rec.verified = (recomputed == sol.cut_value
                                and is_connected_induced(inst.graph, sol.vertices))
                if optimum is not None:
                    rec.optimum = str(optimum)
                    if sol.cut_value:
                        rec.ratio = str(Fraction(optimum) / sol.cut_value)
            except ConncutError as exc:
                rec.wall_ms = (time.perf_counter() - t0) * 1000.0
                rec.error = f"{type(exc).__name__}: {exc}"
            records.append(rec)
    records.sort(key=lambda r: (r.instance, r.algorithm, r.algo_params))
    return records


def emit_csv(records) -> str:
    import csv

    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def emit_json(records) -> str:
    return json.dumps([dict(zip(CSV_COLUMNS, r.row())) for r in records], indent=2)
