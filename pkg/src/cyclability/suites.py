"""Verification suites: builder verdicts checked against the exhaustive oracle.

Each suite expands its parameter ranges into independent instances (one graph
each).  An instance runs every target set up to symmetry through the builder,
checks each witness, and compares with the oracle when the graph is within the
oracle cap.  Some suites also carry a graph-level expectation ("cyclable" or
"not_cyclable").
"""
from __future__ import annotations

import csv
import io
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .algebra import ConnectionSetError, GroupSpec, classify, validate_connection_set, verify_certificate
from .algebra.classify import SPECIAL_TAU, StructureClass
from .builders import circulant, grid
from .builders.dispatch import solve_class
from .builders.family import family
from .builders.verdict import Verdict
from .graphs import Graph, build_circulant
from .oracle import (BudgetExceeded, Witness, default_budget, find_separating_2factor,
                     is_k_spanning_cyclable, orbit_representatives)
from .twofactor import separates, validate

DEFAULT_CAP = 36


@dataclass
class InstanceResult:
    instance: dict
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    budget_exceeded: int = 0
    oracle_nodes: int = 0
    seconds: float = 0.0
    row: dict | None = None


@dataclass
class SuiteReport:
    suite: str
    passed: bool | None
    instances: int
    checks: int
    failures: list[dict]
    budget_exceeded: int
    oracle_nodes: int
    seconds: float
    rows: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "checks": self.checks,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "budget_exceeded": self.budget_exceeded,
            "oracle_nodes": self.oracle_nodes,
            "seconds": round(self.seconds, 3),
        }
        if self.rows:
            out["rows"] = self.rows
        return out

    def csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            w = csv.DictWriter(buf, fieldnames=list(self.rows[0]))
            w.writeheader()
            w.writerows(self.rows)
        return buf.getvalue()


# -- per-instance checking --------------------------------------------------------

def _check_sets(res: InstanceResult, graph: Graph, sets: Iterable[Sequence[int]],
                verdict_of: Callable[[Sequence[int]], Verdict], cap: int, budget: int,
                expect: str | None = None) -> None:
    """Check builder verdicts on each target set; compare with the oracle under the cap."""
    use_oracle = graph.n <= cap
    any_negative = False
    for T in sets:
        T = tuple(T)
        res.checks += 1
        v = verdict_of(T)
        info = {"targets": list(T), "outcome": v.outcome}
        if v.outcome == "witness":
            if validate(graph, v.two_factor) is not None or not separates(v.two_factor, T):
                res.failures.append({**info, "error": "witness does not validate or separate"})
                continue
        elif v.outcome == "impossible":
            any_negative = True
            if v.reason is None:
                res.failures.append({**info, "error": "impossible without a reason"})
                continue
        if not use_oracle:
            if v.outcome == "unknown":
                res.failures.append({**info, "error": "unknown verdict"})
            continue
        ref = find_separating_2factor(graph, T, budget)
        res.oracle_nodes += getattr(ref, "nodes", 0)
        if isinstance(ref, BudgetExceeded):
            res.budget_exceeded += 1
            continue
        if v.outcome == "unknown":
            res.failures.append({**info, "error": "unknown verdict", "oracle": ref.outcome})
        elif (v.outcome == "witness") != isinstance(ref, Witness):
            res.failures.append({**info, "error": "builder and oracle disagree", "oracle": ref.outcome})
    if expect == "cyclable" and any_negative:
        res.failures.append({"error": "expected every target set to be separable"})
    if expect == "not_cyclable" and not any_negative:
        res.failures.append({"error": "expected a target set with no separating 2-factor"})


def _grid_instance(m: int, n: int, ell: int, k: int, cap: int, budget: int) -> InstanceResult:
    res = InstanceResult({"m": m, "n": n, "ell": ell, "k": k})
    fam = grid.grid_family(m, n, ell)
    sets = orbit_representatives(m * n, k, fam.generators())
    verdict = lambda T: grid.separate_grid(m, n, ell, [fam.coord(t) for t in T])
    _check_sets(res, fam.graph, sets, verdict, cap, budget)
    return res


def _special_instance(m: int, k: int, cap: int, budget: int) -> InstanceResult:
    res = InstanceResult({"m": m, "k": k})
    fam = family(m, 4, SPECIAL_TAU)
    sets = orbit_representatives(m * 4, k, fam.generators())
    verdict = lambda T: grid.separate_special(m, [fam.coord(t) for t in T])
    _check_sets(res, fam.graph, sets, verdict, cap, budget, expect="cyclable")
    return res


def _cubic_instance(tag: str, n: int, cap: int, budget: int) -> InstanceResult:
    params = {"n": n} if tag in ("k2_box_cn", "cubic_circulant") else {}
    cls = StructureClass(tag, params)
    res = InstanceResult({"tag": tag, **params})
    graph = cls.family_graph()
    sets = [(0, t) for t in range(1, graph.n)]
    expect = "cyclable" if tag == "q3" or (tag == "k2_box_cn" and n >= 4) else "not_cyclable"
    _check_sets(res, graph, sets, lambda T: solve_class(cls, T, graph), cap, budget, expect)
    return res


def _circulant_instance(n: int, s: int, k: int, expect: str | None, cap: int, budget: int) -> InstanceResult:
    res = InstanceResult({"n": n, "s": s, "k": k})
    graph = build_circulant(n, {1, s})
    sets = orbit_representatives(n, k, circulant.automorphisms(n))
    if k == 2:
        verdict = lambda T: circulant.separate2_circulant(n, s, *T)
    else:
        verdict = lambda T: circulant.separate3_circulant(n, s, T)
    _check_sets(res, graph, sets, verdict, cap, budget, expect)
    return res


def _classify_instance(seed: int, count: int) -> InstanceResult:
    res = InstanceResult({"seed": seed, "count": count})
    rng = random.Random(seed)
    for G, S in random_connection_sets(rng, count):
        res.checks += 1
        try:
            cls = classify(G, S)
            ok = verify_certificate(G, S, cls)
        except Exception as exc:  # report, do not abort the suite
            res.failures.append({"moduli": list(G.moduli), "S": [list(s) for s in S], "error": repr(exc)})
            continue
        if not ok:
            res.failures.append({"moduli": list(G.moduli), "S": [list(s) for s in S], "error": "certificate check failed"})
    return res


def _open_region_instance(n: int, s: int, budget: int) -> InstanceResult:
    res = InstanceResult({"n": n, "s": s})
    graph = build_circulant(n, {1, s})
    rep = is_k_spanning_cyclable(graph, 3, budget, generators=circulant.automorphisms(n))
    res.checks = rep.subsets_tested
    res.oracle_nodes = rep.nodes
    res.budget_exceeded = int(rep.verdict == "budget_exceeded")
    res.row = {"n": n, "s": s, "in_open_region": 2 * s + 3 <= n <= 4 * s + 2, "verdict": rep.verdict,
               "subset": " ".join(map(str, rep.subset)) if rep.subset else "", "nodes": rep.nodes}
    return res


def _run(task: tuple) -> InstanceResult:
    fn, args = task
    t0 = time.perf_counter()
    res = _WORKERS[fn](*args)
    res.seconds = time.perf_counter() - t0
    return res


_WORKERS: dict[str, Callable[..., InstanceResult]] = {
    "grid": _grid_instance,
    "special": _special_instance,
    "cubic": _cubic_instance,
    "circulant": _circulant_instance,
    "classify": _classify_instance,
    "open_region": _open_region_instance,
}


# -- random connection sets -------------------------------------------------------

GROUP_SHAPES: tuple[tuple[int, ...], ...] = (
    (5,), (7,), (8,), (9,), (10,), (12,), (13,), (15,), (16,), (18,), (20,), (24,), (30,),
    (2, 2), (2, 2, 2), (2, 2, 2, 2),
    (2, 4), (2, 6), (2, 8), (2, 10), (3, 3), (3, 6), (4, 4), (2, 2, 4), (2, 2, 6),
)


def random_connection_sets(rng: random.Random, count: int,
                           shapes: Sequence[tuple[int, ...]] = GROUP_SHAPES) -> Iterator[tuple[GroupSpec, list]]:
    """Valid 3- or 4-valent connection sets, drawn by adding random elements with their inverses."""
    made = tries = 0
    while made < count:
        tries += 1
        if tries > 1000 * count:
            raise RuntimeError("could not draw valid connection sets from the given shapes")
        G = GroupSpec(rng.choice(shapes))
        els = [g for g in G.elements() if any(g)]
        S: set = set()
        want = min(rng.choice((3, 4)), len(els))
        while len(S) < want:
            g = rng.choice(els)
            S |= {g, G.neg(g)}
        try:
            validate_connection_set(G, S)
        except ConnectionSetError:
            continue
        made += 1
        yield G, sorted(S)


# -- suites -----------------------------------------------------------------------

def _span(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def _jumps(n: int, lo: int = 2) -> Iterator[int]:
    for s in range(lo, (n - 1) // 2 + 1):
        if math.gcd(n, s) == 1:
            yield s


def _tasks(suite: str, p: dict) -> list[tuple]:
    cap, budget = p["cap"], p["budget"]
    if suite in ("grid_pairs", "grid_triples"):
        k = 2 if suite == "grid_pairs" else 3
        return [("grid", (m, n, ell, k, cap, budget)) for m in _span(p["m"]) for n in _span(p["n"]) for ell in range(n)]
    if suite == "special_product":
        return [("special", (m, k, cap, budget)) for m in _span(p["m"]) for k in (2, 3)]
    if suite == "cubic":
        tasks = [("cubic", ("k4", 4, cap, budget)), ("cubic", ("q3", 8, cap, budget))]
        tasks += [("cubic", ("k2_box_cn", n, cap, budget)) for n in _span(p["n"]) if n >= 3]
        tasks += [("cubic", ("cubic_circulant", n, cap, budget)) for n in _span(p["n"]) if n >= 6 and n % 2 == 0]
        return tasks
    if suite == "circulant_pairs":
        return [("circulant", (n, s, 2, "cyclable" if n >= 6 else "not_cyclable", cap, budget))
                for n in _span(p["n"]) for s in _jumps(n)]
    if suite == "circulant_jump_two":
        return [("circulant", (n, 2, 3, "not_cyclable", cap, budget)) for n in _span(p["n"]) if n % 2 and n >= 5]
    if suite == "circulant_near_half":
        return [("circulant", (n, s, 3, "not_cyclable", cap, budget))
                for s in _span(p["s"]) for n in (2 * s + 1, 2 * s + 2) if math.gcd(n, s) == 1]
    if suite == "circulant_large":
        return [("circulant", (n, s, 3, "cyclable", cap, budget))
                for n in _span(p["n"]) for s in _jumps(n, 3) if n >= 4 * s + 3]
    if suite == "classify":
        return [("classify", (p["seed"] + i, p["count"] // p["chunks"])) for i in range(p["chunks"])]
    if suite == "open_region":
        return [("open_region", (n, s, budget)) for s in _span(p["s"]) for n in _span(p["n"])
                if 2 * s + 1 <= n and math.gcd(n, s) == 1]
    raise KeyError(suite)


SUITES: dict[str, dict] = {
    "cubic": {"n": (3, 9)},
    "classify": {"count": 100, "seed": 0, "chunks": 4},
    "grid_pairs": {"m": (3, 7), "n": (3, 7)},
    "grid_triples": {"m": (3, 7), "n": (3, 7)},
    "special_product": {"m": (3, 6)},
    "circulant_pairs": {"n": (4, 24)},
    "circulant_jump_two": {"n": (7, 20)},
    "circulant_near_half": {"s": (3, 5)},
    "circulant_large": {"n": (15, 40)},
    "open_region": {"s": (3, 3), "n": (9, 14)},
}

RECORD_ONLY = {"open_region"}


def run_suite(suite: str, jobs: int = 1, cap: int = DEFAULT_CAP, budget: int | None = None,
              progress: Callable[[InstanceResult], None] | None = None, **ranges) -> SuiteReport:
    """Run a suite; ``ranges`` override the defaults in ``SUITES[suite]``."""
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    params = dict(SUITES[suite])
    params.update({k: v for k, v in ranges.items() if v is not None})
    params.update(cap=cap, budget=budget or default_budget())
    tasks = _tasks(suite, params)
    t0 = time.perf_counter()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, tasks))
    else:
        results = [_run(t) for t in tasks]
    failures: list[dict] = []
    for r in results:
        if progress:
            progress(r)
        failures += [{**r.instance, **f} for f in r.failures]
    exceeded = sum(r.budget_exceeded for r in results)
    passed = None if suite in RECORD_ONLY else (not failures and not exceeded)
    return SuiteReport(
        suite=suite,
        passed=passed,
        instances=len(results),
        checks=sum(r.checks for r in results),
        failures=failures,
        budget_exceeded=exceeded,
        oracle_nodes=sum(r.oracle_nodes for r in results),
        seconds=time.perf_counter() - t0,
        rows=[r.row for r in results if r.row is not None],
    )
