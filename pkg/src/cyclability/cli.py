"""Command-line interface: build, classify, solve, oracle, sweep, verify.

Machine-readable JSON goes to stdout and a one-line human summary to stderr.
Ranges are inclusive ``lo..hi`` strings (a single number means lo = hi).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import graphs
from .algebra import ConnectionSetError, GroupSpec, classify
from .algebra.classify import SPECIAL_TAU, StructureClass
from .builders import circulant
from .builders.dispatch import searched, solve, solve_class
from .oracle import BUDGET_ENV, default_budget, find_separating_2factor, is_k_spanning_cyclable
from .suites import RECORD_ONLY, SUITES, run_suite

FAMILIES = {
    "pseudo": "m n ell",
    "pseudo-perm": "m n tau",
    "special": "m",
    "path-cycle": "m n",
    "two-column": "n tau",
    "circulant": "n jumps",
    "hypercube": "d",
    "cayley": "(uses --moduli and --conn)",
}


class UsageError(ValueError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return a, b


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _elements(text: str) -> list[tuple[int, ...]]:
    """'1,0;0,1' -> [(1, 0), (0, 1)]; for cyclic groups '1;19;3' also works."""
    return [tuple(_ints(tok)) for tok in text.split(";") if tok.strip()]


def _need(params: Sequence[str], count: int, family: str) -> list[str]:
    if len(params) != count:
        raise UsageError(f"{family} takes parameters: {FAMILIES[family]}")
    return list(params)


def _group(args) -> tuple[GroupSpec, list[tuple[int, ...]]]:
    if not args.moduli or not args.conn:
        raise UsageError("cayley graphs need --moduli and --conn")
    return GroupSpec(tuple(_ints(args.moduli))), _elements(args.conn)


def build_graph(family: str, params: Sequence[str], args) -> graphs.Graph:
    if family == "pseudo":
        m, n, ell = map(int, _need(params, 3, family))
        return graphs.build_pseudo(m, n, ell)
    if family == "pseudo-perm":
        m, n, tau = _need(params, 3, family)
        return graphs.build_pseudo_perm(int(m), int(n), _ints(tau))
    if family == "special":
        (m,) = _need(params, 1, family)
        return graphs.build_pseudo_perm(int(m), 4, SPECIAL_TAU)
    if family == "path-cycle":
        m, n = map(int, _need(params, 2, family))
        return graphs.build_path_cycle(m, n)
    if family == "two-column":
        n, tau = _need(params, 2, family)
        return graphs.build_two_column(int(n), _ints(tau))
    if family == "circulant":
        n, jumps = _need(params, 2, family)
        return graphs.build_circulant(int(n), _ints(jumps))
    if family == "hypercube":
        (d,) = _need(params, 1, family)
        return graphs.build_hypercube(int(d))
    if family == "cayley":
        G, S = _group(args)
        return graphs.build_cayley(G, S)
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def family_class(family: str, params: Sequence[str]) -> StructureClass:
    """Structure class whose family graph is exactly the graph ``build_graph`` makes."""
    if family == "pseudo":
        m, n, ell = map(int, _need(params, 3, family))
        graphs.build_pseudo(m, n, ell)
        return StructureClass("pseudo_product", {"m": m, "n": n, "ell": ell})
    if family == "special":
        (m,) = _need(params, 1, family)
        return StructureClass("special_y_box_k2", {"m": int(m)})
    if family == "path-cycle":
        m, n = map(int, _need(params, 2, family))
        if m != 2:
            raise UsageError("solve supports path-cycle only with m = 2 (K2 x Cn)")
        return StructureClass("k2_box_cn", {"n": n})
    if family == "circulant":
        n, jumps = _need(params, 2, family)
        n, js = int(n), sorted({min(j % int(n), -j % int(n)) for j in _ints(jumps)})
        if len(js) != 2 or 1 not in js:
            raise UsageError("solve supports circulants circ(n; 1, s)")
        s = js[1]
        if 2 * s == n:
            return StructureClass("k4" if n == 4 else "cubic_circulant", {} if n == 4 else {"n": n})
        return StructureClass("circulant", {"n": n, "s": circulant.normalize_jump(n, s)})
    if family == "hypercube":
        (d,) = _need(params, 1, family)
        if d not in ("3", "4"):
            raise UsageError("solve supports hypercubes Q3 and Q4")
        return StructureClass("q3" if d == "3" else "q4")
    if family == "two-column":
        n, tau = _need(params, 2, family)
        return StructureClass("two_column_product", {"n": int(n), "tau": tuple(_ints(tau))})
    raise UsageError(f"solve does not support family {family!r}")


def _targets(text: str, family: str, params: Sequence[str]) -> list:
    toks = [t for t in text.split(";") if t.strip()]
    if family == "cayley":
        return [tuple(_ints(t)) for t in toks]
    out = []
    for t in toks:
        vals = _ints(t)
        if len(vals) == 1:
            out.append(vals[0])
        elif len(vals) == 2 and family in ("pseudo", "pseudo-perm", "special", "path-cycle", "two-column"):
            n = 4 if family == "special" else int(params[1] if family != "two-column" else params[0])
            out.append(vals[0] * n + vals[1])
        else:
            raise UsageError(f"bad target {t!r}")
    return out


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _say(text: str) -> None:
    print(text, file=sys.stderr)


# -- commands ---------------------------------------------------------------------

def cmd_build(args) -> int:
    g = build_graph(args.family, args.params, args)
    sys.stdout.write(graphs.export(g, args.format) + ("\n" if args.format == "json" else ""))
    _say(f"{g.name or args.family}: {g.n} vertices, {len(g.edges())} edges")
    return 0


def cmd_classify(args) -> int:
    if args.source:
        if args.source == "-":
            raw = sys.stdin.read()
        elif args.source.lstrip().startswith("{"):
            raw = args.source
        else:
            raw = Path(args.source).read_text()
        data = json.loads(raw)
        conn = data["connection"] if "connection" in data else data["S"]
        G, S = GroupSpec(tuple(data["moduli"])), [tuple(s) for s in conn]
    else:
        G, S = _group(args)
    cls = classify(G, S)
    _emit(cls.to_dict(with_certificate=not args.no_certificate))
    _say(f"{cls.tag} {cls.params}")
    return 0


def cmd_solve(args) -> int:
    if args.family == "cayley":
        G, S = _group(args)
        verdict = solve(G, S, _targets(args.targets, "cayley", args.params), oracle_fallback=args.oracle_fallback)
    else:
        cls = family_class(args.family, args.params)
        targets = _targets(args.targets, args.family, args.params)
        graph = cls.family_graph()
        verdict = solve_class(cls, targets, graph)
        if verdict.outcome == "unknown" and args.oracle_fallback:
            verdict = searched(graph, targets, None)
    _emit(verdict.to_json())
    line = verdict.outcome
    if verdict.reason is not None:
        line += f" ({verdict.reason.value}): {verdict.reason.characterization}"
    elif verdict.note:
        line += f": {verdict.note}"
    _say(line)
    return 0


def cmd_oracle(args) -> int:
    g = build_graph(args.family, args.params, args)
    targets = _targets(args.targets, args.family, args.params)
    if args.family == "cayley":
        G, _ = _group(args)
        targets = [G.index(G.check(t)) for t in targets]
    res = find_separating_2factor(g, targets, args.budget or default_budget())
    out = {"outcome": res.outcome, "nodes": res.nodes}
    if hasattr(res, "two_factor"):
        out.update(res.two_factor.to_json())
    _emit(out)
    _say(f"{res.outcome} after {res.nodes} nodes")
    return 0


def cmd_sweep(args) -> int:
    g = build_graph(args.family, args.params, args)
    rep = is_k_spanning_cyclable(g, args.k, args.budget or default_budget(),
                                 vertex_transitive=args.vertex_transitive, jobs=args.jobs)
    _emit(rep.to_json())
    _say(f"{args.k}-spanning: {rep.verdict} ({rep.subsets_tested} subsets, {rep.nodes} nodes)")
    return 0 if rep.verdict != "budget_exceeded" else 2


def cmd_verify(args) -> int:
    ranges = {"m": args.m, "n": args.n, "s": args.s, "count": args.count, "seed": args.seed}
    progress = (lambda r: _say(f"  {r.instance} checks={r.checks} failures={len(r.failures)} "
                               f"{r.seconds:.2f}s")) if args.verbose else None
    rep = run_suite(args.suite, jobs=args.jobs, cap=args.cap, budget=args.budget, progress=progress, **ranges)
    if args.suite in RECORD_ONLY:
        text = rep.csv()
        if args.csv:
            with open(args.csv, "w") as fh:
                fh.write(text)
        sys.stdout.write(text)
        _say(f"{args.suite}: {rep.instances} instances recorded in {rep.seconds:.1f}s "
             f"({rep.budget_exceeded} over budget)")
        return 0
    _emit(rep.to_json())
    status = "pass" if rep.passed else "FAIL"
    _say(f"{args.suite}: {status}, {rep.instances} instances, {rep.checks} checks, "
         f"{len(rep.failures)} failures, {rep.budget_exceeded} over budget, {rep.seconds:.1f}s")
    if rep.failures:
        _say(f"first failure: {json.dumps(rep.failures[0])}")
    return 0 if rep.passed else 1


# -- parser -----------------------------------------------------------------------

def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", help="graph family: " + ", ".join(f"{k} {v}" for k, v in FAMILIES.items()))
    p.add_argument("params", nargs="*", help="family parameters; lists are comma separated")
    p.add_argument("--moduli", help="cyclic factor orders, e.g. 2,2,2,2 (cayley)")
    p.add_argument("--conn", help="connection set, elements separated by ';', e.g. '1,0;0,1' (cayley)")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclability", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph and export it")
    _graph_args(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("classify", help="structure class of an Abelian Cayley graph")
    p.add_argument("source", nargs="?", help='JSON {"moduli": [...], "connection": [[...], ...]}, a file holding it, or - for stdin')
    p.add_argument("--moduli")
    p.add_argument("--conn")
    p.add_argument("--no-certificate", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="separating 2-factor verdict for a target set")
    _graph_args(p)
    p.add_argument("--targets", required=True, help="';'-separated vertex ids, i,j grid coords or group elements")
    p.add_argument("--oracle-fallback", action="store_true", help="run the exact search when no construction or obstruction applies")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact search for one target set")
    _graph_args(p)
    p.add_argument("--targets", required=True)
    p.add_argument("--budget", type=int, help=f"node budget (default ${BUDGET_ENV} or 10^7)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="exact k-spanning cyclability of a whole graph")
    _graph_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--vertex-transitive", action="store_true", help="fix the first target at vertex 0")
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--m", type=parse_range)
    p.add_argument("--n", type=parse_range)
    p.add_argument("--s", type=parse_range)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int, default=36, help="largest graph (vertices) checked by the oracle")
    p.add_argument("--budget", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", help="also write the record-only table to this path")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, graphs.BadParameters, ConnectionSetError, ValueError, OSError) as exc:
        _say(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
