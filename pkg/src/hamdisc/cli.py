"""Command-line interface: instance generation and seeded CSV experiments.

Every experiment subcommand runs ``--trials`` independent trials; trial i
uses seed ``derive_seed(--seed, i)``.  Rows are written in trial order,
so the CSV is a function of the arguments alone, whatever ``--jobs`` is.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .diamonds import find_disjoint_good_diamonds, positive_paths
from .dirac import unbalanced_hamilton_cycle
from .errors import HamDiscError, NotFoundError, StructuralError
from .expander import nearly_forward_path
from .generators import (derive_seed, gen_complete, gen_complete_bipartite, gen_cycle, gen_empty, gen_extremal_ab,
                         gen_gnp, gen_min_degree, gen_path, gen_petersen, gen_random_orientation,
                         gen_random_tournament, gen_star, gen_transitive_tournament, hamiltonicity_p)
from .gnp import check_properties, oriented_hamilton_gnp
from .graph import (Graph, Orientation, format_graph, format_oriented, forward_count, min_degree, path_backward,
                    read_graph_file)
from .oracle import count_cycles_min_forward, count_hamilton_cycles, is_beta_graph, oracle_max_forward
from .posa import LinearForest, hamilton_cycle_through_forest
from .tournaments import count_unbalanced_cycles

# -- instance helpers ------------------------------------------------------


def _load(path: str):
    try:
        return read_graph_file(path)
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")


def _orientation(args, seed: int) -> Orientation:
    """--input (oriented, or a graph oriented with the trial seed) or G(n, p)."""
    if args.input:
        obj = _load(args.input)
        return obj if isinstance(obj, Orientation) else gen_random_orientation(obj, seed)
    g = gen_gnp(args.n, args.p, seed) if args.p is not None else gen_complete(args.n)
    return gen_random_orientation(g, seed)


def _fmt_cycle(vs) -> str:
    return " ".join(map(str, vs))


def _show(args, text: str) -> None:
    if args.trials == 1:
        print(text, file=sys.stderr)


# -- trials: each returns (row, valid) ---------------------------------------


def trial_oracle(args, seed):
    o = _orientation(args, seed)
    row = {"n": o.n, "m": o.host.m, "delta": min_degree(o.host) if o.n else 0}
    if args.max_forward:
        row["max_forward"] = oracle_max_forward(o)
    if args.count_cycles:
        row["cycles"] = count_hamilton_cycles(o.host)
    if args.min_forward_threshold is not None:
        row["min_forward_count"] = count_cycles_min_forward(o, args.min_forward_threshold)
    if args.beta is not None:
        ok, wit = is_beta_graph(o.host, args.beta)
        row["beta_graph"] = int(ok)
        if not ok:
            _show(args, f"witness U={sorted(wit[0])} W={sorted(wit[1])}")
    return row, True


def trial_diamonds(args, seed):
    o = _orientation(args, seed)
    row = {"n": o.n, "m": o.host.m, "k": args.find, "found": 0}
    try:
        ds = find_disjoint_good_diamonds(o, args.find)
    except NotFoundError as exc:
        _show(args, f"not found: {exc}")
        return row, True
    for d in ds:
        dp = positive_paths(o, d)
        _show(args, f"diamond a={d.a} b={d.b} c={d.c} d={d.d} P={_fmt_cycle(dp.p.verts)} Q={_fmt_cycle(dp.q.verts)}")
    row["found"] = len(ds)
    return row, True


def _read_forest(path: str) -> LinearForest:
    edges = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].split()
            if line:
                edges.append((int(line[0]), int(line[1])))
    return LinearForest(edges)


def trial_posa(args, seed):
    o = _orientation(args, seed)
    g = o.host
    forest = _read_forest(args.forest) if args.forest else LinearForest()
    row = {"n": g.n, "delta": min_degree(g), "t": len(forest.edges), "found": 0}
    try:
        h = hamilton_cycle_through_forest(g, forest)
    except NotFoundError as exc:
        _show(args, f"not found: {exc}")
        return row, True
    h.validate(g)
    valid = set(forest.edges) <= h.edges()
    row["found"] = 1
    _show(args, f"cycle {_fmt_cycle(h.verts)}")
    return row, valid


def trial_dirac(args, seed):
    if args.input:
        o = _orientation(args, seed)
    else:
        g = gen_complete(args.n) if args.delta is None else gen_min_degree(args.n, args.delta, seed)
        o = gen_random_orientation(g, seed)
    n = o.n
    bound = math.ceil((n + args.k) / 2)
    row = {"n": n, "k": args.k, "delta": min_degree(o.host), "forward": "", "bound": bound, "ok": 0, "stage": ""}
    try:
        res = unbalanced_hamilton_cycle(o, args.k)
    except NotFoundError as exc:
        row["stage"] = exc.stage
        return row, True
    fwd = forward_count(res.cycle, o)
    row.update(forward=fwd, ok=int(fwd >= bound))
    _show(args, f"cycle {_fmt_cycle(res.cycle.verts)}\nforward {fwd}")
    return row, fwd == res.forward


def trial_expander(args, seed):
    if args.input:
        o = _orientation(args, seed)
    else:
        n, c = args.gnp
        n = int(n)
        o = gen_random_orientation(gen_gnp(n, min(1.0, c / n), seed), seed)
    row = {"n": o.n, "delta": args.delta, "length": "", "backward": "", "ok": 0, "stage": ""}
    try:
        res = nearly_forward_path(o, args.delta, strict=False)
    except NotFoundError as exc:
        row["stage"] = exc.stage
        return row, True
    res.path.validate(o.host)
    back = path_backward(res.path, o)
    row.update(length=res.length, backward=back, ok=int(res.bounds_ok))
    _show(args, f"path {_fmt_cycle(res.path.verts)}")
    return row, back == res.backward


def trial_gnp(args, seed):
    p = hamiltonicity_p(args.n, args.slack)
    o = gen_random_orientation(gen_gnp(args.n, p, seed), seed)
    row = {"n": args.n, "p": f"{p:.6g}", "delta": args.delta, "success": 0, "forward": "", "backward": "",
           "stage": "", "route": ""}
    try:
        res = oriented_hamilton_gnp(o, args.delta, seed=seed)
    except NotFoundError as exc:
        row["stage"] = exc.stage or "unknown"
        return row, True
    fwd = forward_count(res.cycle, o)
    row.update(success=1, forward=fwd, backward=o.n - fwd, route=res.route)
    return row, fwd == res.forward


def trial_tournament(args, seed):
    t = gen_random_tournament(args.n, seed)
    return {"n": args.n, "threshold": args.threshold, "count": count_unbalanced_cycles(t, args.threshold)}, True


def trial_props(args, seed):
    if args.input:
        g = _load(args.input)
        g = g.host if isinstance(g, Orientation) else g
        p = 2 * g.m / (g.n * (g.n - 1))
    else:
        p = hamiltonicity_p(args.n, args.slack)
        g = gen_gnp(args.n, p, seed)
    rep = check_properties(g, args.eps, args.beta, p, samples=args.samples, seed=seed)
    row = {"n": g.n, "p": f"{p:.6g}"}
    row.update({k: v.status for k, v in rep.verdicts().items()})
    row["ok"] = int(rep.all_ok)
    return row, True


TRIALS = {
    "oracle": trial_oracle,
    "diamonds": trial_diamonds,
    "posa": trial_posa,
    "dirac-cycle": trial_dirac,
    "expander-path": trial_expander,
    "gnp-cycle": trial_gnp,
    "tournament-count": trial_tournament,
    "props": trial_props,
}

# fixed column order per subcommand (oracle columns depend on requested flags)
HEADERS = {
    "diamonds": ["n", "m", "k", "found"],
    "posa": ["n", "delta", "t", "found"],
    "dirac-cycle": ["n", "k", "delta", "forward", "bound", "ok", "stage"],
    "expander-path": ["n", "delta", "length", "backward", "ok", "stage"],
    "gnp-cycle": ["n", "p", "delta", "success", "forward", "backward", "stage", "route"],
    "tournament-count": ["n", "threshold", "count"],
    "props": ["n", "p", "P1", "P2", "P3", "P4", "P5", "ok"],
}


def _header(args) -> list[str]:
    if args.command == "oracle":
        cols = ["n", "m", "delta"]
        cols += ["max_forward"] * bool(args.max_forward) + ["cycles"] * bool(args.count_cycles)
        cols += ["min_forward_count"] * (args.min_forward_threshold is not None)
        cols += ["beta_graph"] * (args.beta is not None)
        return cols
    return HEADERS[args.command]


def _run_one(job):
    args, i, seed = job
    try:
        row, valid = TRIALS[args.command](args, seed)
    except (StructuralError, AssertionError) as exc:
        print(f"trial {i}: structural failure: {exc}", file=sys.stderr)
        return None, False
    return row, valid


def run_experiment(args) -> int:
    """Run the trials, write the CSV, print a summary; 0 iff all trials validated."""
    if args.trials < 0:
        raise SystemExit("error: --trials must be >= 0")
    jobs = [(args, i, derive_seed(args.seed, i)) for i in range(args.trials)]
    workers = max(1, args.jobs or os.cpu_count() or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    cols = ["trial", "seed"] + _header(args)
    out = open(args.output, "w", newline="") if args.output and args.output != "-" else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for (_, i, seed), (row, _) in zip(jobs, results):
            if row is not None:
                w.writerow({"trial": i, "seed": seed, **row})
    finally:
        if out is not sys.stdout:
            out.close()
    all_valid = all(v for _, v in results)
    rows = [r for r, _ in results if r is not None]
    flag = next((c for c in ("ok", "success", "found") if c in cols), None)
    msg = f"{args.command}: {len(rows)} trials"
    if flag and rows:
        msg += f", success rate {sum(1 for r in rows if int(r[flag] or 0) > 0) / len(rows):.3f}"
    fr = [r["forward"] / r["n"] for r in rows if isinstance(r.get("forward"), int)]
    if fr:
        msg += f", mean forward fraction {sum(fr) / len(fr):.4f}"
    if not all_valid:
        msg += ", STRUCTURAL VALIDATION FAILED"
    print(msg, file=sys.stderr)
    return 0 if all_valid else 1


# -- gen / orient -----------------------------------------------------------


def _gen_instance(args):
    fam, n, seed = args.family, args.n, args.seed
    if fam == "complete":
        return gen_complete(n)
    if fam == "empty":
        return gen_empty(n)
    if fam == "gnp":
        return gen_gnp(n, args.p, seed)
    if fam == "gnp-threshold":
        return gen_gnp(n, hamiltonicity_p(n, args.slack), seed)
    if fam == "min-degree":
        return gen_min_degree(n, args.delta, seed)
    if fam == "extremal":
        return gen_extremal_ab(n, args.delta)[1]
    if fam == "cycle":
        return gen_cycle(n)
    if fam == "path":
        return gen_path(n)
    if fam == "star":
        return gen_star(n)
    if fam == "bipartite":
        return gen_complete_bipartite(args.a, args.b)
    if fam == "petersen":
        return gen_petersen()
    if fam == "tournament":
        return gen_random_tournament(n, seed)
    if fam == "transitive":
        return gen_transitive_tournament(n)
    raise SystemExit(f"error: unknown family {fam}")


def _write_text(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    obj = _gen_instance(args)
    if isinstance(obj, Graph) and args.orient:
        obj = gen_random_orientation(obj, args.seed)
    _write_text(args, format_oriented(obj) if isinstance(obj, Orientation) else format_graph(obj))
    return 0


def cmd_orient(args) -> int:
    if not args.input:
        raise SystemExit("error: orient needs --input")
    obj = _load(args.input)
    g = obj.host if isinstance(obj, Orientation) else obj
    _write_text(args, format_oriented(gen_random_orientation(g, args.seed)))
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed")
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    common.add_argument("--output", default="-", help="output file (default stdout)")
    common.add_argument("--input", default=None, help="graph file in the edge-list text format")

    ap = argparse.ArgumentParser(prog="hamdisc", description="Oriented discrepancy of Hamilton cycles.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", parents=[common], help="write a generated instance")
    sp.add_argument("--family", default="gnp",
                    choices=["complete", "empty", "gnp", "gnp-threshold", "min-degree", "extremal", "cycle", "path",
                             "star", "bipartite", "petersen", "tournament", "transitive"])
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--slack", type=float, default=5.0)
    sp.add_argument("--delta", type=int, default=None)
    sp.add_argument("--a", type=int, default=2)
    sp.add_argument("--b", type=int, default=2)
    sp.add_argument("--orient", action="store_true", help="also orient at random")

    sub.add_parser("orient", parents=[common], help="orient --input at random")

    sp = sub.add_parser("oracle", parents=[common], help="exhaustive ground truth (n <= 12)")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--p", type=float, default=None, help="G(n, p) when no --input (default K_n)")
    sp.add_argument("--max-forward", action="store_true")
    sp.add_argument("--count-cycles", action="store_true")
    sp.add_argument("--min-forward-threshold", type=int, default=None)
    sp.add_argument("--beta", type=float, default=None)

    sp = sub.add_parser("diamonds", parents=[common], help="vertex-disjoint good diamonds")
    sp.add_argument("--find", type=int, default=1, metavar="K")
    sp.add_argument("--n", type=int, default=30)
    sp.add_argument("--p", type=float, default=0.6)

    sp = sub.add_parser("posa", parents=[common], help="Hamilton cycle through a linear forest")
    sp.add_argument("--forest", default=None, help="file of 'u v' forest edges")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--p", type=float, default=None)

    sp = sub.add_parser("dirac-cycle", parents=[common], help="cycle with >= (n+k)/2 forward edges")
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--n", type=int, default=30)
    sp.add_argument("--delta", type=int, default=None, help="random graph of this min degree (default K_n)")

    sp = sub.add_parser("expander-path", parents=[common], help="long nearly-forward path")
    sp.add_argument("--delta", type=float, default=0.3)
    sp.add_argument("--gnp", nargs=2, type=float, metavar=("N", "C"), default=(2000, 200))

    sp = sub.add_parser("gnp-cycle", parents=[common], help="unbalanced Hamilton cycle in G(n, p)")
    sp.add_argument("--n", type=int, default=2000)
    sp.add_argument("--slack", type=float, default=5.0)
    sp.add_argument("--delta", type=float, default=0.3)

    sp = sub.add_parser("tournament-count", parents=[common], help="count unbalanced cycles of a random tournament")
    sp.add_argument("--n", type=int, default=7)
    sp.add_argument("--threshold", type=int, default=None, help="default n-1")

    sp = sub.add_parser("props", parents=[common], help="check the random-graph properties P1-P5")
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--slack", type=float, default=5.0)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--beta", type=float, default=0.05)
    sp.add_argument("--samples", type=int, default=200)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "tournament-count" and args.threshold is None:
        args.threshold = args.n - 1
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "orient":
            return cmd_orient(args)
        return run_experiment(args)
    except HamDiscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
