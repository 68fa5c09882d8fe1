"""Command-line front end.

Subcommands: solve, simulate, exact, bounds {profile,conditions,tillich,
dominate}. Graphs come from edge-list files; a power graph is a base file
plus --n. Exit codes: 0 success, 2 domain/validation error, 1 internal.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from percolab import bounds as bounds_mod
from percolab import graph_core, percolation, stats
from percolab.errors import PercolabError
from percolab.power_graph import ExplicitGraph, PowerGraph


def _default_seed() -> int:
    return int(os.environ.get("PERCOLAB_SEED", "0"))


def _add_graph_source(ap, require_n=False):
    ap.add_argument("--base", help="base-graph edge-list file (use with --n)")
    ap.add_argument("--n", type=int, help="Cartesian-power exponent")
    if not require_n:
        ap.add_argument("--graph", help="explicit-graph edge-list file")


def _load_view(args):
    graph = getattr(args, "graph", None)
    if graph:
        if args.base:
            raise PercolabError("give either --graph or --base/--n, not both")
        return ExplicitGraph.load(graph)
    if not args.base or args.n is None:
        raise PercolabError("need --graph, or --base together with --n")
    return PowerGraph(graph_core.load_graph(args.base), args.n)


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload: dict) -> str:
    payload.setdefault("schema", 1)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_solve(args) -> int:
    base = graph_core.load_graph(args.base)
    poly = graph_core.degree_polynomial(base)
    sol = graph_core.solve_threshold(poly, args.lam, args.n)
    _emit(
        _json(
            {
                "q": sol.q,
                "p": sol.p,
                "target": sol.target,
                "residual": sol.residual,
                "degree_polynomial": {str(d): c for d, c in poly.coefficients},
            }
        ),
        args.out,
    )
    return 0


def cmd_simulate(args) -> int:
    if (args.lam is None) == (args.p is None):
        raise PercolabError("give exactly one of --lambda or --p")
    if args.sweep:
        if not args.base:
            raise PercolabError("--sweep requires --base")
        lo, hi, step = (int(x) for x in args.sweep.split(":"))
        base = graph_core.load_graph(args.base)
        if args.lam is None:
            raise PercolabError("--sweep requires --lambda")
        reports = stats.convergence_sweep(
            base,
            args.lam,
            range(lo, hi + 1, step),
            trials=args.trials,
            master_seed=args.seed,
            workers=args.workers,
        )
    else:
        g = _load_view(args)
        cfg = stats.ExperimentConfig(
            graph=g,
            trials=args.trials,
            master_seed=args.seed,
            lam=args.lam,
            p=args.p,
            workers=args.workers,
        )
        reports = [stats.run_experiment(cfg)]

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(stats.ExperimentReport.CSV_FIELDS)
        for r in reports:
            writer.writerow(r.to_csv_row())
        _emit(buf.getvalue(), args.out)
    else:
        dicts = [r.to_dict(deterministic=args.deterministic) for r in reports]
        payload = dicts[0] if len(dicts) == 1 else {"schema": 1, "reports": dicts}
        _emit(_json(payload), args.out)
    return 0


def cmd_exact(args) -> int:
    g = _load_view(args)
    conn = percolation.exact_connectivity_probability(g, args.p)
    dist = percolation.exact_isolated_distribution(g, args.p)
    _emit(
        _json(
            {
                "p": args.p,
                "connectivity_probability": conn,
                "isolated_distribution": dist.tolist(),
                "mean_isolated": float(sum(i * x for i, x in enumerate(dist))),
            }
        ),
        args.out,
    )
    return 0


def cmd_bounds(args) -> int:
    if args.bounds_cmd == "profile":
        g = _load_view(args)
        profile = bounds_mod.isoperimetric_profile(g, args.s_max)
        if args.format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["s", "b"])
            for s, b in enumerate(profile, start=1):
                writer.writerow([s, b])
            _emit(buf.getvalue(), args.out)
        else:
            _emit(_json({"profile": profile, "s": list(range(1, len(profile) + 1))}), args.out)
        return 0

    if args.bounds_cmd == "conditions":
        base = graph_core.load_graph(args.base)
        params = bounds_mod.BasicConditionsParams(
            epsilon_prime=args.eps_prime, c=args.c, epsilon=args.eps
        )
        n_values = [args.n] if args.n_min is None else range(args.n_min, args.n + 1)
        reports = bounds_mod.check_basic_conditions(
            lambda n: PowerGraph(base, n), base.k, params, n_values
        )
        _emit(_json({"reports": [r.to_dict() for r in reports]}), args.out)
        return 0 if all(r.all_passed for r in reports) else 0

    if args.bounds_cmd == "tillich":
        base = graph_core.load_graph(args.base)
        est = bounds_mod.tillich_constant_estimate(base, range(1, args.n + 1))
        _emit(_json({"constant": est, "n_max": args.n}), args.out)
        return 0

    # dominate
    g = _load_view(args)
    if args.ell is not None:
        result = bounds_mod.ell_dominating_set(g, args.ell)
        payload = result.to_dict()
        payload["ell"] = args.ell
    elif args.delta is not None:
        W = frozenset(int(x) for x in args.w.split(",") if x != "") if args.w else frozenset()
        result = bounds_mod.randomized_dominating_set(g, W, args.delta, seed=args.seed)
        payload = result.to_dict()
        payload["delta"] = args.delta
    else:
        raise PercolabError("dominate needs --ell or --delta")
    _emit(_json(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="percolab")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the retention threshold for a base graph")
    p.add_argument("--base", required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="run a Monte Carlo percolation experiment")
    _add_graph_source(p)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--sweep", help="n range as lo:hi:step (with --base)")
    p.add_argument("--deterministic", action="store_true", help="suppress timing fields")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("exact", help="exact connectivity and isolated-count law (m <= 26)")
    _add_graph_source(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bounds", help="structural verifiers")
    bsub = p.add_subparsers(dest="bounds_cmd", required=True)

    b = bsub.add_parser("profile", help="brute-force isoperimetric profile")
    _add_graph_source(b)
    b.add_argument("--s-max", type=int, default=None)
    b.add_argument("--format", choices=("json", "csv"), default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    b = bsub.add_parser("conditions", help="check the five growth conditions")
    b.add_argument("--base", required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--n-min", type=int, default=None)
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--eps-prime", type=float, required=True)
    b.add_argument("--c", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    b = bsub.add_parser("tillich", help="empirical power-isoperimetry constant")
    b.add_argument("--base", required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    b = bsub.add_parser("dominate", help="constructive dominating sets")
    _add_graph_source(b)
    b.add_argument("--ell", type=int, default=None)
    b.add_argument("--delta", type=int, default=None)
    b.add_argument("--w", help="comma-separated pre-given vertex set")
    b.add_argument("--seed", type=int, default=_default_seed())
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PercolabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - internal failure
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
