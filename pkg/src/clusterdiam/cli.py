"""Command line interface.

Subcommands: gen, diam, sssp, compare, verify, oracle.  Every command
except ``verify`` appends one RunRecord (JSON line) to the records file,
so runs are diffable and replayable.  Exit codes: 0 ok, 1 validation,
2 I/O (parse/cache/filesystem), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .baseline import (
    delta_stepping,
    iterated_sssp_lower,
    resolve_delta,
    sssp_diameter_upper,
    tune_delta,
)
from .diameter import approximate_diameter, default_tau
from .errors import CacheError, ParseError, ValidationError
from .generators import generate_mesh, generate_rmat, generate_roads_product
from .graph import Graph, WeightModel, assign_weights
from .graphio import load_graph_file, save_graph_file
from .oracle import (
    EXACT_DIAMETER_CAP,
    OracleReport,
    dijkstra,
    exact_diameter,
    hop_radius,
    optimal_cluster_radius,
)
from .records import RunRecord, append_record, write_compare_csv
from .rng import Rng

# default grid for delta tuning: powers of two around the mean weight
TUNE_GRID_EXPONENTS = range(-6, 4)

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of calling sys.exit(2)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _out_dir(args: argparse.Namespace) -> Path:
    return Path(os.environ.get("CLUSTERDIAM_OUT", "runs"))


def _records_path(args: argparse.Namespace) -> Path:
    if getattr(args, "out", None):
        out = Path(args.out)
        if out.suffix == ".jsonl":
            return out
        return out.parent / "records.jsonl" if out.suffix else out / "records.jsonl"
    return _out_dir(args) / "records.jsonl"


def parse_weight_model(text: str) -> WeightModel:
    if text == "as-given":
        return WeightModel("as-given")
    if text == "uniform":
        return WeightModel("uniform")
    if text.startswith("two-point:"):
        parts = text[len("two-point:"):].split(",")
        if len(parts) != 3:
            raise ValidationError("two-point weights need p,w_small,w_big")
        p, ws, wb = (float(x) for x in parts)
        return WeightModel("two-point", p=p, w_small=ws, w_big=wb)
    raise ValidationError(f"unknown weight model {text!r}")


def resolve_graph(desc: str, seed: int, weights: str) -> Graph:
    """A graph argument is either a file path or a generator descriptor
    (mesh:SIDE, rmat:SCALE, roads:COPIES:BASEFILE)."""
    g: Graph
    if desc.startswith("mesh:"):
        g = generate_mesh(int(desc.split(":", 1)[1]))
    elif desc.startswith("rmat:"):
        g = generate_rmat(int(desc.split(":", 1)[1]), Rng(seed))
    elif desc.startswith("roads:"):
        parts = desc.split(":", 2)
        if len(parts) != 3:
            raise ValidationError("roads descriptor is roads:COPIES:BASEFILE")
        base = load_graph_file(parts[2])
        g = generate_roads_product(base, int(parts[1]))
    else:
        g = load_graph_file(desc)
    model = parse_weight_model(weights)
    if model.kind != "as-given":
        g = assign_weights(g, model, Rng(seed))
    return g


def _common_params(args: argparse.Namespace) -> dict:
    return {
        "graph": args.graph,
        "weights": args.weights,
        "threads": args.threads,
    }


def cmd_gen(args: argparse.Namespace) -> int:
    g = resolve_graph(args.graph, args.seed, args.weights)
    out = Path(args.out) if args.out else _out_dir(args) / f"{args.graph.replace(':', '-').replace('/', '_')}.gr"
    out.parent.mkdir(parents=True, exist_ok=True)
    save_graph_file(g, out)
    print(f"gen {args.graph}: n={g.n} m={g.m} -> {out}")
    record = RunRecord(
        command="gen",
        graph=g.descriptor(),
        params={**_common_params(args), "out": str(out)},
        seed=args.seed,
        results={"n": g.n, "m": g.m},
    )
    append_record(_records_path(args), record)
    return 0


def cmd_diam(args: argparse.Namespace) -> int:
    g = resolve_graph(args.graph, args.seed, args.weights)
    tau = args.tau if args.tau is not None else default_tau(g.n)
    est = approximate_diameter(
        g,
        tau=tau,
        rng=Rng(args.seed),
        algorithm=args.algo,
        delta_init=args.delta_init,
        budget=args.budget == "on",
    )
    oracle_block = None
    ratio_txt = ""
    if args.exact:
        report = OracleReport(
            quantity="diameter",
            value=exact_diameter(g),
            method="chunked-dijkstra",
            params={"cap": EXACT_DIAMETER_CAP},
        )
        oracle_block = vars(report).copy()
        if report.value > 0:
            ratio_txt = f" ratio={est.phi_approx / report.value:.4f}"
    print(
        f"diam {args.graph} algo={est.algorithm} tau={tau} seed={args.seed}: "
        f"phi_approx={est.phi_approx:.6g} radius={est.radius:.6g} "
        f"clusters={est.cluster_count} quotient={est.quotient_mode} "
        f"rounds={est.metrics.rounds} work={est.metrics.work}"
        f" time={est.metrics.wall_time:.3f}s{ratio_txt}"
    )
    record = RunRecord(
        command="diam",
        graph=g.descriptor(),
        params={
            **_common_params(args),
            "tau": tau,
            "algo": args.algo,
            "delta_init": args.delta_init,
            "budget": args.budget,
        },
        seed=args.seed,
        metrics=est.metrics.to_dict(),
        results={
            "phi_approx": est.phi_approx,
            "phi_quotient": est.phi_quotient,
            "radius": est.radius,
            "cluster_count": est.cluster_count,
            "quotient_mode": est.quotient_mode,
        },
        oracle=oracle_block,
    )
    append_record(_records_path(args), record)
    return 0


def _tune_grid(g: Graph) -> list[float]:
    mean = g.mean_weight
    return [mean * (2.0 ** e) for e in TUNE_GRID_EXPONENTS]


def cmd_sssp(args: argparse.Namespace) -> int:
    g = resolve_graph(args.graph, args.seed, args.weights)
    if not (0 <= args.source < g.n):
        raise ValidationError(f"source {args.source} out of range for n={g.n}")
    if args.delta_init == "tune":
        grid = _tune_grid(g)
    else:
        grid = [resolve_delta(g, args.delta_init)]
    tuned = tune_delta(g, args.source, grid)
    best = tuned.best
    upper = sssp_diameter_upper(g, args.source, best.delta)
    lower = iterated_sssp_lower(g, args.source) if args.lower else None
    lower_txt = f" lower={lower:.6g}" if lower is not None else ""
    print(
        f"sssp {args.graph} source={args.source} delta={best.delta:.6g}: "
        f"ecc={best.max_finite_dist:.6g} upper={upper.value:.6g}{lower_txt} "
        f"rounds={best.metrics.rounds} work={best.metrics.work} "
        f"time={best.metrics.wall_time:.3f}s"
    )
    record = RunRecord(
        command="sssp",
        graph=g.descriptor(),
        params={
            **_common_params(args),
            "source": args.source,
            "delta_policy": args.delta_init,
            "grid": grid,
        },
        seed=args.seed,
        metrics=best.metrics.to_dict(),
        results={
            "delta": best.delta,
            "eccentricity": best.max_finite_dist,
            "upper": upper.value,
            "lower": lower,
            "trials": tuned.trials,
        },
    )
    append_record(_records_path(args), record)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    g = resolve_graph(args.graph, args.seed, args.weights)
    seeds = [int(s) for s in args.seeds.split(",") if s.strip() != ""]
    if not seeds:
        raise ValidationError("need at least one seed")
    tau = args.tau if args.tau is not None else default_tau(g.n)
    lower = iterated_sssp_lower(g, 0)

    # baseline is deterministic: tune once, reuse the row for every seed
    tuned = tune_delta(g, 0, _tune_grid(g))
    t0 = time.perf_counter()
    upper = sssp_diameter_upper(g, 0, tuned.best.delta)
    base_time = time.perf_counter() - t0
    base_row = {
        "algo": "delta-stepping",
        "approx_ratio": upper.value / lower if lower > 0 else float("inf"),
        "time": base_time,
        "rounds": upper.metrics.rounds,
        "work": upper.metrics.work,
    }

    rows = []
    for seed in seeds:
        for algo in ("cluster", "cluster2"):
            est = approximate_diameter(
                g,
                tau=tau,
                rng=Rng(seed),
                algorithm=algo,
                delta_init=args.delta_init,
                budget=args.budget == "on",
            )
            rows.append(
                {
                    "algo": algo,
                    "seed": seed,
                    "approx_ratio": est.phi_approx / lower if lower > 0 else float("inf"),
                    "time": est.metrics.wall_time,
                    "rounds": est.metrics.rounds,
                    "work": est.metrics.work,
                }
            )
        rows.append({**base_row, "seed": seed})

    out_csv = Path(args.out) if args.out else _out_dir(args) / "compare.csv"
    if out_csv.suffix != ".csv":
        out_csv = out_csv / "compare.csv"
    write_compare_csv(out_csv, rows)
    plot = {}
    for algo in ("cluster", "cluster2", "delta-stepping"):
        sel = [r for r in rows if r["algo"] == algo]
        plot[algo] = {
            key: [r[key] for r in sel] for key in ("approx_ratio", "rounds", "work", "time")
        }
        plot[algo]["mean"] = {
            key: float(np.mean(plot[algo][key])) for key in ("approx_ratio", "rounds", "work", "time")
        }
    plot_path = out_csv.with_suffix(".plot.json")
    plot_path.write_text(json.dumps({"graph": g.descriptor(), "tau": tau, "bars": plot},
                                    sort_keys=True, indent=2) + "\n", encoding="utf-8")
    for algo in ("cluster", "cluster2", "delta-stepping"):
        m = plot[algo]["mean"]
        print(
            f"compare {algo:>14}: ratio={m['approx_ratio']:.4f} "
            f"rounds={m['rounds']:.1f} work={m['work']:.1f} time={m['time']:.3f}s"
        )
    print(f"compare: wrote {out_csv} and {plot_path}")
    record = RunRecord(
        command="compare",
        graph=g.descriptor(),
        params={**_common_params(args), "tau": tau, "seeds": seeds,
                "delta_init": args.delta_init, "budget": args.budget},
        seed=args.seed,
        results={"csv": str(out_csv), "rows": rows, "lower": lower},
    )
    append_record(_records_path(args), record)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_verification

    report = run_verification(args.level)
    for line in report.lines:
        print(line)
    print(report.summary)
    return 0 if report.passed else 3


def cmd_oracle(args: argparse.Namespace) -> int:
    g = resolve_graph(args.graph, args.seed, args.weights)
    q = args.quantity
    if q == "diameter":
        report = OracleReport("diameter", exact_diameter(g), "chunked-dijkstra",
                              {"cap": EXACT_DIAMETER_CAP})
    elif q == "sssp":
        dist = dijkstra(g, args.source)
        finite = dist[np.isfinite(dist)]
        report = OracleReport("eccentricity", float(finite.max()), "dijkstra",
                              {"source": args.source})
    elif q == "cluster-radius":
        if args.tau is None:
            raise ValidationError("cluster-radius needs --tau")
        report = OracleReport("cluster-radius", optimal_cluster_radius(g, args.tau),
                              "exhaustive", {"tau": args.tau})
    elif q == "hop-radius":
        if args.delta_init in ("min", "mean", "tune"):
            raise ValidationError("hop-radius needs a numeric --delta-init")
        delta = resolve_delta(g, args.delta_init)
        report = OracleReport("hop-radius", float(hop_radius(g, delta)),
                              "lexicographic-dijkstra", {"delta": delta})
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown quantity {q!r}")
    print(json.dumps(vars(report), sort_keys=True))
    record = RunRecord(
        command="oracle",
        graph=g.descriptor(),
        params={**_common_params(args), "quantity": q},
        seed=args.seed,
        results=vars(report).copy(),
    )
    append_record(_records_path(args), record)
    return 0


def _add_common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        p.add_argument("--graph", required=True,
                       help="file path or descriptor (mesh:S | rmat:S | roads:C:FILE)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", default="as-given",
                   help="as-given | uniform | two-point:p,w_small,w_big")
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--delta-init", default="mean",
                   help="min | mean | tune (sssp only) | numeric value")
    p.add_argument("--budget", choices=("off", "on"), default="off")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (recorded; this build runs single-threaded)")
    p.add_argument("--out", default=None, help="output path (default under $CLUSTERDIAM_OUT or ./runs)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clusterdiam",
                     description="Cluster-growing diameter approximation benchmarks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph and write it to disk")
    _add_common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("diam", help="approximate the diameter via cluster growing")
    _add_common(p)
    p.add_argument("--algo", choices=("cluster", "cluster2"), default="cluster")
    p.add_argument("--exact", action="store_true",
                   help="also compute the exact diameter oracle (small graphs)")
    p.set_defaults(fn=cmd_diam)

    p = sub.add_parser("sssp", help="delta-stepping baseline (tunes delta by default)")
    _add_common(p)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--lower", action="store_true",
                   help="also compute the iterated-SSSP lower bound")
    p.set_defaults(fn=cmd_sssp, delta_init="tune")

    p = sub.add_parser("compare", help="both pipelines vs delta-stepping, CSV + plot data")
    _add_common(p)
    p.add_argument("--seeds", default="0,1,2,3,4,5,6,7,8,9",
                   help="comma-separated pipeline seeds")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force reference quantities")
    _add_common(p)
    p.add_argument("--quantity", required=True,
                   choices=("diameter", "sssp", "cluster-radius", "hop-radius"))
    p.add_argument("--source", type=int, default=0)
    p.set_defaults(fn=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, CacheError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
