"""Command-line front end: load -> preprocess -> project -> solve/sample -> report."""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .digraph import WeightedDigraph
from .dynamics import (
    DENSE_LIMIT_DEFAULT,
    exact_equilibrium,
    fj_iterate,
    overall_opinion,
    polarization,
)
from .enumeration import enumerate_in_forests, forest_matrix_bruteforce
from .hypergraph import (
    Hypergraph,
    filter_singletons,
    powerlaw_gamma,
    random_opinions,
    synthetic_hypergraph,
    uniform_gamma,
    unit_edge_weights,
)
from .io import RunReport, SimplexDatasetRef, load_hyperedge_list, load_simplex_dataset, write_report
from .projection import project_clique, project_directed
from .sampler import TAU_DEFAULT, SamplerConfig, estimate, estimator_stderr


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--edges", help="hyperedge list file (one comma-separated edge per line)")
    p.add_argument("--nverts", help="simplex dataset: per-simplex vertex-count file")
    p.add_argument("--simplices", help="simplex dataset: concatenated vertex-list file")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--projection", choices=["clique", "directed"], default="clique")
    p.add_argument("--gamma", choices=["uniform", "powerlaw"], default="uniform",
                   help="contribution fractions: homogeneous or heavy-tailed random")
    p.add_argument("--gamma-seed", type=int, default=0)
    p.add_argument("--unit-weights", action="store_true", help="force all hyperedge weights to 1")
    p.add_argument("--keep-singletons", action="store_true",
                   help="keep single-node hyperedges (projection will reject them)")
    p.add_argument("--opinions", help="internal opinions file, one value in [0,1] per line")
    p.add_argument("--opinion-seed", type=int, default=0)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default="-", help="output path, - for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperfj",
                                     description="Opinion dynamics on hypergraphs via "
                                                 "graph projection and forest sampling")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="dataset statistics")
    _add_input_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("project", help="emit the projected graph's arc list")
    _add_input_flags(p)
    _add_pipeline_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("solve", help="exact equilibrium opinions")
    _add_input_flags(p)
    _add_pipeline_flags(p)
    _add_output_flags(p)
    p.add_argument("--method", choices=["exact", "iterate"], default="exact")
    p.add_argument("--tol", type=float, default=1e-10, help="iteration stop tolerance")
    p.add_argument("--dense-limit", type=int, default=DENSE_LIMIT_DEFAULT)

    p = sub.add_parser("sample", help="forest-sampling estimate of the equilibrium")
    _add_input_flags(p)
    _add_pipeline_flags(p)
    _add_output_flags(p)
    p.add_argument("--tau", type=int, default=TAU_DEFAULT, help="number of sampled forests")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("compare", help="run exact and sampled side by side")
    _add_input_flags(p)
    _add_pipeline_flags(p)
    _add_output_flags(p)
    p.add_argument("--tau", type=int, default=TAU_DEFAULT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dense-limit", type=int, default=DENSE_LIMIT_DEFAULT)

    p = sub.add_parser("enumerate", help="brute-force forest census of the projected graph")
    _add_input_flags(p)
    _add_pipeline_flags(p)
    _add_output_flags(p)
    p.add_argument("--omega", action="store_true", help="also emit the forest matrix")

    p = sub.add_parser("bench", help="sampling runtime over a ladder of synthetic hypergraphs")
    _add_output_flags(p)
    p.add_argument("--sizes", default="10000,20000,40000,80000",
                   help="comma-separated n+m targets")
    p.add_argument("--tau", type=int, default=TAU_DEFAULT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--repeats", type=int, default=1,
                   help="time each rung this many times and report the best")
    return parser


def _load_hypergraph(args) -> Hypergraph:
    if args.edges and (args.nverts or args.simplices):
        raise ValueError("give either --edges or --nverts/--simplices, not both")
    if args.edges:
        return load_hyperedge_list(args.edges).hypergraph
    if args.nverts and args.simplices:
        return load_simplex_dataset(SimplexDatasetRef(args.nverts, args.simplices)).hypergraph
    raise ValueError("no input: give --edges or both --nverts and --simplices")


def _preprocess(h: Hypergraph, args) -> Hypergraph:
    if not args.keep_singletons:
        h = filter_singletons(h)
    if args.unit_weights:
        h = unit_edge_weights(h)
    if args.gamma == "powerlaw":
        h = powerlaw_gamma(h, args.gamma_seed)
    else:
        h = uniform_gamma(h)
    return h


def _project(h: Hypergraph, args) -> WeightedDigraph:
    return project_directed(h) if args.projection == "directed" else project_clique(h)


def _opinions(args, n: int) -> np.ndarray:
    if args.opinions:
        values = []
        with open(args.opinions) as fh:
            for ln, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    values.append(float(line))
                except ValueError:
                    raise ValueError(f"{args.opinions}:{ln}: bad opinion {line!r}") from None
        x = np.asarray(values)
        if x.shape != (n,):
            raise ValueError(f"{args.opinions}: {len(values)} opinions for {n} nodes")
        if x.size and (x.min() < 0.0 or x.max() > 1.0):
            raise ValueError(f"{args.opinions}: internal opinions must lie in [0,1]")
        return x
    return random_opinions(n, args.opinion_seed)


def _config_echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "command" and v is not None}


def _emit(obj: dict, args) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _cmd_stats(args) -> int:
    h = _load_hypergraph(args)
    filtered = filter_singletons(h)
    sizes = [e.size for e in h.edges]
    _emit(
        {
            "nodes": h.n,
            "hyperedges": h.num_edges,
            "singleton_hyperedges": h.num_edges - filtered.num_edges,
            "hyperedges_after_filter": filtered.num_edges,
            "max_hyperedge_size": max(sizes) if sizes else 0,
            "config": _config_echo(args),
        },
        args,
    )
    return 0


def _cmd_project(args) -> int:
    g = _project(_preprocess(_load_hypergraph(args), args), args)
    if args.format == "csv":
        lines = ["source,target,weight"]
        lines += [f"{i},{j},{format(w, '.17g')}" for i, j, w in g.arcs()]
        text = "\n".join(lines) + "\n"
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
    else:
        _emit(
            {
                "n": g.n,
                "m": g.m,
                "arcs": [[i, j, w] for i, j, w in g.arcs()],
                "config": _config_echo(args),
            },
            args,
        )
    return 0


def _solve_report(args, g: WeightedDigraph, x: np.ndarray) -> RunReport:
    start = time.perf_counter()
    if args.method == "iterate":
        result = fj_iterate(g, x, tol=args.tol)
        z = result.z
    else:
        z = exact_equilibrium(g, x, dense_limit=args.dense_limit).z
    elapsed = time.perf_counter() - start
    return RunReport(
        n=g.n, m=g.m,
        overall_internal=overall_opinion(x),
        overall_expressed=overall_opinion(z),
        polarization=polarization(z) if g.n else 0.0,
        elapsed_seconds=elapsed,
        x=x, z=z,
        config=_config_echo(args),
    )


def _cmd_solve(args) -> int:
    h = _preprocess(_load_hypergraph(args), args)
    g = _project(h, args)
    x = _opinions(args, g.n)
    write_report(_solve_report(args, g, x), args.out, args.format)
    return 0


def _cmd_sample(args) -> int:
    h = _preprocess(_load_hypergraph(args), args)
    g = _project(h, args)
    x = _opinions(args, g.n)
    cfg = SamplerConfig(tau=args.tau, seed=args.seed, worker_count=args.workers)
    start = time.perf_counter()
    report = estimate(g, x, cfg)
    elapsed = time.perf_counter() - start
    write_report(
        RunReport(
            n=g.n, m=g.m,
            overall_internal=overall_opinion(x),
            overall_expressed=report.overall_hat,
            polarization=report.polarization_hat,
            elapsed_seconds=elapsed,
            tau=cfg.tau, seed=cfg.seed,
            x=x, z=report.z_hat,
            config=_config_echo(args),
        ),
        args.out, args.format,
    )
    return 0


def _cmd_compare(args) -> int:
    h = _preprocess(_load_hypergraph(args), args)
    g = _project(h, args)
    x = _opinions(args, g.n)
    exact = exact_equilibrium(g, x, dense_limit=args.dense_limit)
    cfg = SamplerConfig(tau=args.tau, seed=args.seed, worker_count=args.workers)
    sampled = estimate(g, x, cfg)
    stderr = estimator_stderr(g, x, cfg)
    _emit(
        {
            "n": g.n,
            "m": g.m,
            "overall_internal": overall_opinion(x),
            "exact": {"overall": exact.overall, "polarization": exact.polarization},
            "sample": {
                "overall": sampled.overall_hat,
                "polarization": sampled.polarization_hat,
                "tau": cfg.tau,
                "seed": cfg.seed,
            },
            "max_abs_z_error": float(np.max(np.abs(sampled.z_hat - exact.z))) if g.n else 0.0,
            "abs_polarization_error": abs(sampled.polarization_hat - exact.polarization),
            "max_stderr": float(stderr.max()) if g.n else 0.0,
            "config": _config_echo(args),
        },
        args,
    )
    return 0


def _cmd_enumerate(args) -> int:
    g = _project(_preprocess(_load_hypergraph(args), args), args)
    family = enumerate_in_forests(g)
    payload = {
        "n": g.n,
        "m": g.m,
        "forest_count": len(family),
        "total_weight": float(family.total_weight),
        "config": _config_echo(args),
    }
    if args.omega:
        payload["omega"] = forest_matrix_bruteforce(g).omega.tolist()
    _emit(payload, args)
    return 0


def _bench_instance(target: int, seed: int):
    # synthetic ladder: size-3 hyperedges, each contributing <= 6 arcs
    n = max(10, target // 5)
    num_edges = max(1, (target - n) // 6)
    h = synthetic_hypergraph(n, num_edges, seed=seed, min_size=3, max_size=3)
    return project_directed(powerlaw_gamma(h, seed))


def _cmd_bench(args) -> int:
    targets = [int(tok) for tok in args.sizes.split(",") if tok]
    cfg_base = dict(tau=args.tau, seed=args.seed, worker_count=args.workers)
    # warm the sampler so JIT compilation is not billed to the first rung
    tiny = _bench_instance(200, args.seed)
    estimate(tiny, random_opinions(tiny.n, 0), SamplerConfig(tau=2, seed=0))
    rows = []
    for target in targets:
        g = _bench_instance(target, args.seed)
        x = random_opinions(g.n, args.seed)
        elapsed = None
        for _ in range(max(1, args.repeats)):
            start = time.perf_counter()
            estimate(g, x, SamplerConfig(**cfg_base))
            took = time.perf_counter() - start
            elapsed = took if elapsed is None else min(elapsed, took)
        rows.append({"target": target, "n": g.n, "m": g.m,
                     "n_plus_m": g.n + g.m, "elapsed_seconds": elapsed})
    _emit({"tau": args.tau, "runs": rows, "config": _config_echo(args)}, args)
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "project": _cmd_project,
    "solve": _cmd_solve,
    "sample": _cmd_sample,
    "compare": _cmd_compare,
    "enumerate": _cmd_enumerate,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
