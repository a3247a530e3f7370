"""Command-line interface: fit, generate, eval, compare, plot-data.

All randomness flows from the required --seed flag; reruns with identical
flags reproduce outputs byte for byte. Exit codes: 0 success, 1 usage,
2 input/parse, 3 internal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import graph_io
from .community import LouvainConfig, louvain
from .graph import GraphConstructionError
from .harness import (
    DEFAULT_MODELS,
    ExperimentSpec,
    plot_data_rows,
    run_experiment,
)
from .metrics import ccpd, degree_distribution, modularity, rmse_ccpd, rmse_degree
from .models import MODEL_NAMES, fit_model, generate_from_params
from .rng import derive_seed, rng_stream
from .sampling import SamplingError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_input_args(sub):
    sub.add_argument("--in", dest="input", required=True, help="input graph file")
    sub.add_argument(
        "--format",
        choices=("auto", "edgelist", "mtx"),
        default="auto",
        help="input format (default: sniffed)",
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="egbter", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    fit = subs.add_parser("fit", help="fit a model to a graph, write params JSON")
    _add_input_args(fit)
    fit.add_argument("--model", required=True, choices=("er", "cl", "bter", "gbter", "egbter"))
    fit.add_argument("--mode", choices=("density", "cc"), help="gbter only")
    fit.add_argument("--seed", type=int, required=True, help="seed for community fitting")
    fit.add_argument("--out", required=True, help="output params JSON path")
    fit.set_defaults(func=_cmd_fit)

    gen = subs.add_parser("generate", help="generate replicas from params JSON")
    gen.add_argument("--params", required=True, help="params JSON path")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, default=1, help="number of replicas")
    gen.add_argument("--out", required=True, help="output edge-list prefix")
    gen.set_defaults(func=_cmd_generate)

    ev = subs.add_parser("eval", help="score a simulated graph against a reference")
    _add_input_args(ev)
    ev.add_argument("--sim", required=True, help="simulated graph file")
    ev.add_argument("--seed", type=int, required=True)
    ev.add_argument("--out", help="optional output JSON path (default: stdout)")
    ev.set_defaults(func=_cmd_eval)

    cmp_ = subs.add_parser("compare", help="fit, sweep replicates, and report")
    _add_input_args(cmp_)
    cmp_.add_argument(
        "--models",
        default=",".join(DEFAULT_MODELS),
        help=f"comma-separated subset of {','.join(MODEL_NAMES)}",
    )
    cmp_.add_argument("--reps", type=int, default=100)
    cmp_.add_argument("--seed", type=int, required=True)
    cmp_.add_argument("--out", required=True, help="output prefix (.json and .txt)")
    cmp_.add_argument("--jobs", type=int, default=None, help="worker processes")
    cmp_.set_defaults(func=_cmd_compare)

    plot = subs.add_parser("plot-data", help="emit degree/CCPD comparison CSV")
    _add_input_args(plot)
    plot.add_argument("--sim", required=True, help="simulated graph file")
    plot.add_argument("--out", required=True, help="output CSV path")
    plot.set_defaults(func=_cmd_plot_data)

    return parser


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _cmd_fit(args) -> int:
    if args.model == "gbter" and args.mode is None:
        raise _UsageError("--mode is required for --model gbter")
    if args.model != "gbter" and args.mode is not None:
        raise _UsageError("--mode is only valid with --model gbter")
    graph, _ = graph_io.load_graph(args.input, args.format)
    extra = {}
    partition = None
    if args.model in ("gbter", "egbter"):
        louvain_seed = derive_seed(args.seed, "louvain-fit")
        partition = louvain(graph, LouvainConfig(rng_seed=louvain_seed))
        extra["louvain_seed"] = louvain_seed
    name = "gbter-cc" if (args.model == "gbter" and args.mode == "cc") else args.model
    params = fit_model(name, graph, partition)
    _write(args.out, graph_io.write_params_json(params, extra))
    return EXIT_OK


def _cmd_generate(args) -> int:
    if args.count < 1:
        raise _UsageError("--count must be >= 1")
    params = graph_io.read_params_json(Path(args.params).read_text(encoding="utf-8"))
    for r in range(args.count):
        rng = rng_stream(derive_seed(args.seed, "generate", r))
        sim = generate_from_params(params, rng)
        _write(f"{args.out}-{r:03d}.txt", graph_io.write_edge_list(sim))
    return EXIT_OK


def _cmd_eval(args) -> int:
    reference, _ = graph_io.load_graph(args.input, args.format)
    simulated, _ = graph_io.load_graph(args.sim, args.format)
    ref_part = louvain(
        reference, LouvainConfig(rng_seed=derive_seed(args.seed, "eval", "ref"))
    )
    sim_part = louvain(
        simulated, LouvainConfig(rng_seed=derive_seed(args.seed, "eval", "sim"))
    )
    result = {
        "rmse_degree": rmse_degree(
            degree_distribution(reference), degree_distribution(simulated)
        ),
        "rmse_ccpd": rmse_ccpd(ccpd(reference), ccpd(simulated)),
        "modularity_reference": modularity(reference, ref_part),
        "modularity_simulated": modularity(simulated, sim_part),
    }
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _default_jobs() -> int:
    env = os.environ.get("EGBTER_JOBS")
    if env is not None:
        return max(1, int(env))
    return os.cpu_count() or 1


def _cmd_compare(args) -> int:
    models = tuple(m.strip() for m in args.models.split(",") if m.strip())
    unknown = [m for m in models if m not in MODEL_NAMES]
    if unknown:
        raise _UsageError(f"unknown model(s) {unknown}; expected {MODEL_NAMES}")
    if not models:
        raise _UsageError("--models must name at least one model")
    if args.reps < 1:
        raise _UsageError("--reps must be >= 1")
    graph, _ = graph_io.load_graph(args.input, args.format)
    spec = ExperimentSpec(
        seed_graph=graph,
        models=models,
        replicate_count=args.reps,
        master_seed=args.seed,
        louvain_config=LouvainConfig(rng_seed=derive_seed(args.seed, "louvain-fit")),
    )
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    report = run_experiment(spec, jobs=max(1, jobs))
    _write(f"{args.out}.json", graph_io.write_report_json(report))
    _write(f"{args.out}.txt", report.to_text())
    failed = [row.name for row in report.rows if row.failed]
    if failed:
        print(f"warning: model(s) failed: {', '.join(failed)}", file=sys.stderr)
    return EXIT_OK


def _cmd_plot_data(args) -> int:
    seed_graph, _ = graph_io.load_graph(args.input, args.format)
    sim_graph, _ = graph_io.load_graph(args.sim, args.format)
    _write(args.out, graph_io.write_plot_csv(plot_data_rows(seed_graph, sim_graph)))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        graph_io.ParseError,
        GraphConstructionError,
        SamplingError,
        OSError,
        json.JSONDecodeError,
        ValueError,
        TypeError,
        KeyError,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
