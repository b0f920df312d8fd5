"""Command-line front end.

Examples::

    qaoa-landscape --fixture 33 hamiltonian
    qaoa-landscape --fixture 7 landscape --mode exact-sim --out exp7.csv
    qaoa-landscape --all-fixtures metrics
    qaoa-landscape --fixture 13 optimize --shots 2048 --max-iter 1000 --seed 3

Exit status: 0 on success, 1 on computation or I/O errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from qaoa_landscape.analytic import METRIC_GRID, GridSpec, fmt, landscape_grid
from qaoa_landscape.errors import Graph6Error
from qaoa_landscape.graphs import (
    FIXTURE_IDS,
    Graph,
    brute_force_maxcut,
    encode_graph6,
    fixture_graph,
    parse_graph6,
    read_graph6_file,
)
from qaoa_landscape.ising import augmented_matrix, exact_decimal, hamiltonian_report, maxcut_ising
from qaoa_landscape.roughness import metrics_row
from qaoa_landscape.simulator import exact_objective, sampled_objective, simulated_landscape
from qaoa_landscape.spsa import spsa_optimize

COMMANDS = ("hamiltonian", "landscape", "metrics", "optimize", "graphs")


class UsageError(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Subparsers repeat the common flags with SUPPRESS defaults so a flag given
    # after the command does not clobber one given before it.
    def d(value):
        return argparse.SUPPRESS if suppress else value

    src = parser.add_argument_group("input")
    src.add_argument("--fixture", type=int, choices=FIXTURE_IDS, default=d(None),
                     help="experiment graph id")
    src.add_argument("--graph6", default=d(None), metavar="RECORD", help="graph6 literal")
    src.add_argument("--graph6-file", type=Path, default=d(None), metavar="PATH")
    src.add_argument("--record", type=int, default=d(None),
                     help="record index within --graph6-file (default: first, or all for metrics/graphs)")
    src.add_argument("--all-fixtures", action="store_true", default=d(False))

    run = parser.add_argument_group("run")
    run.add_argument("--beta-steps", type=int, default=d(None), help="grid rows (default 64)")
    run.add_argument("--gamma-steps", type=int, default=d(None), help="grid columns (default 128)")
    run.add_argument("--mode", choices=("analytic", "exact-sim", "sampled"), default=d("analytic"))
    run.add_argument("--shots", type=int, default=d(None))
    run.add_argument("--max-iter", type=int, default=d(1000))
    run.add_argument("--seed", type=int, default=d(None))
    run.add_argument("--exact", action="store_true", default=d(False),
                     help="optimize against the exact statevector expectation")
    run.add_argument("--trace", type=Path, default=d(None), help="optimize: write trace CSV here")
    run.add_argument("--out", type=Path, default=d(None), help="output file (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default=d(None))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-landscape",
        description="Max-Cut Ising models, p=1 QAOA landscapes, roughness metrics and SPSA runs.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    helps = {
        "hamiltonian": "Ising coefficients, augmented matrix, sparsity and symmetry periods (JSON)",
        "landscape": "energy grid as beta,gamma,energy CSV with a metadata sidecar",
        "metrics": "sparsity, total variation and Fourier density per graph",
        "optimize": "SPSA minimisation of the p=1 expectation",
        "graphs": "list or decode graph6 inputs",
    }
    for name in COMMANDS:
        _add_common(sub.add_parser(name, help=helps[name]), suppress=True)
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _rounded(obj):
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_rounded(obj), indent=2) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _inputs(args, multi: bool) -> list[tuple[object, Graph]]:
    sources = [args.fixture is not None, args.graph6 is not None,
               args.graph6_file is not None, args.all_fixtures]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --fixture, --graph6, --graph6-file, --all-fixtures")
    if args.all_fixtures:
        if not multi:
            raise UsageError(f"{args.command} takes a single graph; --all-fixtures is not allowed")
        return [(e, fixture_graph(e)) for e in FIXTURE_IDS]
    if args.fixture is not None:
        return [(args.fixture, fixture_graph(args.fixture))]
    if args.graph6 is not None:
        try:
            return [(args.graph6, parse_graph6(args.graph6))]
        except Graph6Error as exc:
            raise UsageError(f"--graph6: {exc}") from exc

    graphs = read_graph6_file(args.graph6_file)
    labelled = [(f"{args.graph6_file}#{i}", g) for i, g in enumerate(graphs)]
    if args.record is not None:
        if not 0 <= args.record < len(labelled):
            raise UsageError(f"--record {args.record} out of range; file has {len(labelled)} records")
        return [labelled[args.record]]
    if not labelled:
        raise UsageError(f"{args.graph6_file} contains no graph6 records")
    return labelled if multi else labelled[:1]


def _grid(args, base: GridSpec) -> GridSpec:
    return GridSpec(
        base.beta_range,
        base.gamma_range,
        args.beta_steps if args.beta_steps is not None else base.rows,
        args.gamma_steps if args.gamma_steps is not None else base.cols,
    )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_hamiltonian(args) -> None:
    (label, g), = _inputs(args, multi=False)
    report = {"input": label, "graph6": encode_graph6(g)}
    report.update(hamiltonian_report(g))
    _emit(_dump_json(report), args.out)


def cmd_landscape(args) -> None:
    (label, g), = _inputs(args, multi=False)
    grid = _grid(args, GridSpec())
    if args.mode == "sampled":
        if args.shots is None or args.seed is None:
            raise UsageError("--mode sampled needs both --shots and --seed")
        land = simulated_landscape(maxcut_ising(g), grid, "sampled-sim", args.shots, args.seed)
    elif args.mode == "exact-sim":
        land = simulated_landscape(maxcut_ising(g), grid, "exact-sim")
    else:
        land = landscape_grid(g, grid)

    meta = {"input": label, "graph6": encode_graph6(g), **land.metadata(),
            "shots": args.shots if args.mode == "sampled" else None,
            "seed": args.seed if args.mode == "sampled" else None}
    if args.format == "json":
        _emit(_dump_json({**meta, "values": land.values.tolist()}), args.out)
        return
    _emit(land.to_csv(), args.out)
    if args.out is not None:
        sidecar = args.out.with_name(args.out.name + ".meta.json")
        sidecar.write_text(_dump_json(meta))


_METRIC_COLUMNS = ("experiment", "sparsity", "totalVariation", "fourierDensity",
                   "flatSpectrum", "betaPeriod", "gammaPeriod")


def cmd_metrics(args) -> None:
    grid = _grid(args, METRIC_GRID)
    rows = [metrics_row(g, label, grid) for label, g in _inputs(args, multi=True)]
    if args.format == "csv":
        lines = [",".join(_METRIC_COLUMNS)]
        for row in rows:
            lines.append(",".join(
                "" if row[c] is None else fmt(row[c]) if isinstance(row[c], float) else str(row[c])
                for c in _METRIC_COLUMNS
            ))
        _emit("\n".join(lines) + "\n", args.out)
        return
    payload = rows if args.all_fixtures or len(rows) > 1 else rows[0]
    _emit(_dump_json(payload), args.out)


def cmd_optimize(args) -> None:
    (label, g), = _inputs(args, multi=False)
    if args.shots is not None and args.seed is None:
        raise UsageError("--shots requires --seed")
    if args.shots is not None and args.exact:
        raise UsageError("--exact and --shots are mutually exclusive")
    if args.max_iter < 1:
        raise UsageError("--max-iter must be at least 1")
    seed = 0 if args.seed is None else args.seed
    model = maxcut_ising(g)
    if args.shots is not None:
        objective = sampled_objective(model, args.shots, seed)
    else:
        objective = exact_objective(model)
    result = spsa_optimize(objective, args.max_iter, seed)
    optimum = -brute_force_maxcut(g).best_value

    payload = {
        "input": label,
        "graph6": encode_graph6(g),
        "objective": "sampled" if args.shots is not None else "exact",
        "shots": args.shots,
        "maxIter": args.max_iter,
        "bruteForceOptimum": optimum,
        **result.to_dict(),
    }
    _emit(_dump_json(payload), args.out)
    if args.trace is not None:
        args.trace.write_text(result.trace_csv())
    print(f"best expectation {fmt(result.best_expectation)}  brute-force optimum {optimum}",
          file=sys.stderr)


def cmd_graphs(args) -> None:
    rows = []
    for label, g in _inputs(args, multi=True):
        rows.append({
            "input": label,
            "graph6": encode_graph6(g),
            "n": g.n,
            "edges": [list(e) for e in g.edges],
            "sparsity": exact_decimal(augmented_matrix(maxcut_ising(g)).sparsity),
        })
    if args.format == "csv":
        lines = ["input,graph6,n,num_edges,sparsity"]
        lines += [f"{r['input']},{r['graph6']},{r['n']},{len(r['edges'])},{r['sparsity']}" for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump_json(rows), args.out)


HANDLERS = {
    "hamiltonian": cmd_hamiltonian,
    "landscape": cmd_landscape,
    "metrics": cmd_metrics,
    "optimize": cmd_optimize,
    "graphs": cmd_graphs,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        HANDLERS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, ValueError, LookupError, RuntimeError) as exc:
        print(f"qaoa-landscape: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
