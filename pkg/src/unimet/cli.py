"""Command line interface.

Subcommands
-----------
scatter   triangle-bound Monte Carlo over Haar pairs, CSV/JSON/SVG output
verify    run the structural property suite (or replay a counterexample)
compute   evaluate one measure on matrices loaded from JSON files
haar      draw reproducible Haar samples into matrix JSON files

Exit codes: 0 success, 1 invariant violation, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .experiments import (
    ExperimentConfig,
    parse_weight_spec,
    records_to_jsonable,
    run_scatter,
    summaries_to_jsonable,
    write_csv,
)
from .haar import RNG_ALGORITHM, SeededRng, haar_unitary
from .matrixio import load_unitary, matrix_to_dict, write_matrix
from .metrics import emetric, enorm, nemetric, nenorm, noncommutativity, group_commutator
from .resources import resource_R
from .svgplot import write_scatter_svgs
from .unitary import compose, adjoint, weight_vector
from .verification import replay_counterexample, run_property_suite

_FORMATS = ("csv", "json", "svg")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    parser.add_argument("--samples", type=int, default=1000,
                        help="sample / trial count (default 1000)")
    parser.add_argument("--dims", type=_parse_dims, default=(2, 3, 4),
                        help="comma separated dimensions, e.g. 2,3,4")
    parser.add_argument("--weights", action="append", default=None, metavar="SPEC",
                        help="weight spec: 'all', 'lambda_<m>', or values '2:1:0'; repeatable")
    parser.add_argument("--tolerance", type=float, default=1e-9,
                        help="violation tolerance (default 1e-9)")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--format", dest="formats", type=_parse_formats, default=("csv",),
                        help="comma separated subset of csv,json,svg (default csv)")


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from exc
    if not dims:
        raise argparse.ArgumentTypeError("dimension list is empty")
    return dims


def _parse_formats(text: str) -> tuple[str, ...]:
    formats = tuple(tok.strip() for tok in text.split(",") if tok.strip())
    bad = [f for f in formats if f not in _FORMATS]
    if bad or not formats:
        raise argparse.ArgumentTypeError(
            f"format must be a subset of {','.join(_FORMATS)}, got {text!r}"
        )
    return formats


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimet",
        description="Eigenphase measures on unitary matrices: experiments and checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_scatter = sub.add_parser("scatter", help="triangle-bound scatter experiment")
    _add_common(p_scatter)

    p_verify = sub.add_parser("verify", help="run the property suite")
    _add_common(p_verify)
    p_verify.add_argument("--only", action="append", default=None, metavar="NAME",
                          help="restrict to named invariants; repeatable")
    p_verify.add_argument("--replay", type=Path, default=None, metavar="FILE",
                          help="recompute the margin of a dumped counterexample")

    p_compute = sub.add_parser("compute", help="evaluate one measure on matrix files")
    p_compute.add_argument("measure",
                           choices=("norm", "nnorm", "dist", "ndist", "comm", "resource"))
    p_compute.add_argument("files", nargs="+", type=Path, help="matrix JSON file(s)")
    p_compute.add_argument("--weights", required=True, metavar="SPEC",
                           help="weight values '1:1:0' or 'lambda_<m>'; for "
                                "'resource' a descending probability vector")
    p_compute.add_argument("--tolerance", type=float, default=1e-10,
                           help="unitarity validation tolerance (default 1e-10)")

    p_haar = sub.add_parser("haar", help="draw Haar samples into matrix files")
    p_haar.add_argument("--seed", type=int, default=0)
    p_haar.add_argument("--samples", type=int, default=1)
    p_haar.add_argument("--dims", type=_parse_dims, default=(2,))
    p_haar.add_argument("--out", type=Path, default=None,
                        help="directory for matrix files; stdout JSON if omitted")
    return parser


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_scatter(args) -> int:
    cfg = ExperimentConfig(
        dims=args.dims,
        samples=args.samples,
        seed=args.seed,
        weight_specs=tuple(args.weights) if args.weights else None,
        tolerance=args.tolerance,
        output_dir=str(args.out) if args.out else None,
    )
    result = run_scatter(cfg)
    out = args.out or Path.cwd()
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in args.formats:
        path = out / "scatter.csv"
        write_csv(path, result.records)
        written.append(path)
    if "json" in args.formats:
        path = out / "scatter.json"
        doc = {"meta": result.meta, "records": records_to_jsonable(result.records)}
        path.write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
        written.append(path)
    if "svg" in args.formats:
        written.extend(write_scatter_svgs(result, out))
    summary_path = out / "scatter_summary.json"
    summary_doc = {"meta": result.meta, "groups": summaries_to_jsonable(result.summaries)}
    summary_path.write_text(json.dumps(summary_doc, indent=2, sort_keys=True), encoding="utf-8")
    written.append(summary_path)

    for s in result.summaries:
        print(
            f"n={s.n} {s.weight_label:>10} {s.variant:>6}: samples={s.samples} "
            f"min_slack={s.min_slack:.3e} mean_slack={s.mean_slack:.3e} "
            f"violations={s.violations}"
        )
    for path in written:
        print(f"wrote {path}")
    if result.violations:
        print(f"FAIL: {result.violations} slack violations", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    if args.replay is not None:
        name, stored, margin = replay_counterexample(args.replay)
        print(f"invariant {name}: stored margin {stored!r}, recomputed {margin!r}")
        return 0 if margin >= 0 else 1
    cfg = ExperimentConfig(
        dims=args.dims,
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tolerance,
        output_dir=str(args.out) if args.out else None,
    )
    report = run_property_suite(
        cfg,
        names=args.only,
        progress=lambda r: print(
            f"{'PASS' if r.passed else 'FAIL'} {r.name:<28} "
            f"trials={r.trials:<5} worst_margin={r.worst_margin:.3e}"
        ),
    )
    if not report.passed:
        for r in report.failures:
            where = f" (counterexample: {r.counterexample_path})" if r.counterexample_path else ""
            print(f"FAIL: {r.name}{where}", file=sys.stderr)
        return 1
    print(f"all {len(report.results)} invariants passed")
    return 0


def _expected_files(measure: str) -> int:
    return 1 if measure in ("norm", "nnorm", "resource") else 2


def _cmd_compute(args) -> int:
    if len(args.files) != _expected_files(args.measure):
        raise ValueError(
            f"measure {args.measure!r} expects {_expected_files(args.measure)} matrix file(s)"
        )
    matrices = [load_unitary(f, tau=args.tolerance) for f in args.files]
    n = matrices[0].n
    kind, payload = parse_weight_spec(args.weights)
    if kind == "all":
        raise ValueError("compute expects a single weight spec, not 'all'")
    if kind == "lambda":
        from .metrics import lambda_basis

        if payload > n:
            raise ValueError(f"lambda_{payload} does not fit dimension {n}")
        mu = lambda_basis(payload, n)
    else:
        mu = weight_vector(payload, n=n)

    argmin_x = None
    if args.measure == "norm":
        value = enorm(matrices[0], mu)
        phase_source = matrices[0]
    elif args.measure == "nnorm":
        res = nenorm(matrices[0], mu)
        value, argmin_x = res.value, res.argmin_x
        phase_source = matrices[0]
    elif args.measure == "dist":
        value = emetric(matrices[0], matrices[1], mu)
        phase_source = compose(matrices[0], adjoint(matrices[1]))
    elif args.measure == "ndist":
        phase_source = compose(matrices[0], adjoint(matrices[1]))
        res = nenorm(phase_source, mu)
        value, argmin_x = res.value, res.argmin_x
    elif args.measure == "comm":
        phase_source = group_commutator(matrices[0], matrices[1])
        value = noncommutativity(matrices[0], matrices[1], mu)
    else:  # resource
        value = resource_R(matrices[0], mu.weights)
        res = nenorm(matrices[0], mu.weights)
        argmin_x = res.argmin_x
        phase_source = matrices[0]

    doc = {
        "value": value,
        "argmin_x": argmin_x,
        "phases": [float(t) for t in phase_source.spectrum.phases_desc],
        "meta": {
            "measure": args.measure,
            "n": n,
            "weights": [float(w) for w in mu.weights],
            "files": [str(f) for f in args.files],
        },
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_haar(args) -> int:
    if args.samples < 1:
        raise ValueError("samples must be >= 1")
    docs = []
    for n in args.dims:
        for k in range(args.samples):
            u = haar_unitary(n, SeededRng(seed=args.seed, stream_id=(n << 32) | k))
            if args.out is not None:
                args.out.mkdir(parents=True, exist_ok=True)
                path = args.out / f"haar_n{n}_{k:04d}.json"
                write_matrix(path, u)
                print(f"wrote {path}")
            else:
                docs.append(
                    {"n": n, "sample_id": k, "seed": args.seed, **matrix_to_dict(u)}
                )
    if args.out is None:
        print(json.dumps({"rng": RNG_ALGORITHM, "matrices": docs}, sort_keys=True))
    return 0


_COMMANDS = {
    "scatter": _cmd_scatter,
    "verify": _cmd_verify,
    "compute": _cmd_compute,
    "haar": _cmd_haar,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
