"""Command-line interface.

The ``--q`` vector is ordered by word index, oldest letter first.  For m = 2:

    position  word  meaning
    0         00    P(append 1 | 00)
    1         01    P(append 1 | 01)
    2         10    P(append 1 | 10)
    3         11    P(append 1 | 11)
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .distributions import acf as analytic_acf
from .distributions import letter_marginals, stationary
from .errors import DeBruijnError, DomainError, VerificationError
from .graph import MAX_SEARCH_ORDER, TransitionSpec
from .inference import count_transitions, log_likelihood, mle, posterior, predict_next, select_order
from .ingest import Dataset, ingest, write_bits, write_synthetic_ghcn
from .presets import PRESETS, preset
from .runlength import kurtosis_and_sample_sds, run_length_model
from .sampler import SimulationConfig, empirical_acf, empirical_run_lengths, run_length_histogram, simulate, simulate_bernoulli
from .workflows import SCHEMA_VERSION, boat_race_demo, precipitation_workflow


def _parse_q(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise DomainError(f"--q must be comma-separated numbers, got {text!r}") from None


def _spec_from_args(args) -> TransitionSpec:
    if getattr(args, "preset", None):
        return preset(args.preset)
    if args.q is None:
        raise DomainError("give --q (with --m) or --preset")
    q = _parse_q(args.q)
    spec = TransitionSpec.from_values(q)
    if args.m is not None and args.m != spec.m:
        raise DomainError(f"--m {args.m} needs {2 ** args.m} values in --q, got {len(q)}")
    return spec


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="word length")
    p.add_argument("--q", help="comma-separated append-1 probabilities by word index")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named spec instead of --q")


def _add_input_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--input", required=required, help="bit file or CSV")
    p.add_argument("--format", choices=["bits", "csv"], default="bits")
    p.add_argument("--column", default="PRCP", help="CSV value column")
    p.add_argument("--date-column", default="DATE", help="CSV date column ('' for none)")
    p.add_argument("--threshold", type=float, default=0.0, help="value > threshold maps to 1")


def _load(args) -> Dataset:
    sets = ingest(args.input, args.format, args.column, args.date_column or None, args.threshold)
    return sets[0]


def _emit_json(obj: dict, out) -> None:
    obj = {"schema_version": SCHEMA_VERSION, **obj}
    out.write(json.dumps(obj, indent=2, default=str) + "\n")


def _emit_csv(header: list[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in row])


def cmd_simulate(args, out) -> int:
    cfg = SimulationConfig(args.n, args.seed, args.start)
    if args.m == 0:
        if args.q is None:
            raise DomainError("--m 0 needs --q with a single probability")
        seq = simulate_bernoulli(_parse_q(args.q)[0], cfg)
    else:
        seq = simulate(_spec_from_args(args), cfg)
    if args.output:
        write_bits(args.output, seq)
    else:
        out.write(str(seq) + "\n")
    return 0


def cmd_fit(args, out) -> int:
    ds = _load(args)
    counts = count_transitions(ds.bits, args.m)
    est = mle(counts)
    post = posterior(counts, args.prior_alpha, args.prior_beta)
    ll = log_likelihood(counts, est.spec)
    _emit_json(
        {
            "dataset": ds.name,
            "n": len(ds),
            "m": args.m,
            "mle": est.q.tolist(),
            "identified": est.identified.tolist(),
            "posterior_mean": post.mean().tolist(),
            "credible_95": post.credible_interval(0.95).tolist(),
            "log_evidence": post.log_evidence,
            "log_likelihood": ll,
            "counts": {"n0": counts.n0.tolist(), "n1": counts.n1.tolist()},
        },
        out,
    )
    return 0


def cmd_select(args, out) -> int:
    ds = _load(args)
    report = select_order(ds.bits, args.max_m, args.criterion, args.prior_alpha, args.prior_beta)
    _emit_json({"dataset": ds.name, "n": len(ds), "selected_m": report.order, **report.to_dict()}, out)
    return 0


def cmd_runlength(args, out) -> int:
    if args.input:
        ds = _load(args)
        runs = empirical_run_lengths(ds.bits, args.letter, args.include_censored)
        hist = run_length_histogram(runs, args.r_max)
        _emit_csv(["r", "count"], ((r, int(hist[r])) for r in range(1, hist.size)), out)
        return 0
    spec = _spec_from_args(args)
    if args.letter == 0:
        spec = spec.flipped()
    model = run_length_model(spec)
    r_max = args.r_max or 10
    r = np.arange(1, r_max + 1)
    _emit_csv(["r", "probability"], zip(r.tolist(), model.pdf(r).tolist()), out)
    if args.moments:
        sds = kurtosis_and_sample_sds(model, args.n_runs)
        out.write("\n")
        _emit_csv(
            ["quantity", "value"],
            [
                ("mean", model.mean()),
                ("variance", model.variance()),
                ("fourth_cumulant", sds.fourth_cumulant),
                ("n_runs", args.n_runs),
                ("two_sd_sample_mean", 2 * sds.sd_mean),
                ("two_sd_sample_variance", 2 * sds.sd_variance),
                ("fourth_central_moment", sds.fourth_central_moment),
                ("two_sd_sample_variance_central", 2 * kurtosis_and_sample_sds(model, args.n_runs, "central").sd_variance),
            ],
            out,
        )
    return 0


def cmd_acf(args, out) -> int:
    if args.input:
        vals = empirical_acf(_load(args).bits, args.kmax)
    else:
        vals = analytic_acf(_spec_from_args(args), args.kmax).correlation
    _emit_csv(["lag", "value"], zip(range(1, args.kmax + 1), vals.tolist()), out)
    return 0


def cmd_predict(args, out) -> int:
    ds = _load(args)
    counts = count_transitions(ds.bits, args.m)
    spec = mle(counts).spec if args.estimator == "mle" else posterior(counts, args.prior_alpha, args.prior_beta).mean_spec()
    context = ds.bits[-args.m :] if args.context is None else args.context
    prob = predict_next(spec, context)
    _emit_json({"dataset": ds.name, "m": args.m, "estimator": args.estimator, "q": spec.q.tolist(), "p_next_is_one": prob}, out)
    return 0


def cmd_stationary(args, out) -> int:
    spec = _spec_from_args(args)
    pi = stationary(spec)
    lm = letter_marginals(spec, pi)
    _emit_json({"m": spec.m, "q": spec.q.tolist(), "pi": pi.pi.tolist(), "p0": lm.p0, "p1": lm.p1}, out)
    return 0


def cmd_verify(args, out) -> int:
    from .verify import run_verification

    result = run_verification(n_specs=args.specs, seed=args.seed, max_length=args.budget, tol=args.tol)
    _emit_json(result, out)
    if not result["passed"]:
        raise VerificationError(f"{result['failures']} oracle cross-checks failed")
    return 0


def cmd_ingest(args, out) -> int:
    sets = ingest(args.input, args.format, args.column, args.date_column or None, args.threshold, args.season_split)
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    for ds in sets:
        path = outdir / f"{ds.name}.bits"
        write_bits(path, ds.sequence)
        meta = {"name": ds.name, "n": len(ds), "file": str(path), "source": ds.source}
        (outdir / f"{ds.name}.json").write_text(json.dumps({"schema_version": SCHEMA_VERSION, **meta}, indent=2, default=str))
        summary.append(meta)
    _emit_json({"datasets": summary}, out)
    return 0


def cmd_seasons(args, out) -> int:
    results = precipitation_workflow(args.input, args.output_dir, args.column, args.date_column, args.threshold, args.max_m)
    _emit_json(
        {
            "seasons": [
                {k: r[k] for k in ("dataset", "n", "selected_m", "posterior_mean", "n_runs", "sse")} for r in results
            ]
        },
        out,
    )
    return 0


def cmd_demo(args, out) -> int:
    if args.name == "boat-race":
        _emit_json({k: v for k, v in boat_race_demo(args.max_m).items() if k != "schema_version"}, out)
    else:
        from datetime import date

        write_synthetic_ghcn(args.output, date.fromisoformat(args.start_date), date.fromisoformat(args.end_date), args.seed)
        _emit_json({"written": args.output}, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="debruijn", description="Binary de Bruijn processes: simulation, analytics and inference.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json-errors", action="store_true", help="write errors as JSON on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a bit sequence")
    _add_spec_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", default="stationary", help="stationary | word (e.g. 01) | burnin=K")
    p.add_argument("--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="MLE and conjugate posterior for a fixed word length")
    _add_input_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prior-alpha", type=float, default=1.0)
    p.add_argument("--prior-beta", type=float, default=1.0)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("select-order", help="choose the word length")
    _add_input_args(p)
    p.add_argument("--max-m", type=int, default=MAX_SEARCH_ORDER)
    p.add_argument("--criterion", choices=["aic", "bayes"], default="bayes")
    p.add_argument("--prior-alpha", type=float, default=1.0)
    p.add_argument("--prior-beta", type=float, default=1.0)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("runlength", help="run-length pdf (analytic) or histogram (--input)")
    _add_spec_args(p)
    _add_input_args(p, required=False)
    p.add_argument("--r-max", type=int)
    p.add_argument("--letter", type=int, choices=[0, 1], default=1)
    p.add_argument("--moments", action="store_true", help="append mean, variance and sample-sd terms")
    p.add_argument("--n-runs", type=int, default=200, help="sample size for the sample-sd terms")
    p.add_argument("--include-censored", action="store_true", help="keep runs touching the sequence ends")
    p.set_defaults(func=cmd_runlength)

    p = sub.add_parser("acf", help="autocorrelation (analytic or --input)")
    _add_spec_args(p)
    _add_input_args(p, required=False)
    p.add_argument("--kmax", type=int, default=10)
    p.set_defaults(func=cmd_acf)

    p = sub.add_parser("stationary", help="stationary distribution and letter marginals")
    _add_spec_args(p)
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("predict", help="probability that the next letter is 1")
    _add_input_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--estimator", choices=["posterior", "mle"], default="posterior")
    p.add_argument("--context", help="override the context letters (default: the last m letters)")
    p.add_argument("--prior-alpha", type=float, default=1.0)
    p.add_argument("--prior-beta", type=float, default=1.0)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="cross-check analytic results against enumeration oracles")
    p.add_argument("--budget", type=int, default=12, help="max enumerated sequence length")
    p.add_argument("--specs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ingest", help="convert a bit file or CSV into bit files plus metadata")
    _add_input_args(p)
    p.add_argument("--season-split", action="store_true")
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("seasons", help="per-season order selection and run-length comparison for a daily CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--column", default="PRCP")
    p.add_argument("--date-column", default="DATE")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--max-m", type=int, default=MAX_SEARCH_ORDER)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_seasons)

    p = sub.add_parser("demo", help="embedded demos: boat-race, synthetic-ghcn")
    p.add_argument("name", choices=["boat-race", "synthetic-ghcn"])
    p.add_argument("--max-m", type=int, default=MAX_SEARCH_ORDER)
    p.add_argument("--output", default="synthetic_ghcn.csv")
    p.add_argument("--start-date", default="2000-01-01")
    p.add_argument("--end-date", default="2009-12-31")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        buf = io.StringIO()
        code = args.func(args, buf)
        out.write(buf.getvalue())
        return code
    except DeBruijnError as exc:
        if args.json_errors:
            err.write(json.dumps({"schema_version": SCHEMA_VERSION, "error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}) + "\n")
        else:
            err.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
