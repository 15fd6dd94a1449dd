"""Command-line front end: ``burstyic {bounds,sweep,optimize,simulate,figure}``."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds as B
from .csirt.oracle import mi_oracle
from .csirt.optimize import optimize_csirt
from .csirt.params import param_names
from .errors import (BurstyICError, ConfigurationError, DomainError, InvariantViolation,
                     ParameterError)
from .ldm import ChannelConfig, Correlation, StateSequence
from .schemes import (GLOBAL_SCHEMES, LOCAL_SCHEMES, QS_SCHEMES, run_scheme_global,
                      run_scheme_local, run_scheme_qs, states_from_counts)
from .schemes.globalcsi import _check as check_global
from .schemes.plan import local_plan, qs_plan
from .sweep import (PRESETS, SCHEMA, SweepSpec, bounds_record, preset_specs, rows_to_csv,
                    rows_to_json, sweep_rows, worker_count)

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(BurstyICError):
    pass


def _setting(args) -> B.Setting:
    return B.Setting(B.Timing(args.timing), B.CSI(args.csi))


def _config(args) -> ChannelConfig:
    if args.nd < 1:
        raise UsageError("--nd must be at least 1")
    if args.nc is None:
        raise UsageError("--nc is required")
    try:
        return ChannelConfig(args.nd, args.nc, args.p, T=args.T, correlation=Correlation(args.corr))
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def cmd_bounds(cfg: ChannelConfig, setting: B.Setting, budget: int | None = None) -> dict:
    rec = bounds_record(cfg, setting, budget)
    return {"schema": SCHEMA, "command": "bounds", **rec}


def cmd_optimize(cfg: ChannelConfig, budget: int) -> dict:
    res = optimize_csirt(cfg, budget)
    from .csirt.rates import csirt_rate_pair
    pair = csirt_rate_pair(cfg, res.params)
    low_names, high_names = param_names(res.params.subregion)
    rec = {
        "schema": SCHEMA, "command": "optimize", "n_d": cfg.n_d, "n_c": cfg.n_c, "p": cfg.p,
        "subregion": res.params.subregion.value,
        "params": dict(zip(low_names + high_names, res.params.low + res.params.high)),
        "sum": res.sum_rate, "r1": pair.r1, "r2": pair.r2, "evaluations": res.evaluations,
        "csir_achievable": B.ergodic_achievable(cfg, B.Setting(B.Timing.ERGODIC, B.CSI.LOCAL_CSIR)).value,
        "converse": B.ergodic_converse(cfg, B.Setting(B.Timing.ERGODIC, B.CSI.LOCAL_CSIRT)).value,
        "oracle_residual": None,
    }
    try:
        orc = mi_oracle(cfg, res.params)
    except DomainError as exc:
        rec["oracle_note"] = str(exc)
    else:
        rec["oracle_residual"] = max(abs(orc.r1 - pair.r1), abs(orc.r2 - pair.r2))
        if rec["oracle_residual"] >= 1e-10:
            raise InvariantViolation(f"oracle residual {rec['oracle_residual']:.3g} exceeds 1e-10")
    return rec


def _one_trial(job):
    cfg, scheme, K, seed, trial, margin, b, counts = job
    if scheme in QS_SCHEMES:
        return run_scheme_qs(cfg, scheme, b, seed, trial)
    if scheme in LOCAL_SCHEMES:
        return run_scheme_local(cfg, scheme, K, seed, margin, trial)
    states = states_from_counts(counts) if counts else None
    return run_scheme_global(cfg, scheme, K, seed, trial, states=states)


def cmd_simulate(cfg: ChannelConfig, scheme: str, K: int, trials: int, seed: int,
                 margin: float = 0.05, b: tuple[int, int] = (0, 0), counts: dict | None = None,
                 workers: int | None = None) -> dict:
    if trials < 1 or K < 1:
        raise UsageError("--trials and --K must be positive")
    # reject infeasible pairings before any trial runs
    if scheme in QS_SCHEMES:
        qs_plan(cfg, scheme)
    elif scheme in LOCAL_SCHEMES:
        local_plan(cfg, scheme)
    elif scheme in GLOBAL_SCHEMES:
        check_global(cfg, scheme)
    else:
        raise ConfigurationError(f"unknown scheme {scheme!r}")
    jobs = [(cfg, scheme, K, seed, t, margin, b, counts) for t in range(trials)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=min(workers, trials)) as pool:
            outs = list(pool.map(_one_trial, jobs))
    else:
        outs = [_one_trial(j) for j in jobs]
    rates = [o.empirical_sum_rate for o in outs]
    totals = {k: sum(o.state_counts[k] for o in outs) for k in ("00", "01", "10", "11")}
    return {
        "schema": SCHEMA, "command": "simulate", "scheme": scheme, "n_d": cfg.n_d, "n_c": cfg.n_c,
        "p": cfg.p, "T": cfg.T, "K": outs[0].K, "trials": trials, "seed": seed,
        "mean_rate": statistics.fmean(rates), "median_rate": statistics.median(rates),
        "success_fraction": sum(o.decoded_ok for o in outs) / trials,
        "decode_failures": sum(o.decode_failures for o in outs),
        "bit_errors": sum(o.bit_errors for o in outs),
        "target": outs[0].target, "state_counts": totals,
        "trials_detail": [o.to_dict() for o in outs],
    }


def _add_common(sp, default_format="json"):
    sp.add_argument("--nd", type=int, default=60, help="direct-link levels (default 60)")
    sp.add_argument("--nc", type=int, default=None, help="cross-link levels")
    sp.add_argument("--p", type=float, default=0.5, help="interference probability")
    sp.add_argument("--T", type=int, default=1, help="coherence block length")
    sp.add_argument("--corr", choices=["ind", "full"], default="ind")
    sp.add_argument("--format", choices=["csv", "json"], default=default_format)
    sp.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="burstyic", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bounds", help="all bounds for one configuration")
    _add_common(sp)
    sp.add_argument("--csi", choices=[c.value for c in B.CSI], default="csir")
    sp.add_argument("--timing", choices=[t.value for t in B.Timing], default="ergodic")
    sp.add_argument("--budget", type=int, default=None)

    sp = sub.add_parser("sweep", help="sweep alpha or p")
    _add_common(sp, default_format="csv")
    sp.add_argument("--axis", choices=["alpha", "p"], required=True)
    sp.add_argument("--grid", required=True,
                    help="comma list or start:stop:step (inclusive), e.g. 0:1:0.05")
    sp.add_argument("--csi", action="append", choices=[c.value for c in B.CSI])
    sp.add_argument("--timing", choices=[t.value for t in B.Timing], default="ergodic")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--normalize", action="store_true", help="divide rates by n_d")

    sp = sub.add_parser("optimize", help="maximize the local-CSIRT sum rate")
    _add_common(sp)
    sp.add_argument("--budget", type=int, default=100_000)

    sp = sub.add_parser("simulate", help="run a scheme simulation")
    _add_common(sp)
    sp.add_argument("--scheme", required=True,
                    choices=list(QS_SCHEMES) + list(LOCAL_SCHEMES) + list(GLOBAL_SCHEMES))
    sp.add_argument("--K", type=int, default=2000)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--margin", type=float, default=0.05)
    sp.add_argument("--b", default="00", help="state pair for quasi-static schemes, e.g. 01")
    sp.add_argument("--counts", default=None,
                    help="force class counts for global schemes, e.g. A=1,B=1,C=1,D=1")

    sp = sub.add_parser("figure", help="data behind a preset family of plots")
    sp.add_argument("preset", choices=sorted(PRESETS))
    sp.add_argument("--nd", type=int, default=60)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    return ap


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        if ":" in text:
            a, b, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ValueError
            n = int(round((b - a) / step))
            return tuple(round(a + i * step, 12) for i in range(n + 1))
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, indent=1) + "\n"
    flat = {k: v for k, v in rec.items() if not isinstance(v, (dict, list))}
    keys = sorted(flat)
    vals = ["" if flat[k] is None else (format(flat[k], ".12g") if isinstance(flat[k], float)
                                         else str(flat[k])) for k in keys]
    return ",".join(keys) + "\n" + ",".join(vals) + "\n"


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "bounds":
        cfg = _config(args)
        _emit(_dump(cmd_bounds(cfg, _setting(args), args.budget), args.format), args.out)
    elif args.command == "sweep":
        if args.nd < 1:
            raise UsageError("--nd must be at least 1")
        if args.axis == "p" and args.nc is None:
            raise UsageError("--nc is required for p sweeps")
        fixed = ChannelConfig(args.nd, args.nc or 0, args.p, T=args.T, correlation=Correlation(args.corr))
        csis = args.csi or ["csir", "csirt", "global"]
        settings = tuple(B.Setting(B.Timing(args.timing), B.CSI(c)) for c in csis)
        try:
            spec = SweepSpec(args.axis, _parse_grid(args.grid), fixed, settings, args.normalize, args.budget)
        except ParameterError as exc:
            raise UsageError(str(exc)) from exc
        rows = sweep_rows(spec)
        text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows) + "\n"
        _emit(text, args.out)
    elif args.command == "optimize":
        _emit(_dump(cmd_optimize(_config(args), args.budget), args.format), args.out)
    elif args.command == "simulate":
        cfg = _config(args)
        if len(args.b) != 2 or set(args.b) - {"0", "1"}:
            raise UsageError("--b must be two bits, e.g. 01")
        counts = None
        if args.counts:
            try:
                counts = {k.strip(): int(v) for k, v in (kv.split("=") for kv in args.counts.split(","))}
            except ValueError as exc:
                raise UsageError(f"bad --counts {args.counts!r}") from exc
        rec = cmd_simulate(cfg, args.scheme, args.K, args.trials, args.seed, args.margin,
                           (int(args.b[0]), int(args.b[1])), counts)
        if args.format == "csv":
            rec = {k: v for k, v in rec.items() if k != "trials_detail"}
        _emit(_dump(rec, args.format), args.out)
    elif args.command == "figure":
        if args.nd < 1:
            raise UsageError("--nd must be at least 1")
        parts, all_rows = [], []
        for spec in preset_specs(args.preset, args.nd, args.budget):
            rows = sweep_rows(spec)
            for r in rows:
                r["series"] = spec.tag
            all_rows += rows
            parts.append(f"# {args.preset} {spec.tag}".rstrip() + "\n" + rows_to_csv(rows))
        text = "".join(parts) if args.format == "csv" else rows_to_json(all_rows, preset=args.preset) + "\n"
        _emit(text, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(argv)
    except (UsageError, ParameterError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigurationError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
