"""Batch front-end: JSON job files in, JSON/CSV artifacts out.

One job per invocation; all configuration lives in the job file so that
runs are reproducible byte for byte.  Exit codes: 0 success, 2 validation
error, 3 numerical failure, 4 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import SlrestoreError, ValidationError
from .measure import classify, measure_from_json, moments
from .pipeline import run_restore, run_verify
from .restore import sweep
from .stieltjes import log_polar_grid
from .weyl import HalfLinePotential, OperatorData, WeylEvaluator, weyl_m

COMMANDS = ("classify", "moments", "restore", "sweep", "verify", "weyl")


def _fmt(x: float):
    """Shortest round-trip decimal; infinities become the string 'inf'."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n").encode()


def _csv_bytes(header, rows) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue().encode()


def _load_job(path: str, command: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            job = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cli: cannot read job file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cli: malformed job JSON: {exc}") from exc
    if not isinstance(job, dict):
        raise ValidationError("cli: job file must contain a JSON object")
    declared = job.get("command")
    if declared is not None and declared != command:
        raise ValidationError(
            f"cli: job declares command {declared!r} but {command!r} was invoked"
        )
    return job


def _job_gamma(job: dict) -> float:
    if ("gamma" in job) == ("gamma_range" in job):
        raise ValidationError("cli: exactly one of gamma / gamma_range is required")
    return float(job["gamma"])


def _job_gammas(job: dict) -> list:
    if ("gamma" in job) == ("gamma_range" in job):
        raise ValidationError("cli: exactly one of gamma / gamma_range is required")
    lo, hi, n = job["gamma_range"]
    return [float(g) for g in np.linspace(float(lo), float(hi), int(n))]


def _job_measure(job: dict):
    if "measure" not in job:
        raise ValidationError("cli: job is missing the 'measure' object")
    return measure_from_json(job["measure"])


def _job_potential(job: dict) -> Optional[HalfLinePotential]:
    obj = job.get("potential")
    if obj is None:
        return None
    try:
        q = obj["q"]
        kind = q["kind"]
        if kind == "zero":
            return HalfLinePotential(a=float(obj.get("a", 0.0)), kind="zero")
        if kind == "constant":
            return HalfLinePotential(a=float(obj.get("a", 0.0)), kind="constant",
                                     value=float(q["value"]))
        if kind == "table":
            return HalfLinePotential(
                a=float(obj.get("a", 0.0)), kind="table",
                grid=tuple(float(x) for x in q["grid"]),
                values=tuple(float(x) for x in q["values"]),
                cutoff=float(q["cutoff"]),
                q_inf=float(q.get("q_inf", 0.0)))
        raise ValidationError(f"cli: unknown potential kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"cli: bad potential JSON: {exc}") from exc


def _job_operator(job: dict) -> Optional[OperatorData]:
    obj = job.get("operator")
    if obj is None:
        return None
    if "m" not in obj:
        raise ValidationError("cli: operator data requires at least 'm'")
    return OperatorData(theta=float(obj.get("theta", -float(obj["m"]))),
                        m=float(obj["m"]),
                        c=(None if obj.get("c") is None else float(obj["c"])),
                        xi=(None if obj.get("xi") is None else float(obj["xi"])))


def _job_evaluator(job: dict, potential) -> Optional[WeylEvaluator]:
    if potential is None:
        return None
    tols = job.get("tolerances", {})
    return WeylEvaluator(potential=potential,
                         ode_tol=float(tols.get("ode", 1e-10)))


def _sectoriality_cell(sect):
    if sect.kind == "sectorial":
        return repr(sect.alpha)
    return "extremal" if sect.kind == "extremal" else "none"


# -- command implementations -------------------------------------------------

def _cmd_classify(job: dict) -> bytes:
    sigma = _job_measure(job)
    gamma = _job_gamma(job)
    tag = classify(sigma, gamma)
    mom = moments(sigma)
    return _json_bytes({"class": tag.kind, "stieltjes": tag.stieltjes,
                        "gamma": gamma, "b": _fmt(mom.b)})


def _cmd_moments(job: dict) -> bytes:
    mom = moments(_job_measure(job))
    return _json_bytes({"a": mom.a, "b": _fmt(mom.b), "i2": mom.i2,
                        "err_a": mom.err_a, "err_b": _fmt(mom.err_b),
                        "err_i2": mom.err_i2})


def _cmd_restore(job: dict) -> bytes:
    sigma = _job_measure(job)
    gamma = _job_gamma(job)
    potential = _job_potential(job)
    result = run_restore(sigma, gamma, operator=_job_operator(job),
                         potential=potential,
                         evaluator=_job_evaluator(job, potential))
    r = result.restored
    return _json_bytes({
        "h_re": r.h.real, "h_im": r.h.imag, "mu": _fmt(r.mu),
        "gamma": r.gamma,
        "alpha_rad": r.alpha if r.alpha is not None else None,
        "accretive": r.accretive, "strict": r.strict,
        "sectorial": r.sectorial, "extremal": r.extremal,
        "class": result.class_tag.kind, "stieltjes": result.class_tag.stieltjes,
        "b": _fmt(result.moments.b),
        "theta": result.operator.theta, "m": result.operator.m,
        "c": result.operator.c, "xi": result.operator.xi,
    })


def _cmd_sweep(job: dict) -> bytes:
    sigma = _job_measure(job)
    gammas = _job_gammas(job)
    potential = _job_potential(job)
    mom = moments(sigma)
    from .pipeline import resolve_operator_data

    od = resolve_operator_data(mom, _job_operator(job), potential,
                               _job_evaluator(job, potential))
    rows = sweep(mom.b, od.theta, od.m, od.xi, gammas)
    header = ["gamma", "h_re", "h_im", "mu", "alpha_rad", "accretive",
              "circle_residual", "eta_residual"]
    out = []
    for row in rows:
        out.append([repr(row.gamma), repr(row.h.real), repr(row.h.imag),
                    "inf" if math.isinf(row.mu) else repr(row.mu),
                    _sectoriality_cell(row.sectoriality),
                    1 if row.accretive else 0,
                    repr(row.circle_residual),
                    "" if math.isnan(row.eta_residual) else repr(row.eta_residual)])
    return _csv_bytes(header, out)


def _cmd_verify(job: dict) -> bytes:
    sigma = _job_measure(job)
    gamma = _job_gamma(job)
    potential = _job_potential(job)
    if potential is None:
        raise ValidationError("cli: verify requires a potential for the forward model")
    tols = job.get("tolerances", {})
    report = run_verify(sigma, gamma, potential, operator=_job_operator(job),
                        evaluator=_job_evaluator(job, potential),
                        tol=float(tols.get("verify", 1e-6)))
    return _json_bytes(report.to_json())


def _cmd_weyl(job: dict) -> bytes:
    potential = _job_potential(job)
    if potential is None:
        raise ValidationError("cli: weyl requires a potential")
    ev = _job_evaluator(job, potential)
    if "lambdas" in job:
        lams = [complex(float(p[0]), float(p[1])) for p in job["lambdas"]]
    else:
        lams = log_polar_grid(n_radius=5, n_angle=4)
    rows = []
    for lam in lams:
        m = weyl_m(ev, lam)
        err = 10.0 * ev.ode_tol * (1.0 + abs(m))
        rows.append([repr(lam.real), repr(lam.imag), repr(m.real), repr(m.imag),
                     repr(err)])
    return _csv_bytes(["lambda_re", "lambda_im", "m_re", "m_im", "err_est"], rows)


_IMPL = {
    "classify": _cmd_classify,
    "moments": _cmd_moments,
    "restore": _cmd_restore,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "weyl": _cmd_weyl,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slrestore",
        description="Classify Stieltjes-like functions and restore the "
                    "boundary parameters of their realizing systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--job", required=True, help="path to the job JSON file")
        p.add_argument("--out", default=None, help="override the output path")
        p.add_argument("--quiet", action="store_true", help="suppress the summary line")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = _load_job(args.job, args.command)
        payload = _IMPL[args.command](job)
        out_path = args.out or job.get("output", {}).get("path")
        if out_path is None:
            raise ValidationError("cli: no output path (job 'output.path' or --out)")
        Path(out_path).write_bytes(payload)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except SlrestoreError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.command == "verify":
        report = json.loads(payload)
        if not report["pass"]:
            if not args.quiet:
                print(f"verify: FAIL (max residual {report['max_residual']:.3e}) "
                      f"-> {out_path}")
            return 4
    if not args.quiet:
        print(f"{args.command}: ok -> {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
