"""Command-line front end: ``bergman-hartogs``.

Subcommands::

    list                         scenario ids with their claims
    verify <id>|all              run scenarios, write JSON/CSV reports
    norm                         one weighted L^p norm as a CSV row
    project                      Bergman projection coefficients as CSV
    scan                         sweep p (or q) for a norm, CSV output

Exit status is 0 when no report has verdict ``Fail``, 1 otherwise, and 2 for
configuration errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import inspect
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from .bergman import ProjectionSpec, counterexample_function, project_with_certificate
from .exact import PiMultiple, Profile
from .geometry import Domain, WeightSpec
from .quadrature import MonomialExpr, MonomialTerm, lp_norm
from .verify import FAIL, SCENARIOS, _coerce_params, jsonable

WORKERS_ENV = "BERGMAN_HARTOGS_WORKERS"
CSV_COLUMNS = ("scenario", "params", "quantity", "value", "error_estimate", "verdict")

# command-line flags shared by all scenarios; dest names are scenario kwargs
PARAM_FLAGS = {
    "mu_max": "exponent range 0..mu_max (tmu)",
    "degree": "polynomial degree (right-inverse)",
    "trials": "number of random functions",
    "samples": "number of random samples",
    "family": "size of the random family (operator-norm)",
    "seed": "random seed",
    "box": "truncation box size",
    "p": "exponent p",
    "q": "exponent q",
    "q_converging": "sub-critical q for the finite check (divergence)",
    "alpha": "weight exponent alpha",
    "weight_power": "target weight exponent (operator-norm)",
    "lambda_power": "lambda(r) = r^lambda_power (counterexample)",
    "chi": "cutoff profile: step or smooth (counterexample)",
    "p_values": "comma-separated list of p",
    "n_max": "largest partial-sum cutoff N",
    "terms": "number of series terms (partial-sums)",
    "nu_max": "largest monomial degree (norm-equivalence)",
    "tol": "tolerance",
}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass
class RunConfig:
    scenarios: List[str]
    overrides: Dict[str, str] = field(default_factory=dict)
    scenario_overrides: Dict[str, Dict[str, str]] = field(default_factory=dict)
    json_path: Optional[str] = None
    csv_path: Optional[str] = None
    workers: int = 1
    timing: bool = False

    def embedded(self) -> dict:
        """The part of the config that determines report contents."""
        return {
            "scenarios": list(self.scenarios),
            "overrides": dict(sorted(self.overrides.items())),
            "scenario_overrides": {k: dict(sorted(v.items())) for k, v in sorted(self.scenario_overrides.items())},
            "timing": self.timing,
        }

    @classmethod
    def from_embedded(cls, d: dict, **paths) -> "RunConfig":
        try:
            return cls(
                scenarios=list(d["scenarios"]),
                overrides=dict(d.get("overrides", {})),
                scenario_overrides={k: dict(v) for k, v in d.get("scenario_overrides", {}).items()},
                timing=bool(d.get("timing", False)),
                **paths,
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"report config: malformed field ({exc})") from None


def _accepted(scenario_id: str) -> dict:
    return dict(inspect.signature(SCENARIOS[scenario_id].run.__wrapped__).parameters)


# exponents stay strings so scenarios can read them as exact rationals
EXPONENT_KEYS = {"p", "q", "q_converging", "alpha", "weight_power", "lambda_power", "p_values"}


def _convert(name: str, value, param: inspect.Parameter):
    default = param.default
    if not isinstance(value, str):
        return value
    if name in EXPONENT_KEYS:
        try:
            for part in value.split(",") if name == "p_values" else [value]:
                if part.strip() != "p-2":
                    Fraction(part.strip())
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{name}: cannot parse {value!r}") from None
        return value
    try:
        if isinstance(default, bool):
            return value.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {value!r}") from None
    return value


def resolve_params(config: RunConfig, scenario_id: str) -> dict:
    """Effective keyword arguments: defaults < config section < global overrides."""
    accepted = _accepted(scenario_id)
    explicit = len(config.scenarios) == 1
    params = dict(SCENARIOS[scenario_id].defaults)
    layers = [config.scenario_overrides.get(scenario_id, {}), config.overrides]
    for depth, layer in enumerate(layers):
        for key, value in layer.items():
            if key not in accepted:
                if depth == 0 or explicit:
                    raise ConfigError(f"{key}: not a parameter of scenario {scenario_id!r}")
                continue
            params[key] = value
    return {k: _convert(k, v, accepted[k]) for k, v in params.items() if v is not None}


def validate(config: RunConfig) -> None:
    if not config.scenarios:
        raise ConfigError("scenarios: nothing to run")
    for sid in config.scenarios:
        if sid not in SCENARIOS:
            raise ConfigError(f"scenario: unknown id {sid!r} (see `list`)")
    for sid in config.scenario_overrides:
        if sid not in SCENARIOS:
            raise ConfigError(f"[{sid}]: unknown scenario section")
    if config.workers < 1:
        raise ConfigError("workers: must be >= 1")
    for sid in config.scenarios:
        resolve_params(config, sid)


def _run_one(scenario_id: str, params: dict):
    return SCENARIOS[scenario_id].run(**_coerce_params(params))


def execute(config: RunConfig) -> list:
    validate(config)
    jobs = [(sid, resolve_params(config, sid)) for sid in config.scenarios]
    try:
        if config.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                futures = [pool.submit(_run_one, sid, params) for sid, params in jobs]
                return [f.result() for f in futures]
        return [_run_one(sid, params) for sid, params in jobs]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def fmt_value(v) -> str:
    """17 significant digits, '.' decimal separator, no locale."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (Fraction, PiMultiple)):
        v = float(v)
    if isinstance(v, complex):
        if v.imag == 0:
            return format(v.real, ".17g")
        return f"{v.real:.17g}{v.imag:+.17g}j"
    if isinstance(v, float) or hasattr(v, "__float__"):
        return format(float(v), ".17g")
    return str(v)


def _fmt_params(params: dict) -> str:
    return ";".join(f"{k}={jsonable(v) if not isinstance(v, float) else fmt_value(v)}" for k, v in sorted(params.items()))


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row)


def report_rows(reports) -> list:
    rows = []
    for rep in reports:
        for m in rep.measurements:
            rows.append((rep.scenario, _fmt_params(m.params), m.quantity, fmt_value(m.value), fmt_value(m.error_estimate), m.verdict))
    return rows


def render_json(config: RunConfig, reports) -> str:
    doc = {
        "version": __version__,
        "config": config.embedded(),
        "reports": [r.to_dict(timing=config.timing) for r in reports],
        "verdict": FAIL if any(r.verdict == FAIL for r in reports) else "Pass",
    }
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(config: RunConfig) -> int:
    """Execute ``config``; write reports; return the exit status."""
    reports = execute(config)
    if config.json_path:
        _emit(render_json(config, reports), config.json_path)
    if config.csv_path:
        buf = io.StringIO()
        write_csv(report_rows(reports), buf)
        _emit(buf.getvalue(), config.csv_path)
    if config.json_path != "-" and config.csv_path != "-":
        for r in reports:
            extra = f" ({r.runtime_s:.2f} s)" if config.timing else ""
            print(f"{r.scenario}: {r.verdict}{extra}")
    return 1 if any(r.verdict == FAIL for r in reports) else 0


# ------------------------------------------------------------ test functions


def _parse_function(spec: str) -> MonomialExpr:
    named = {
        "one": lambda: MonomialExpr([MonomialTerm()]),
        "inv-z1": lambda: MonomialExpr([MonomialTerm(a=-1, k=-1)]),
        "z1": lambda: MonomialExpr([MonomialTerm(a=1, k=1)]),
        "z1z2": lambda: MonomialExpr([MonomialTerm(a=1, b=1, k=1, l=1)]),
        "counterexample": lambda: counterexample_function(Profile.step(Fraction(1, 2), 1)),
        "counterexample-smooth": lambda: counterexample_function(Profile.smoothstep()),
    }
    if spec in named:
        return named[spec]()
    if spec.startswith("monomial:"):
        try:
            m, n = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError:
            raise ConfigError(f"f: bad monomial {spec!r}, expected monomial:m,n") from None
        return MonomialExpr([MonomialTerm(a=m, b=n, k=m, l=n)])
    raise ConfigError(f"f: unknown function {spec!r}; choose from {sorted(named)} or monomial:m,n")


def _parse_weight(spec: str, p=None) -> Optional[WeightSpec]:
    s = spec.strip().lower()
    if s in ("none", "1", "unit"):
        return None
    if s == "delta1":
        return WeightSpec.power(1)
    for prefix in ("delta1^", "power:"):
        if s.startswith(prefix):
            e = s[len(prefix) :].strip("()")
            if e == "p-2":
                if p is None:
                    raise ConfigError("weight: p-2 needs p")
                return WeightSpec.power(Fraction(p) - 2)
            try:
                return WeightSpec.power(Fraction(e))
            except ValueError:
                break
    raise ConfigError(f"weight: cannot parse {spec!r}; use none, delta1, delta1^x or power:x")


def _parse_domain(s: str) -> Domain:
    try:
        return Domain.parse(s)
    except (KeyError, ValueError):
        raise ConfigError(f"domain: unknown domain {s!r}") from None


def _norm_row(f_name, f, p, d, weight_name, weight, tol, label="p"):
    res = lp_norm(f, p, d, weight, tol=tol, exact=False)
    params = {"f": f_name, label: jsonable(Fraction(p)), "domain": d.value, "weight": weight_name}
    rows = [("norm", _fmt_params(params), "lp_norm", fmt_value(res.value), fmt_value(res.error_estimate), res.verdict.value)]
    if res.divergence_exponent is not None and res.divergence_exponent > 1e-6:
        rows.append(("norm", _fmt_params(params), "power_exponent", fmt_value(res.divergence_exponent), "", res.verdict.value))
    elif res.log_slope is not None:
        rows.append(("norm", _fmt_params(params), "log_slope", fmt_value(res.log_slope), "", res.verdict.value))
    return rows


def _parse_fraction(name: str, s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name}: cannot parse {s!r}") from None


def cmd_norm(args) -> int:
    p = _parse_fraction("p", args.p)
    if p < 1:
        raise ConfigError("p: must be >= 1")
    d = _parse_domain(args.domain)
    rows = _norm_row(args.f, _parse_function(args.f), p, d, args.weight, _parse_weight(args.weight, p), args.tol)
    buf = io.StringIO()
    write_csv(rows, buf)
    _emit(buf.getvalue(), args.csv)
    return 0


def cmd_scan(args) -> int:
    d = _parse_domain(args.domain)
    f = _parse_function(args.f)
    values = [_parse_fraction(args.param, v) for v in args.values.split(",")]
    rows = []
    for v in values:
        if v < 1:
            raise ConfigError(f"values: {args.param} must be >= 1")
        rows += _norm_row(args.f, f, v, d, args.weight, _parse_weight(args.weight, v), args.tol, args.param)
    buf = io.StringIO()
    write_csv(rows, buf)
    _emit(buf.getvalue(), args.csv)
    return 0


def cmd_project(args) -> int:
    d = _parse_domain(args.domain)
    f = _parse_function(args.f)
    spec = ProjectionSpec.for_domain(d, args.box, backend=args.backend)
    proj = project_with_certificate(f, d, spec)
    params = {"f": args.f, "domain": d.value, "box": args.box, "backend": args.backend}
    rows = [
        ("project", _fmt_params(params), f"coeff[{m},{n}]", fmt_value(c), "", args.backend)
        for (m, n), c in sorted(proj.series.coeffs.items())
    ]
    if proj.omitted:
        print(f"warning: frequencies outside the box: {proj.omitted}", file=sys.stderr)
    buf = io.StringIO()
    write_csv(rows, buf)
    _emit(buf.getvalue(), args.csv)
    return 0


def cmd_list(args=None) -> int:
    for sid, sc in SCENARIOS.items():
        print(f"{sid}\t{sc.claim}")
    return 0


def _read_ini(path: str):
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path!r} ({exc.strerror})") from None
    except configparser.Error as exc:
        raise ConfigError(f"config: {exc}") from None
    run_section = {k.replace("-", "_"): v for k, v in cp.items("run")} if cp.has_section("run") else {}
    sections = {
        s: {k.replace("-", "_"): v for k, v in cp.items(s)} for s in cp.sections() if s != "run"
    }
    return run_section, sections


def _workers(args, run_section) -> int:
    raw = args.workers or os.environ.get(WORKERS_ENV) or run_section.get("workers") or "1"
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"workers: cannot parse {raw!r}") from None


def build_config(args) -> RunConfig:
    run_section, sections = _read_ini(args.config) if args.config else ({}, {})
    paths = {
        "json_path": args.json or run_section.get("json"),
        "csv_path": args.csv or run_section.get("csv"),
        "workers": _workers(args, run_section),
    }
    if args.from_report:
        try:
            with open(args.from_report, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"from_report: cannot load {args.from_report!r} ({exc})") from None
        if "config" not in doc:
            raise ConfigError("from_report: report has no embedded config")
        return RunConfig.from_embedded(doc["config"], **paths)
    target = args.scenario or run_section.get("scenarios")
    if not target:
        raise ConfigError("scenario: give a scenario id, 'all', or --from-report")
    scenarios = list(SCENARIOS) if target == "all" else [s.strip() for s in target.split(",")]
    overrides = {k: v for k, v in run_section.items() if k in PARAM_FLAGS}
    for key in PARAM_FLAGS:
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = v
    timing = args.timing or run_section.get("timing", "").lower() in ("1", "true", "yes", "on")
    return RunConfig(scenarios, overrides, sections, timing=timing, **paths)


def cmd_verify(args) -> int:
    return run(build_config(args))


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergman-hartogs", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--list", action="store_true", help="list scenarios and exit")
    sub = ap.add_subparsers(dest="command")

    sub.add_parser("list", help="list scenarios")

    v = sub.add_parser("verify", help="run verification scenarios")
    v.add_argument("scenario", nargs="?", help="scenario id, comma-separated ids, or 'all'")
    v.add_argument("--config", help="INI file: [run] section plus one section per scenario")
    v.add_argument("--from-report", help="re-run using the config embedded in a JSON report")
    v.add_argument("--json", help="JSON report path ('-' for stdout)")
    v.add_argument("--csv", help="CSV measurement table path ('-' for stdout)")
    v.add_argument("--workers", help=f"worker processes (env {WORKERS_ENV})")
    v.add_argument("--timing", action="store_true", help="record runtimes (reports stop being byte-stable)")
    for key, text in PARAM_FLAGS.items():
        v.add_argument("--" + key.replace("_", "-"), dest=key, help=text)

    def norm_args(sp):
        sp.add_argument("--f", required=True, help="one, inv-z1, z1, z1z2, counterexample, counterexample-smooth, monomial:m,n")
        sp.add_argument("--domain", default="hartogs")
        sp.add_argument("--weight", default="none", help="none, delta1, delta1^x, power:x (x may be p-2)")
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--csv", default="-", help="output path (default stdout)")

    n = sub.add_parser("norm", help="weighted L^p norm of a test function")
    norm_args(n)
    n.add_argument("--p", required=True)

    s = sub.add_parser("scan", help="sweep an exponent, CSV output")
    norm_args(s)
    s.add_argument("--param", choices=("p", "q"), default="q")
    s.add_argument("--values", default="3,3.5,3.9,4,4.5,5,6")

    pr = sub.add_parser("project", help="Bergman projection coefficients")
    pr.add_argument("--f", required=True)
    pr.add_argument("--domain", default="hartogs")
    pr.add_argument("--box", type=int, default=16)
    pr.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    pr.add_argument("--csv", default="-")
    return ap


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.list or args.command == "list":
        return cmd_list()
    handlers = {"verify": cmd_verify, "norm": cmd_norm, "scan": cmd_scan, "project": cmd_project}
    if args.command not in handlers:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
