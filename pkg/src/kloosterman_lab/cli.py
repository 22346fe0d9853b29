"""Command-line front end.

    kloosterman-lab <command> [subcommand] [--config FILE] [key=value ...]

The config file is flat ``key = value`` text (``#`` starts a comment);
``key=value`` arguments override it.  Unknown keys are rejected.  Output
is canonical JSON (sorted keys) or CSV.  Exit codes: 0 success, 1 usage
or config error, 2 quadrature did not converge, 3 residual over tolerance.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraTag, HermitianMatrix
from .jacquet import verify_inversion, verify_partial_inversion, verify_simple_inversion
from .orbital import (WeilConstantError, default_spec, match_residual, omega, omega_tilde,
                      verify_factorization, weil_constant)
from .orbits import canonical_form, relevant_representatives
from .quadrature import QuadResult
from .schwartz import FunctionFileError, SchwartzFn, gaussian, random_closed_form

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_RESIDUAL = 0, 1, 2, 3

IDENTITIES = ("inversion", "partial-inversion", "factorization", "simple-inversion", "weil")
ORBIT_MODES = ("list", "classify")


class ConfigError(ValueError):
    pass


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _floats(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _points(text):
    """'1,2; -0.5,3' -> [(1.0, 2.0), (-0.5, 3.0)]."""
    return [tuple(_floats(p)) for p in str(text).split(";") if p.strip()]


def _sign(text):
    s = int(text)
    if s not in (1, -1):
        raise ValueError("sign must be 1 or -1")
    return s


def _choice(*options):
    def parse(text):
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text
    return parse


# key -> (parser, default); None defaults mean "command-specific"
KEYS = {
    "tag": (lambda t: AlgebraTag.parse(t).value, "SplitRR"),
    "n": (int, 1),
    "sign": (_sign, 1),
    "format": (_choice("json", "csv"), "json"),
    "output": (str, "-"),
    "workers": (int, 1),
    "function": (str, "gaussian"),
    "function2": (str, None),
    "samples": (_points, None),
    "values": (_floats, None),
    "tilde": (_bool, False),
    "i": (int, 1),
    "tolerance": (float, None),
    "method": (_choice("auto", "nested", "joint"), "auto"),
    "grid": (_floats, None),
    "include_singular": (_bool, False),
    "chart": (_floats, None),
    "diagnostic": (_bool, None),
    "rel_tol": (float, None),
    "abs_tol": (float, None),
    "max_evals": (int, None),
    "scheme": (_choice("adaptive", "tensor", "qmc"), None),
    "seed": (int, None),
    "qmc_points": (int, None),
    "qmc_shifts": (int, None),
    "qmc_transform": (_choice("normal", "box"), None),
    "truncation_radius": (float, None),
}
QUAD_KEYS = ("rel_tol", "abs_tol", "max_evals", "scheme", "seed", "qmc_points", "qmc_shifts",
             "qmc_transform", "truncation_radius")
COMMON = ("tag", "n", "sign", "format", "output", "workers") + QUAD_KEYS
ALLOWED = {
    "omega": COMMON + ("function", "samples", "tilde"),
    "verify": COMMON + ("function", "samples", "values", "i", "tolerance", "method"),
    "orbits": COMMON + ("grid", "include_singular", "chart"),
    "match": COMMON + ("function", "function2", "samples", "tolerance", "diagnostic"),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    mode: str
    values: dict

    def __getattr__(self, key):
        try:
            return self.values[key]
        except KeyError:
            raise AttributeError(key) from None

    def quad_spec(self):
        kw = {k: self.values[k] for k in QUAD_KEYS if self.values[k] is not None}
        return default_spec(workers=self.values["workers"], **kw)

    def metadata(self):
        return {"tag": self.tag, "n": self.n, "sign": self.sign}


def parse_config_text(text, source="config"):
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def build_config(command, mode, file_text=None, overrides=(), source="config"):
    raw = parse_config_text(file_text, source) if file_text else {}
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not key=value")
        k, v = item.split("=", 1)
        raw[k.strip()] = v.strip()
    allowed = ALLOWED[command]
    unknown = sorted(k for k in raw if k not in allowed)
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r} for {command}")
    values = {}
    for k in allowed:
        parser, default = KEYS[k]
        if k in raw:
            try:
                values[k] = parser(raw[k])
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"bad value for {k}: {exc}") from None
        else:
            values[k] = default
    if values["n"] < 1 or values["workers"] < 1:
        raise ConfigError("n and workers must be positive")
    return RunConfig(command, mode, values)


def load_function(spec_text, tag, n, key="function"):
    """A function file path, or ``gaussian`` / ``random:SEED``."""
    if spec_text == "gaussian":
        return gaussian(tag, n)
    if spec_text.startswith("random:"):
        return random_closed_form(tag, n, np.random.default_rng(int(spec_text.split(":", 1)[1])))
    try:
        with open(spec_text, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{key}: cannot read {spec_text}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{key}: invalid JSON ({exc.msg})") from None
    try:
        f = SchwartzFn.from_json(obj)
    except FunctionFileError as exc:
        raise ConfigError(f"{key}: bad function file, key {exc}") from None
    if f.tag.value != tag or f.n != n:
        raise ConfigError(f"{key}: function is on ({f.tag.value}, n={f.n}), config says ({tag}, n={n})")
    return f


DEFAULT_SAMPLES = {1: [(0.7,), (-1.3,)], 2: [(1.0, 2.0), (-0.7, 1.3)], 3: [(1.0, -1.5, 2.0)]}


def _samples(cfg, width=None):
    s = cfg.samples if cfg.samples is not None else DEFAULT_SAMPLES.get(cfg.n)
    if not s:
        raise ConfigError("samples must be given for this n")
    width = cfg.n if width is None else width
    if any(len(p) != width for p in s):
        raise ConfigError(f"each sample needs {width} coordinates")
    return s


def _jsonable(v):
    if isinstance(v, QuadResult):
        return v.to_json()
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


# commands return (payload, exit code); payload has "samples" rows

def cmd_omega(cfg):
    f = load_function(cfg.function, cfg.tag, cfg.n)
    spec = cfg.quad_spec()
    op = omega_tilde if cfg.tilde else omega
    rows = []
    for a in _samples(cfg):
        r = op(f, a, cfg.sign, spec)
        rows.append({**cfg.metadata(), "a": list(a), "value": r.value, "err": r.err_est,
                     "evals": r.evals, "converged": r.converged})
    code = EXIT_OK if all(r["converged"] for r in rows) else EXIT_NONCONVERGED
    return {"samples": rows, "tilde": cfg.tilde}, code


DEFAULT_TOL = {"inversion": lambda n: 1e-8 if n == 1 else 1e-2, "partial-inversion": lambda n: 1e-3,
               "factorization": lambda n: 1e-4 if n <= 2 else 1e-2, "weil": lambda n: 1e-3}


def _report_payload(cfg, report, tol):
    out = report.to_json()
    for row in out["samples"]:
        row.update(cfg.metadata())
    out["tolerance"] = tol
    if not report.converged:
        return out, EXIT_NONCONVERGED
    return out, EXIT_OK if report.max_rel_residual <= tol else EXIT_RESIDUAL


def cmd_verify(cfg):
    ident, spec = cfg.mode, cfg.quad_spec()
    tol = cfg.tolerance
    if ident == "weil":
        tol = DEFAULT_TOL["weil"](cfg.n) if tol is None else tol
        try:
            w = weil_constant(cfg.tag, cfg.sign)
        except WeilConstantError as exc:
            return {"error": str(exc), "samples": []}, EXIT_RESIDUAL
        row = {**cfg.metadata(), **w.to_json()}
        return {"samples": [row], "tolerance": tol}, EXIT_OK if w.residual <= tol else EXIT_RESIDUAL
    f = load_function(cfg.function, cfg.tag, cfg.n)
    if ident == "simple-inversion":
        vals = cfg.values if cfg.values is not None else [0.5, -0.5, 1.0, -1.0, 2.0]
        report = verify_simple_inversion(f, vals, cfg.sign, spec)
        out = report.to_json()
        ok = all(r["residual"] <= 3.0 * r["err"] + 1e-12 * max(1.0, abs(r["definition"]))
                 for r in report.samples)
        for row in out["samples"]:
            row.update(cfg.metadata())
        out["tolerance"] = "3x combined error"
        if not report.converged:
            return out, EXIT_NONCONVERGED
        return out, EXIT_OK if ok else EXIT_RESIDUAL
    tol = DEFAULT_TOL[ident](cfg.n) if tol is None else tol
    if ident == "inversion":
        report = verify_inversion(f, _samples(cfg), cfg.sign, spec, spec)
    elif ident == "partial-inversion":
        report = verify_partial_inversion(f, cfg.i, _samples(cfg, 2), cfg.sign, spec, spec)
    else:
        report = verify_factorization(f, cfg.i, _samples(cfg), cfg.sign, spec, spec, cfg.method)
    return _report_payload(cfg, report, tol)


def cmd_orbits(cfg):
    if cfg.mode == "list":
        grid = cfg.grid if cfg.grid is not None else [1.0, -1.0]
        reps = relevant_representatives(cfg.tag, cfg.n, grid, cfg.include_singular)
        rows = [{**cfg.metadata(), "index": k, **r.to_json()} for k, r in enumerate(reps)]
        return {"samples": rows, "count": len(rows)}, EXIT_OK
    if cfg.chart is None:
        raise ConfigError("orbits classify needs chart = comma separated chart coordinates")
    if len(cfg.chart) != cfg.n * cfg.n:
        raise ConfigError(f"chart needs {cfg.n * cfg.n} coordinates")
    x = HermitianMatrix.from_chart(AlgebraTag.parse(cfg.tag), cfg.n, np.array(cfg.chart))
    rep = canonical_form(x)
    row = {**cfg.metadata(), "chart": list(cfg.chart),
           "verdict": "relevant" if rep is not None else "irrelevant",
           "representative": rep.to_json() if rep is not None else None}
    return {"samples": [row]}, EXIT_OK


def cmd_match(cfg):
    if cfg.function2 is None:
        raise ConfigError("match needs function (SplitRR) and function2 (ComplexC)")
    phi = load_function(cfg.function, "SplitRR", cfg.n)
    psi_fn = load_function(cfg.function2, "ComplexC", cfg.n, "function2")
    rep = match_residual(phi, psi_fn, _samples(cfg), cfg.quad_spec())
    rows = [{"n": cfg.n, "sign": 1, "tag": "SplitRR+ComplexC", **r} for r in rep["samples"]]
    diagnostic = cfg.diagnostic if cfg.diagnostic is not None else cfg.n >= 2
    tol = 1e-8 if cfg.tolerance is None else cfg.tolerance
    out = {"samples": rows, "max_residual": rep["max_residual"], "diagnostic": diagnostic,
           "tolerance": tol}
    if not all(r["converged"] for r in rows):
        return out, EXIT_NONCONVERGED
    if diagnostic:
        return out, EXIT_OK
    return out, EXIT_OK if rep["max_residual"] <= tol else EXIT_RESIDUAL


COMMANDS = {"omega": cmd_omega, "verify": cmd_verify, "orbits": cmd_orbits, "match": cmd_match}


def _flatten(row, prefix=""):
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list) and all(not isinstance(x, (list, dict)) for x in v):
            out[key] = " ".join(repr(x) for x in v)
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def render(payload, fmt):
    payload = _jsonable(payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    rows = [_flatten(r) for r in payload.get("samples", [])]
    summary = _flatten({k: v for k, v in payload.items() if k != "samples"}, "summary.")
    rows = [{**r, **summary} for r in rows] or [summary]
    fields = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = argparse.ArgumentParser(prog="kloosterman-lab", description="Kloosterman orbital integral checks")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "verify":
            p.add_argument("mode", choices=IDENTITIES)
        elif name == "orbits":
            p.add_argument("mode", choices=ORBIT_MODES)
        p.add_argument("--config", help="flat key = value file")
        p.add_argument("overrides", nargs="*", metavar="key=value")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        text = None
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
        cfg = build_config(args.command, getattr(args, "mode", ""), text, args.overrides,
                           args.config or "config")
        payload, code = COMMANDS[args.command](cfg)
    except (ConfigError, NotImplementedError, ValueError) as exc:
        print(f"kloosterman-lab: error: {exc}", file=stderr)
        return EXIT_USAGE
    payload = {"command": args.command, "mode": cfg.mode, **payload}
    text = render(payload, cfg.format)
    if cfg.output == "-":
        stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
