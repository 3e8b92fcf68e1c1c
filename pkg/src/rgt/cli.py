"""Command-line interface.

Usage:
    rgt compute --a 0.5 --xi 0 --method closed
    rgt sweep --a 0.5,1+0.2i --xi-range -2,2,5 --methods direct,closed --parallelism 4
    rgt jump --p 0.5i --xi 1
    rgt verify --suite thm1

Complex literals are written ``RE+IMi`` / ``RE-IMi``; either part may be
omitted (``0.5i``, ``2``, ``-0.5+0i``).

Settings come from flags, then a config file (``--config PATH`` or the
``RGT_CONFIG`` environment variable), then built-in defaults. The config
file holds ``key = value`` lines; ``#`` starts a comment. Recognised keys:
``abs_tol``, ``rel_tol``, ``max_subdivisions``, ``truncation_tail_tol``,
``format``, ``parallelism``.

Exit codes: 0 ok, 1 usage, 2 domain, 3 convergence, 4 partial sweep
failure, 5 verify failure.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click

from . import __version__
from .errors import DepthExceeded, DomainError, ExtrapolationUnstable, NonConvergence
from .identities import REPORT_ONLY, SUITES, LerchReport, run_suite
from .jump import jump_estimate
from .quad import QuadratureSpec
from .transforms import Method, transform

__all__ = ["main", "cli", "parse_complex", "load_config"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_PARTIAL = 4
EXIT_VERIFY = 5

ROW_COLUMNS = ["a_re", "a_im", "xi", "method", "value_re", "value_im", "err_est", "evals", "status"]
JUMP_COLUMNS = ["p_re", "p_im", "xi", "level", "kind", "delta",
                "right_re", "right_im", "left_re", "left_im", "value_re", "value_im", "discrepancy"]
VERIFY_COLUMNS = ["suite", "name", "sample_points", "max_rel_residual", "tolerance", "pass"]

METHOD_NAMES = [m.value for m in Method]

def parse_complex(text):
    """Parse ``RE+IMi`` style literals into a Python complex.

    >>> parse_complex("-0.5+0i")
    (-0.5+0j)
    >>> parse_complex("0.5i")
    0.5j
    >>> parse_complex("1e-3-2E1i")
    (0.001-20j)
    """
    s = text.strip().replace(" ", "")
    if not s or "j" in s.lower():
        raise ValueError(f"not a complex literal: {text!r}")
    try:
        z = complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise ValueError(f"not a complex literal: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value: {text!r}")
    return z


def fmt(x):
    """Full-precision decimal text (17 significant digits)."""
    return format(float(x), ".17g")


# -- configuration ---------------------------------------------------------

_CONFIG_KEYS = {
    "abs_tol": float,
    "rel_tol": float,
    "max_subdivisions": int,
    "truncation_tail_tol": float,
    "format": str,
    "parallelism": int,
}


def load_config(path):
    """Read a ``key = value`` config file into a dict of typed values."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise click.UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _CONFIG_KEYS[key](value)
            except ValueError as exc:
                raise click.UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def _settings(opts):
    path = opts.get("config") or os.environ.get("RGT_CONFIG")
    conf = load_config(path) if path else {}

    def pick(key, flag=None):
        v = opts.get(flag or key)
        return v if v is not None else conf.get(key)

    spec_kwargs = {}
    for key, flag in (("abs_tol", "abs_tol"), ("rel_tol", "rel_tol"),
                      ("max_subdivisions", "max_subdivisions"),
                      ("truncation_tail_tol", "tail_tol")):
        v = pick(key, flag)
        if v is not None:
            spec_kwargs[key] = v
    try:
        spec = QuadratureSpec(**spec_kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    fmt_ = pick("format", "fmt") or "csv"
    if fmt_ not in ("csv", "json"):
        raise click.UsageError(f"format must be csv or json, got {fmt_!r}")
    parallelism = pick("parallelism") or 1
    if parallelism < 1:
        raise click.UsageError("parallelism must be positive")
    return spec, fmt_, parallelism


def _spec_meta(spec):
    return {
        "abs_tol": fmt(spec.abs_tol),
        "rel_tol": fmt(spec.rel_tol),
        "max_subdivisions": spec.max_subdivisions,
        "truncation_tail_tol": fmt(spec.truncation_tail_tol),
    }


# -- output ----------------------------------------------------------------

def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _render(rows, columns, fmt_, meta):
    if fmt_ == "json":
        rows = [{k: row.get(k, "") for k in columns} for row in rows]
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _status(exc):
    if isinstance(exc, (DomainError, DepthExceeded)):
        return "domain_error"
    if isinstance(exc, NonConvergence):
        return "nonconvergence"
    return "error"


def _row(a, xi, method, spec, timing):
    start = time.perf_counter()
    row = {"a_re": fmt(a.real), "a_im": fmt(a.imag), "xi": fmt(xi), "method": str(method)}
    try:
        res = transform(a, xi, method, spec)
    except (DomainError, DepthExceeded, NonConvergence) as exc:
        row.update(value_re="", value_im="", err_est="", evals="", status=_status(exc))
        row["_exc"] = exc
    else:
        row.update(method=str(res.method), value_re=fmt(res.value.real),
                   value_im=fmt(res.value.imag), err_est=fmt(res.err_estimate),
                   evals=res.evaluations, status="ok")
    if timing:
        row["seconds"] = fmt(time.perf_counter() - start)
    return row


def _public(row):
    return {k: v for k, v in row.items() if not k.startswith("_")}


# -- commands --------------------------------------------------------------

def _common(f):
    options = [
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None,
                     help="Output format (default csv)."),
        click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write output here instead of stdout."),
        click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Config file; falls back to $RGT_CONFIG."),
        click.option("--abs-tol", type=float, default=None),
        click.option("--rel-tol", type=float, default=None),
        click.option("--max-subdivisions", type=int, default=None),
        click.option("--tail-tol", type=float, default=None,
                     help="Truncation tail tolerance for unbounded integrals."),
        click.option("--no-timing", is_flag=True, help="Omit the seconds column."),
    ]
    for opt in reversed(options):
        f = opt(f)
    return f


class ComplexParam(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class ComplexListParam(click.ParamType):
    name = "complex-list"

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return [parse_complex(v) for v in value.split(",") if v.strip()]
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


@click.group()
@click.version_option(__version__, prog_name="rgt")
def cli():
    """Fourier transforms of Gamma(a+it) Gamma(a-it)."""


@cli.command()
@click.option("--a", "a", type=ComplexParam(), required=True, help="Parameter a.")
@click.option("--xi", type=float, required=True, help="Frequency.")
@click.option("--method", type=click.Choice(METHOD_NAMES), default="auto", show_default=True)
@_common
def compute(a, xi, method, **opts):
    """Evaluate J(a, xi) once."""
    spec, fmt_, _ = _settings(opts)
    timing = not opts["no_timing"]
    row = _row(a, xi, Method(method), spec, timing)
    columns = ROW_COLUMNS + (["seconds"] if timing else [])
    meta = {"command": "compute", "version": __version__, "spec": _spec_meta(spec)}
    if "_exc" in row:
        exc = row["_exc"]
        click.echo(f"error: {exc}", err=True)
        code = EXIT_CONVERGENCE if isinstance(exc, NonConvergence) else EXIT_DOMAIN
        _emit(_render([_public(row)], columns, fmt_, meta), opts["out"])
        sys.exit(code)
    _emit(_render([_public(row)], columns, fmt_, meta), opts["out"])


def _parse_range(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise click.BadParameter("expected LO,HI,STEPS", param_hint="--xi-range")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--xi-range") from exc
    if lo > hi or steps < 1:
        raise click.BadParameter("need LO <= HI and STEPS >= 1", param_hint="--xi-range")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


@cli.command()
@click.option("--a", "a_list", type=ComplexListParam(), required=True,
              help="Comma-separated parameters.")
@click.option("--xi-range", required=True, help="LO,HI,STEPS (inclusive, evenly spaced).")
@click.option("--methods", default="auto", show_default=True,
              help="Comma-separated subset of: " + ", ".join(METHOD_NAMES))
@click.option("--parallelism", type=int, default=None, help="Rows evaluated concurrently.")
@_common
def sweep(a_list, xi_range, methods, parallelism, **opts):
    """Evaluate a grid of (a, xi, method) rows."""
    opts["parallelism"] = parallelism
    spec, fmt_, workers = _settings(opts)
    xis = _parse_range(xi_range)
    names = [m.strip() for m in methods.split(",") if m.strip()]
    if not names:
        raise click.UsageError("at least one method is required")
    bad = [m for m in names if m not in METHOD_NAMES]
    if bad:
        raise click.UsageError(f"unknown method(s): {', '.join(bad)}")
    if not a_list:
        raise click.UsageError("at least one value of a is required")
    timing = not opts["no_timing"]
    tasks = [(a, xi, Method(m)) for a in a_list for xi in xis for m in names]

    def run(task):
        return _row(task[0], task[1], task[2], spec, timing)

    if workers == 1:
        rows = [run(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, tasks))
    columns = ROW_COLUMNS + (["seconds"] if timing else [])
    meta = {"command": "sweep", "version": __version__, "spec": _spec_meta(spec),
            "methods": names, "xi": [fmt(x) for x in xis]}
    _emit(_render([_public(r) for r in rows], columns, fmt_, meta), opts["out"])
    if any(r["status"] != "ok" for r in rows):
        sys.exit(EXIT_PARTIAL)


def _parse_deltas(text):
    if text is None:
        return None
    try:
        return [float(d) for d in text.split(",") if d.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--deltas") from exc


@cli.command()
@click.option("--p", "p", type=ComplexParam(), required=True, help="Purely imaginary point.")
@click.option("--xi", type=float, required=True)
@click.option("--deltas", default=None, help="Comma-separated decreasing offsets.")
@click.option("--level", type=click.Choice(["J", "I"]), default="J", show_default=True)
@_common
def jump(p, xi, deltas, level, **opts):
    """Estimate the jump of J (or I = aJ) across the imaginary axis."""
    spec, fmt_, _ = _settings(opts)
    try:
        est = jump_estimate(p, xi, _parse_deltas(deltas), spec, level)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    except (ExtrapolationUnstable, NonConvergence) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONVERGENCE)
    base = {"p_re": fmt(est.p.real), "p_im": fmt(est.p.imag), "xi": fmt(est.xi), "level": level}
    rows = []
    for d, (right, left) in zip(est.deltas, est.two_sided_values):
        diff = right - left
        rows.append({**base, "kind": "sample", "delta": fmt(d),
                     "right_re": fmt(right.real), "right_im": fmt(right.imag),
                     "left_re": fmt(left.real), "left_im": fmt(left.imag),
                     "value_re": fmt(diff.real), "value_im": fmt(diff.imag), "discrepancy": ""})
    blank = {k: "" for k in ("right_re", "right_im", "left_re", "left_im")}
    rows.append({**base, **blank, "kind": "extrapolated", "delta": fmt(0.0),
                 "value_re": fmt(est.extrapolated.real), "value_im": fmt(est.extrapolated.imag),
                 "discrepancy": fmt(est.discrepancy)})
    rows.append({**base, **blank, "kind": "closed_form", "delta": fmt(0.0),
                 "value_re": fmt(est.closed_form.real), "value_im": fmt(est.closed_form.imag),
                 "discrepancy": ""})
    meta = {"command": "jump", "version": __version__, "spec": _spec_meta(spec),
            "discrepancy": fmt(est.discrepancy)}
    _emit(_render(rows, JUMP_COLUMNS, fmt_, meta), opts["out"])


def _verify_row(suite, report):
    if isinstance(report, LerchReport):
        name = f"lerch_{report.variant.value}_a={fmt(report.a)}"
        row = {"suite": suite, "name": name, "sample_points": len(report.t_values),
               "max_rel_residual": fmt(report.max_violation), "tolerance": "",
               "pass": "true" if report.passed else "false"}
        return row
    return {"suite": suite, "name": report.name, "sample_points": report.sample_points,
            "max_rel_residual": fmt(report.max_rel_residual), "tolerance": fmt(report.tolerance),
            "pass": "true" if report.passed else "false"}


@cli.command()
@click.option("--suite", type=click.Choice(["all", *SUITES]), default="all", show_default=True)
@_common
def verify(suite, **opts):
    """Run identity and cross-route checks; exit 5 if any non-lerch check fails."""
    spec, fmt_, _ = _settings(opts)
    results = run_suite(suite, spec)
    rows = [_verify_row(s, r) for s, r in results]
    meta = {"command": "verify", "version": __version__, "spec": _spec_meta(spec), "suite": suite}
    _emit(_render(rows, VERIFY_COLUMNS, fmt_, meta), opts["out"])
    failed = [r for (s, _), r in zip(results, rows) if s not in REPORT_ONLY and r["pass"] != "true"]
    if failed:
        click.echo("failed: " + ", ".join(r["name"] for r in failed), err=True)
        sys.exit(EXIT_VERIFY)


def main(argv=None):
    """Entry point; maps click usage errors to exit code 1."""
    try:
        cli.main(args=argv, prog_name="rgt", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
