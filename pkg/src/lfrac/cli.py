"""Command-line front end.

::

    lfrac eval lfunc --alpha 0.5 --beta 1 --z 0.5,1,2
    lfrac apply B --alpha 0.5 --f phi:1,1,0 --x 1 --oracle
    lfrac verify all --format json
    lfrac table --input rows.json --format csv

Grids are comma-separated lists; complex numbers use ``j`` or ``i``
(``1+0.5i``). Test functions are written ``phi:c,d,k``, ``psi:k,d``,
``power:s`` or ``stretched:alpha``; ``lp:<function>`` is its Laplace image.
Exit codes: 0 success, 1 failed verification or numerical failure, 2 bad
parameters, 3 input/output error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from . import halfline, holo, lfunc, stable
from .errors import DomainError, LfracError
from .halfline import HalfLineFunction, HoloFunction
from .quadrature import DEFAULT_SPEC, OPERATOR_SPEC, QuadSpec

__all__ = ["main", "parse_number", "parse_function", "format_number"]

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(DomainError):
    """Malformed command line."""


# ---------------------------------------------------------------- parsing


def parse_number(text: str) -> complex:
    """Decimal number with optional exponent; a trailing ``i`` or ``j`` marks the imaginary part."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        v = complex(s)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not cmath.isfinite(v):
        raise UsageError(f"not a finite number: {text!r}")
    return v


def _real(text: str, key: str) -> float:
    v = parse_number(text)
    if v.imag != 0:
        raise UsageError(f"--{key} must be real")
    return v.real


def _grid(text: str) -> List[complex]:
    return [parse_number(t) for t in text.split(",") if t.strip()]


def _real_grid(text: str, key: str) -> List[float]:
    return [_real(t, key) for t in text.split(",") if t.strip()]


_FAMILIES = {
    "phi": ("c", "d", "k"),
    "psi": ("k", "d"),
    "power": ("s",),
    "stretched": ("alpha",),
}


def parse_function(text: str):
    """``phi:1,1,0`` -> :class:`HalfLineFunction`; ``lp:phi:1,1,0`` -> its Laplace image."""
    if text.startswith("lp:"):
        return halfline.laplace_image(parse_function(text[3:]))
    kind, _, args = text.partition(":")
    if kind not in _FAMILIES:
        raise UsageError(f"unknown test function family {kind!r}")
    names = _FAMILIES[kind]
    vals = [_real(a, kind) for a in args.split(",")] if args else []
    if len(vals) > len(names):
        raise UsageError(f"{kind} takes at most {len(names)} parameters")
    params = dict(zip(names, vals))
    return halfline.make_test_function("stretched_exp" if kind == "stretched" else kind, **params)


def _env_spec(base: QuadSpec) -> QuadSpec:
    rel, ab = base.rel_tol, base.abs_tol
    try:
        if os.environ.get("LFRAC_REL_TOL"):
            rel = float(os.environ["LFRAC_REL_TOL"])
        if os.environ.get("LFRAC_ABS_TOL"):
            ab = float(os.environ["LFRAC_ABS_TOL"])
    except ValueError:
        raise UsageError("LFRAC_REL_TOL and LFRAC_ABS_TOL must be numbers") from None
    return QuadSpec(rel_tol=rel, abs_tol=ab, max_subdivisions=base.max_subdivisions,
                    truncation_growth=base.truncation_growth)


def _params(pairs: Sequence[str], allowed: Sequence[str], required: Sequence[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    it = iter(pairs)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key, eq, val = tok[2:].partition("=")
        if not eq:
            try:
                val = next(it)
            except StopIteration:
                raise UsageError(f"--{key} needs a value") from None
        if key not in allowed:
            raise UsageError(f"unknown parameter --{key} (allowed: {', '.join('--' + a for a in allowed)})")
        out[key] = val
    missing = [k for k in required if k not in out]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join('--' + k for k in missing)}")
    return out


# ---------------------------------------------------------------- formatting


def format_number(v) -> str:
    """15 significant digits; complex values as ``re+imj``, which ``complex()`` reads back."""
    if isinstance(v, str):
        return v
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.15g}"
    return f"{v.real:.15g}{v.imag:+.15g}j"


def _json_value(v):
    if isinstance(v, str):
        return v
    v = complex(v)
    re = float(f"{v.real:.15g}")
    if v.imag == 0:
        return re
    return {"re": re, "im": float(f"{v.imag:.15g}")}


def render(rows: List[Dict[str, object]], fmt: str) -> str:
    if fmt == "json":
        data = [{k: _json_value(v) for k, v in r.items()} for r in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        cols = list(rows[0])
        w.writerow(cols)
        for r in rows:
            w.writerow([format_number(r[c]) if not isinstance(r[c], bool) else str(r[c]).lower() for c in cols])
    return buf.getvalue()


def _emit(text: str, output: Optional[str]) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(v) for v in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- eval


def run_eval(target: str, pairs: Sequence[str], workers: int = 1) -> List[Dict[str, object]]:
    spec = _env_spec(DEFAULT_SPEC)
    if target == "lfunc":
        p = _params(pairs, ("alpha", "beta", "z"), ("alpha", "beta", "z"))
        lp = lfunc.LParams(_real(p["alpha"], "alpha"), parse_number(p["beta"]))

        def one(z):
            r = lfunc.eval(lp, z, spec)
            return {"z": z, "value": r.value, "err_est": r.err_est, "method": r.method.value}

        return _map(one, _grid(p["z"]), workers)
    if target == "wright":
        p = _params(pairs, ("alpha", "beta", "z"), ("alpha", "beta", "z"))
        a, b = _real(p["alpha"], "alpha"), parse_number(p["beta"])
        return _map(lambda z: {"z": z, "value": lfunc.wright_eval(a, b, z, spec), "err_est": "", "method": "Series"},
                    _grid(p["z"]), workers)
    if target == "stable-pdf":
        p = _params(pairs, ("alpha", "gamma", "x"), ("alpha", "x"))
        sp = stable.StableParams(_real(p["alpha"], "alpha"), _real(p.get("gamma", "0"), "gamma"))
        xs = _real_grid(p["x"], "x")
        return _map(lambda x: {"x": x, "value": stable.stable_pdf(sp, x, spec), "err_est": "", "method": "Lfunc"},
                    xs, workers)
    if target == "subordinator":
        p = _params(pairs, ("alpha", "t", "y"), ("alpha", "y"))
        a, t = _real(p["alpha"], "alpha"), _real(p.get("t", "1"), "t")
        ys = _real_grid(p["y"], "y")
        return _map(lambda y: {"y": y, "value": stable.subordinator_density_lfunc(a, t, y, spec), "err_est": "",
                               "method": "Lfunc"}, ys, workers)
    if target == "cauchy-phi":
        p = _params(pairs, ("alpha", "x"), ("alpha", "x"))
        a = _real(p["alpha"], "alpha")
        xs = _real_grid(p["x"], "x")
        return _map(lambda x: {"x": x, "value": stable.cauchy_density_integral(a, x, spec), "err_est": "",
                               "method": "RotatedRay"}, xs, workers)
    raise UsageError(f"unknown eval target {target!r}")


# ---------------------------------------------------------------- apply


def _holo(text: str) -> HoloFunction:
    F = parse_function(text)
    if not isinstance(F, HoloFunction):
        raise UsageError("--F expects a Laplace image, e.g. lp:phi:1,1,0")
    return F


def _half(text: str) -> HalfLineFunction:
    f = parse_function(text)
    if not isinstance(f, HalfLineFunction):
        raise UsageError("--f expects a half-line function, e.g. phi:1,1,0")
    return f


def _lap_oracle(f: HalfLineFunction, fn: Callable[[float], complex], z: complex) -> complex:
    g = HalfLineFunction(fn, decay_class=f.decay_class, decay_rate=f.decay_rate)
    return halfline.laplace(g, z, QuadSpec(1e-11, 1e-14))


def _inv_oracle(G: Callable[[complex], complex], x: float) -> complex:
    return halfline.inverse_laplace(HoloFunction(G), x)


def run_apply(target: str, pairs: Sequence[str], oracle: bool = False, workers: int = 1) -> List[Dict[str, object]]:
    ctx = holo.OperatorContext(spec=_env_spec(OPERATOR_SPEC))
    holo_side = {"frac-diff": ("h",), "A": ("alpha",), "R": ("h", "alpha", "a"), "T": ("beta", "s")}
    line_side = {"riemann-liouville": ("r",), "B": ("alpha",), "Q": ("theta", "alpha", "a")}
    if target in holo_side:
        keys = holo_side[target]
        p = _params(pairs, keys + ("F", "z"), keys + ("F", "z"))
        text = p["F"]
        F = _holo(text)
        f = parse_function(text[3:])
        v = {k: parse_number(p[k]) for k in keys}
        zs = _grid(p["z"])
        if target == "frac-diff":
            h = v["h"]
            vals = holo.frac_diff(F, h, zs, ctx)
            orc = (lambda z: _lap_oracle(f, lambda x: x**h * f(x) if x > 0 else 0.0, z))
        elif target == "A":
            al = v["alpha"].real
            vals = holo.apply_A(al, F, zs, ctx)
            orc = (lambda z: _lap_oracle(f, lambda x: f(x**al), z))
        elif target == "R":
            h, al, a = v["h"], v["alpha"].real, v["a"].real
            vals = holo.apply_R(h, al, a, F, zs, ctx)
            orc = (lambda z: _lap_oracle(f, lambda x: x**h * f(a * x**al) if x > 0 else 0.0, z))
        else:
            be, s = v["beta"].real, v["s"].real
            vals = holo.apply_T(be, s, F, zs, ctx)
            orc = (lambda z: _lap_oracle(f, lambda x: cmath.exp(1j * s * x**be) * f(x), z))
        rows = [{"z": z, "value": val} for z, val in zip(zs, list(vals))]
        key = "z"
    elif target in line_side:
        keys = line_side[target]
        p = _params(pairs, keys + ("f", "x"), keys + ("f", "x"))
        f = _half(p["f"])
        F = halfline.laplace_image(f)
        v = {k: parse_number(p[k]) for k in keys}
        xs = _real_grid(p["x"], "x")
        if target == "riemann-liouville":
            r = v["r"].real
            vals = _map(lambda x: halfline.riemann_liouville(f, r, x, ctx.spec), xs, workers)
            orc = (lambda x: _inv_oracle(lambda q: q ** (-r) * F(q), x))
        elif target == "B":
            al = v["alpha"].real
            vals = list(holo.apply_B(al, f, xs, ctx.spec))
            orc = (lambda x: _inv_oracle(lambda q: F(q**al), x))
        else:
            e = holo.SemigroupElementQ(v["theta"], v["alpha"].real, v["a"])
            vals = list(holo.apply_Q(e, f, xs, ctx.spec))
            orc = (lambda x: _inv_oracle(lambda q: q**e.theta * F(e.a * q**e.alpha), x))
        rows = [{"x": x, "value": val} for x, val in zip(xs, vals)]
        key = "x"
    else:
        raise UsageError(f"unknown apply target {target!r}")
    if oracle:
        ovals = _map(orc, [r[key] for r in rows], workers)
        for r, o in zip(rows, ovals):
            r["oracle"] = o
    return rows


# ---------------------------------------------------------------- verify and table


def run_verify(suite: str) -> List[Dict[str, object]]:
    from .verify import SUITES, run_suite

    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r} (choose from {', '.join(list(SUITES) + ['all'])})")
    return [r.as_dict() for r in run_suite(suite)]


def _verify_text(reports: List[Dict[str, object]], fmt: str) -> str:
    if fmt == "json":
        overall = all(r["overall"] for r in reports)
        return json.dumps({"overall": overall, "suites": reports}, indent=2) + "\n"
    rows = []
    for r in reports:
        for c in r["cases"]:
            rows.append({"suite": r["suite"], "name": c["name"], "max_abs_err": c["max_abs_err"],
                         "tolerance": c["tolerance"], "pass": c["pass"]})
    return render(rows, "csv")


def load_table(path: str) -> List[Dict[str, object]]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not all(isinstance(r, dict) for r in data):
        raise UsageError("a table file must hold a JSON array of row objects")

    def back(v):
        if isinstance(v, dict) and set(v) == {"re", "im"}:
            return complex(v["re"], v["im"])
        return v

    return [{k: back(v) for k, v in r.items()} for r in data]


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lfrac", description="Evaluate L-functions, densities and kernel operators.", allow_abbrev=False
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in (("eval", "evaluate a function on a grid"), ("apply", "apply an operator to a test function")):
        sp = sub.add_parser(name, help=helptext, allow_abbrev=False)
        sp.add_argument("target")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", default=None)
        sp.add_argument("--workers", type=int, default=1)
        if name == "apply":
            sp.add_argument("--oracle", action="store_true", help="add the transform-side value as a column")
    sp = sub.add_parser("verify", help="run an invariant suite", allow_abbrev=False)
    sp.add_argument("suite")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None)
    sp = sub.add_parser("table", help="re-emit a saved JSON table", allow_abbrev=False)
    sp.add_argument("--input", required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output", default=None)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args, rest = ap.parse_known_args(argv)
    except SystemExit as e:
        return EXIT_DOMAIN if e.code else EXIT_OK
    try:
        if args.command in ("verify", "table") and rest:
            raise UsageError(f"unexpected arguments {rest}")
        if args.command == "eval":
            text = render(run_eval(args.target, rest, args.workers), args.format)
        elif args.command == "apply":
            text = render(run_apply(args.target, rest, args.oracle, args.workers), args.format)
        elif args.command == "verify":
            reports = run_verify(args.suite)
            text = _verify_text(reports, args.format)
        else:
            try:
                rows = load_table(args.input)
            except (OSError, json.JSONDecodeError) as e:
                print(f"lfrac: cannot read {args.input}: {e}", file=sys.stderr)
                return EXIT_IO
            text = render(rows, args.format)
    except (DomainError, ValueError, KeyError) as e:
        print(f"lfrac: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except LfracError as e:
        print(f"lfrac: numerical failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    try:
        _emit(text, args.output)
    except OSError as e:
        print(f"lfrac: cannot write {args.output}: {e}", file=sys.stderr)
        return EXIT_IO
    if args.command == "verify" and not all(r["overall"] for r in reports):
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
