"""Command-line front end: ``mixsmooth {norm,generate,region,scan,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 unreadable or malformed input file, 4 frequency content does not fit the grid.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .embedlab import classify_F_into_SF, classify_SF_into_F, ratio_scan
from .formats import (FormatError, dumps_report, read_gridfunction, rows_to_csv,
                      write_gridfunction, write_report)
from .grid import Grid, NyquistError
from .quasinorms import SpaceParams, norm
from .testfun import FAMILIES, default_grid, make_family

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARAMS = 2
EXIT_FORMAT = 3
EXIT_NYQUIST = 4

MAX_POINTS = 2**24

#: default (source scale, coefficient rule, smallest scale) per family for ``scan``
SCAN_DEFAULTS = {
    "ex1": ("mixed", "ones", 3),
    "ex2": ("mixed", None, 2),
    "ex3": ("isotropic", None, 2),
    "ex4": ("mixed", "delta", 2),
    "ex5": ("isotropic", "delta", 2),
    "ex6": ("isotropic", None, 1),
}


class UsageError(ValueError):
    pass


def _number(text: str) -> float:
    text = text.strip().lower()
    if text in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _float_list(text: str):
    return [_number(v) for v in text.split(",")]


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


RULES = ("ones", "delta", "decay", "random")


def _coeffs(text: str):
    if text in RULES:
        return text
    try:
        return [complex(v.replace(" ", "")) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"coefficients must be one of {', '.join(RULES)} or comma-separated numbers, got {text!r}"
        ) from None


def _add_grid(p):
    p.add_argument("--d", type=int, default=2, help="dimension (default 2)")
    p.add_argument("--n", type=_int_list, help="samples per axis, one value or a comma list")
    p.add_argument("--period", type=_float_list, help="torus side length(s)")


def _add_space(p):
    p.add_argument("--space", choices=["F", "B"], default="F", help="F- or B-family")
    p.add_argument("--scale", choices=["iso", "mixed"], default="iso",
                   help="isotropic or dominating mixed scale")
    p.add_argument("--t", type=_number, default=0.0, help="smoothness")
    p.add_argument("--p", type=_number, default=2.0, help="integrability (inf allowed for B)")
    p.add_argument("--q", type=_number, default=2.0, help="summability (inf allowed)")


def _add_coeffs(p):
    p.add_argument("--coeffs", type=_coeffs,
                   help="a_j for ex1/ex4/ex5: ones, delta, decay, random or a comma list")
    p.add_argument("--seed", type=int, default=0, help="seed for --coeffs random (default 0)")


def _random_coeffs(seed: int, l: int) -> np.ndarray:
    rng = np.random.default_rng([seed, l])
    return rng.standard_normal(l) + 1j * rng.standard_normal(l)


def _add_output(p, formats=("json", "csv")):
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=list(formats), default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixsmooth", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="quasi-norm of a GridFunction file or a family member")
    _add_grid(p)
    _add_space(p)
    p.add_argument("--input", help="GridFunction container file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--l", "--j", dest="l", type=int, help="scale index of the family member")
    _add_coeffs(p)
    _add_output(p)

    p = sub.add_parser("generate", help="write a family member and its oracle sidecar")
    _add_grid(p)
    _add_space(p)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--l", "--j", dest="l", type=int, required=True)
    _add_coeffs(p)
    p.add_argument("--out", required=True, help="container path; the sidecar gets '.json' appended")

    p = sub.add_parser("region", help="embedding verdicts at a point or on a (1/p, t) lattice")
    p.add_argument("--comparison", choices=["SF-F", "F-SF"], default="SF-F",
                   help="SF-F: S^tF vs F^t; F-SF: S^tF vs F^{td}")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--t", type=_number)
    p.add_argument("--p", type=_number)
    p.add_argument("--q", type=_number, default=2.0)
    p.add_argument("--ascii", action="store_true", help="render the sweep as a character map")
    _add_output(p, ("text", "json", "csv"))

    p = sub.add_parser("scan", help="norm-ratio scan over a family")
    _add_grid(p)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--t", type=_number, default=0.0)
    p.add_argument("--p", type=_number, default=2.0)
    p.add_argument("--q", type=_number, default=2.0)
    p.add_argument("--src-scale", choices=["iso", "mixed"],
                   help="scale of the source space (family-dependent default)")
    p.add_argument("--lmin", type=int)
    p.add_argument("--lmax", type=int, required=True)
    _add_coeffs(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", choices=["fast", "full"], default="fast")
    _add_output(p, ("text", "json", "csv"))
    return parser


# --------------------------------------------------------------------------


def _space(args) -> SpaceParams:
    scale = "isotropic" if args.scale == "iso" else "mixed"
    return SpaceParams(scale, args.space, args.t, args.p, args.q, args.d)


def _grid_for(args, family: str, scale: int) -> Grid:
    if args.d < 1:
        raise UsageError("dimension must be positive")
    base = default_grid(family, scale, args.d)
    n = args.n if args.n is not None else list(base.n)
    period = args.period if args.period is not None else list(base.period)
    n = n * args.d if len(n) == 1 else n
    period = period * args.d if len(period) == 1 else period
    if len(n) != args.d or len(period) != args.d:
        raise UsageError(f"--n and --period need 1 or {args.d} values")
    if float(np.prod(n, dtype=float)) > MAX_POINTS:
        raise NyquistError(f"{family} at scale {scale} needs a grid of {n} points, "
                           f"more than the {MAX_POINTS} point budget")
    return Grid(tuple(n), tuple(period))


def _family_coeffs(args):
    c = args.coeffs
    if c is None or not isinstance(c, str):
        return c
    l = args.l
    if c == "random":
        return _random_coeffs(args.seed, l)
    return {"ones": np.ones(l), "delta": np.eye(l)[-1],
            "decay": 2.0 ** (-np.arange(1, l + 1) * args.t)}[c]


def _member(args):
    if args.l is None:
        raise UsageError("--family needs --l/--j")
    grid = _grid_for(args, args.family, args.l)
    return make_family(args.family, args.l, args.d, grid=grid, coeffs=_family_coeffs(args))


def _emit(payload: dict, rows: list, kind: str, args, columns=None):
    if args.format == "csv":
        write_report(rows_to_csv(rows, columns), args.out)
    else:
        write_report(dumps_report(payload, kind), args.out)


def cmd_norm(args) -> int:
    if (args.input is None) == (args.family is None):
        raise UsageError("give exactly one of --input or --family")
    if args.input is not None:
        f = read_gridfunction(args.input)
        args.d = f.grid.d
        source = {"input": str(args.input)}
    else:
        fam = _member(args)
        f = fam.generate()
        source = {"family": fam.name, "l": fam.scale}
    s = _space(args)
    value = norm(f, s)
    row = {"space": s.label(), "scale": s.scale, "family": s.family, "t": s.t, "p": s.p,
           "q": s.q, "d": s.d, "value": value}
    _emit({**row, "source": source, "grid": {"n": list(f.grid.n), "period": list(f.grid.period)}},
          [row], "norm", args)
    return EXIT_OK


def cmd_generate(args) -> int:
    fam = _member(args)
    f = fam.generate()
    out = Path(args.out)
    write_gridfunction(out, f)
    oracle = {}
    for scale in ("isotropic", "mixed"):
        s = SpaceParams(scale, args.space, args.t, args.p, args.q, args.d)
        o = fam.oracle(s)
        oracle[scale] = {"space": s.label(), "kind": o.kind, "value": o.value, "formula": o.note}
    sidecar = {
        "family": fam.name,
        "l": fam.scale,
        "d": fam.d,
        "coeffs": None if fam.a is None else [[c.real, c.imag] for c in np.asarray(fam.a, complex)],
        "grid": {"n": list(fam.grid.n), "period": list(fam.grid.period)},
        "t": args.t, "p": args.p, "q": args.q,
        "oracle": oracle,
        "container": out.name,
    }
    Path(str(out) + ".json").write_text(dumps_report(sidecar, "generate"), encoding="utf-8")
    print(f"wrote {out} and {out}.json")
    return EXIT_OK


def _classifier(comparison):
    return classify_SF_into_F if comparison == "SF-F" else classify_F_into_SF


_GLYPHS = {("Yes", "Yes"): "=", ("Yes", "No"): "+", ("Yes", "Open"): "+",
           ("No", "Yes"): "-", ("Open", "Yes"): "-", ("No", "No"): "x"}
LEGEND = ("+ forward holds   - reverse holds   = both hold   x not comparable   "
          "n forward fails, reverse unknown   ? open")


def render_ascii(verdicts: list) -> str:
    """Character map with t decreasing downward and 1/p increasing to the right."""
    inv_ps = sorted({v[0] for v in verdicts})
    ts = sorted({v[1] for v in verdicts}, reverse=True)
    table = {(ip, t): v for ip, t, v in verdicts}
    lines = []
    for t in ts:
        chars = []
        for ip in inv_ps:
            v = table[ip, t]
            key = (v.forward.status.value, v.reverse.status.value)
            chars.append(_GLYPHS.get(key, "n" if key[0] == "No" else "?"))
        lines.append(f"{t:6.2f} |" + "".join(chars))
    lines.append("       +" + "-" * len(inv_ps))
    lines.append(f"        1/p from {inv_ps[0]:g} to {inv_ps[-1]:g}")
    lines.append(LEGEND)
    return "\n".join(lines) + "\n"


def cmd_region(args) -> int:
    classify = _classifier(args.comparison)
    if args.d < 2:
        raise UsageError("embedding comparison requires d >= 2")
    if args.t is not None or args.p is not None:
        if args.t is None or args.p is None:
            raise UsageError("a single point needs both --t and --p")
        v = classify(args.t, args.p, args.q, args.d)
        if args.format == "text":
            text = f"forward: {v.forward}\nreverse: {v.reverse}\n"
            text += "".join(f"  {n}\n" for n in v.notes)
            write_report(text, args.out)
        else:
            _emit({"comparison": args.comparison, "verdicts": [v.as_dict()]}, [v.as_dict()],
                  "region", args)
        return EXIT_OK
    verdicts = acceptance.region_sweep(args.comparison, args.q, args.d)
    rows = [{"inv_p": ip, **v.as_dict()} for ip, _, v in verdicts]
    if args.format == "text" or args.ascii:
        write_report(render_ascii(verdicts), args.out)
    else:
        _emit({"comparison": args.comparison, "q": args.q, "d": args.d, "verdicts": rows}, rows,
              "region", args)
    return EXIT_OK


def cmd_scan(args) -> int:
    src_scale, rule, lmin = SCAN_DEFAULTS[args.family]
    if args.src_scale is not None:
        src_scale = "isotropic" if args.src_scale == "iso" else "mixed"
    dst_scale = "mixed" if src_scale == "isotropic" else "isotropic"
    lmin = args.lmin if args.lmin is not None else lmin
    if args.lmax - lmin + 1 < 3:
        raise UsageError("a slope fit needs at least 3 scales")
    coeffs = args.coeffs if args.coeffs is not None else rule
    if coeffs is not None and not isinstance(coeffs, str):
        raise UsageError(f"scan takes a coefficient rule: {', '.join(RULES)}")
    rule_name = coeffs
    if coeffs == "random":
        coeffs = lambda l: _random_coeffs(args.seed, l)
    grid = _grid_for(args, args.family, args.lmax)
    src = SpaceParams(src_scale, "F", args.t, args.p, args.q, args.d)
    dst = SpaceParams(dst_scale, "F", args.t, args.p, args.q, args.d)
    # fail fast when the largest member does not fit
    make_family(args.family, args.lmax, args.d, grid=grid,
                coeffs=np.ones(args.lmax) if args.family in ("ex1", "ex4", "ex5") else None
                ).generate()
    rep = ratio_scan(args.family, src, dst, range(lmin, args.lmax + 1), coeffs=coeffs, grid=grid)
    rows = [r.__dict__ for r in rep.rows]
    payload = rep.as_dict()
    payload["coeffs"] = rule_name or "ones"
    if rule_name == "random":
        payload["seed"] = args.seed
    _emit(payload, rows, "scan", args)
    print(f"slope {rep.slope:.12g} +- {rep.slope_stderr:.3g}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = []
    for criterion in (acceptance.CRITERIA if args.suite == "full" else acceptance.FAST):
        r = criterion()
        results.append(r)
        if args.format == "text":
            print(r.line(), flush=True)
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed, "measured": r.measured,
             "tolerance": r.tolerance, "seconds": r.seconds, "detail": r.detail} for r in results]
    failed = [r.number for r in results if not r.passed]
    if args.format == "text":
        print(f"{len(results) - len(failed)}/{len(results)} passed"
              + (f"; failed: {failed}" if failed else ""))
    else:
        _emit({"suite": args.suite, "results": rows, "failed": failed}, rows, "verify", args)
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"norm": cmd_norm, "generate": cmd_generate, "region": cmd_region,
            "scan": cmd_scan, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except NyquistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NYQUIST
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
