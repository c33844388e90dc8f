"""Command-line interface: ``kleinian-rp classify | enumerate | verify``."""
from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from typing import Any, Optional, Sequence

import mpmath

from .algebra import ParameterTriple
from .classifier import FAMILIES, InvalidRange, classify, enumerate_family
from .config import Config, load_config
from .presentations import presentation_of
from .report import all_certificates_pass, build_report, dumps, render_text

EXIT_DISCRETE = 0
EXIT_NOT_DISCRETE = 1
EXIT_PARSE = 2
EXIT_OUT_OF_SCOPE = 3

EXPR_DPS = 50


class ParseError(ValueError):
    pass


def _kv(body: str) -> dict[str, int]:
    out = {}
    for part in filter(None, body.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise ParseError(f"expected key=value, got {part!r}")
        out[key.strip()] = int(val)
    return out


def parse_value(text: str) -> tuple[float, str]:
    """Number or symbolic constant -> (float, canonical text).

    ``sin2:n=N[,q=Q]`` is -4 sin^2(q pi/N), ``cos2pi:m=M`` is 2cos(2 pi/M),
    ``golden:+`` / ``golden:-`` are (sqrt5 +- 1)/2.  Anything else is read as
    a sympy expression (``(5*sqrt(5)+9)/2``) and evaluated at 50 digits.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty value")
    try:
        with mpmath.workdps(EXPR_DPS):
            head, colon, body = s.partition(":")
            if colon and head == "sin2":
                kv = _kv(body)
                if "n" not in kv:
                    raise ParseError("sin2 needs n=")
                val = -4 * mpmath.sin(kv.get("q", 1) * mpmath.pi / kv["n"]) ** 2
            elif colon and head == "cos2pi":
                kv = _kv(body)
                if "m" not in kv:
                    raise ParseError("cos2pi needs m=")
                val = 2 * mpmath.cos(2 * mpmath.pi / kv["m"])
            elif colon and head == "golden":
                if body.strip() not in ("+", "-"):
                    raise ParseError("golden takes + or -")
                sign = 1 if body.strip() == "+" else -1
                val = (mpmath.sqrt(5) + sign) / 2
            elif re.fullmatch(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?", s):
                return float(s), s
            else:
                import sympy
                expr = sympy.sympify(s, rational=True)
                if expr.free_symbols:
                    raise ParseError(f"free symbols in {s!r}")
                val = mpmath.mpf(str(sympy.N(expr, EXPR_DPS)))
            out = float(val)
    except ParseError:
        raise
    except Exception as exc:  # sympy raises a zoo of types
        raise ParseError(f"cannot parse {text!r}: {exc}") from None
    return out, s


def _triple_from_args(args: argparse.Namespace) -> tuple[ParameterTriple, dict[str, str]]:
    raw: dict[str, str] = {}
    vals = []
    for name in ("beta", "beta_prime", "gamma"):
        text = getattr(args, name)
        expr = getattr(args, f"{name}_expr")
        if expr is not None:
            text = expr
        if text is None:
            raise ParseError(f"--{name.replace('_', '-')} is required")
        v, canon = parse_value(text)
        raw[name] = canon
        vals.append(v)
    return ParameterTriple(*vals, provenance=(raw["beta"], raw["beta_prime"], raw["gamma"])), raw


def _config(args: argparse.Namespace) -> Config:
    try:
        base = load_config(getattr(args, "config", None))
        return base.updated(tol=args.tol, p_max=args.p_max)
    except (OSError, ValueError) as exc:
        raise ParseError(f"bad configuration: {exc}") from None


def _emit(text: str, out) -> None:
    out.write(text)


def _classify_like(args: argparse.Namespace, certify: str, out) -> tuple[dict[str, Any], str]:
    config = _config(args)
    triple, raw = _triple_from_args(args)
    verdict = classify(triple, config)
    report = build_report(raw, triple, verdict, config, certify)
    text = dumps(report) + "\n" if args.format == "json" else render_text(report)
    _emit(text, out)
    return report, verdict.kind


def cmd_classify(args: argparse.Namespace, out=sys.stdout) -> int:
    _, kind = _classify_like(args, args.certify, out)
    return {"discrete": EXIT_DISCRETE, "not_discrete": EXIT_NOT_DISCRETE}.get(kind, EXIT_OUT_OF_SCOPE)


def cmd_verify(args: argparse.Namespace, out=sys.stdout) -> int:
    report, kind = _classify_like(args, args.certify, out)
    if kind == "out_of_scope":
        return EXIT_OUT_OF_SCOPE
    if kind == "not_discrete":
        return EXIT_NOT_DISCRETE
    return EXIT_DISCRETE if all_certificates_pass(report) else EXIT_NOT_DISCRETE


_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_range(spec: str) -> tuple[str, list[Any]]:
    """``m=7..20`` or ``t_u=3,5,inf,inf_bar:0.5`` -> (key, values)."""
    key, eq, body = spec.partition("=")
    if not eq or not key.strip():
        raise InvalidRange(f"expected key=values, got {spec!r}")
    values: list[Any] = []
    for part in filter(None, (p.strip() for p in body.split(","))):
        m = _RANGE.match(part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise InvalidRange(f"empty range {part!r}")
            values.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            values.append(int(part))
        elif key.strip() in ("beta_prime", "bp"):
            values.append(float(part))
        else:
            values.append(part)
    if not values:
        raise InvalidRange(f"no values in {spec!r}")
    return key.strip(), values


def cmd_enumerate(args: argparse.Namespace, out=sys.stdout) -> int:
    config = _config(args)
    if args.family not in FAMILIES:
        raise InvalidRange(f"unknown family {args.family!r}")
    ranges: dict[str, list[Any]] = {}
    for spec in args.range or []:
        key, values = parse_range(spec)
        ranges.setdefault(key, []).extend(values)
    rows = enumerate_family(args.family, ranges, config)
    records = []
    for triple, match in rows:
        records.append({
            "family": match.family,
            "n": match.n,
            "indices": {k: str(v) for k, v in sorted(match.indices.items())},
            "u_d": match.u.d if match.u is not None and match.u.kind == "positive" else None,
            "v_d": match.v.d if match.v is not None and match.v.kind == "positive" else None,
            "beta": triple.beta,
            "beta_prime": triple.beta_prime,
            "gamma": triple.gamma,
            "presentation": presentation_of(match, config).name,
        })
    if args.format == "json":
        _emit(dumps(records) + "\n", out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n", "t_u", "t_v", "m", "beta", "beta_prime", "gamma", "presentation"])
    for r in records:
        idx = r["indices"]
        t_u = idx.get("t_u", "")
        t_v = idx.get("t_v", "")
        if r["u_d"] is not None:
            t_u += f":{r['u_d']!r}"
        if r["v_d"] is not None:
            t_v += f":{r['v_d']!r}"
        writer.writerow([r["family"], r["n"], t_u, t_v, idx.get("m", ""),
                         format(r["beta"], ".16e"), format(r["beta_prime"], ".16e"),
                         format(r["gamma"], ".16e"), r["presentation"]])
    _emit(buf.getvalue(), out)
    return 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="index-matching tolerance")
    p.add_argument("--p-max", type=int, default=None, help="largest finite index searched")
    p.add_argument("--config", default=None, help="JSON config file (default: $KLEINIAN_RP_CONFIG)")


def _params(p: argparse.ArgumentParser) -> None:
    for name in ("beta", "beta-prime", "gamma"):
        dest = name.replace("-", "_")
        p.add_argument(f"--{name}", dest=dest, default=None,
                       help="number or symbolic value (sin2:n=5, cos2pi:m=7, golden:+, sqrt(5))")
        p.add_argument(f"--{name}-expr", dest=f"{dest}_expr", default=None, help=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kleinian-rp",
                                     description="Discreteness of RP groups with an elliptic "
                                                 "and a hyperbolic generator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide discreteness of one parameter triple")
    _params(p)
    p.add_argument("--certify", choices=("none", "presentation", "geometry", "all"), default="none")
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="classify and certify the matched presentations")
    _params(p)
    p.add_argument("--certify", choices=("presentation", "geometry", "all"), default="all")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list the triples of one family over an index grid")
    p.add_argument("--family", required=True)
    p.add_argument("--range", action="append", metavar="KEY=VALUES",
                   help="e.g. m=7..20, p=3..6, t_u=4,inf,inf_bar:0.5 (repeatable)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _common(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, InvalidRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
