#!/usr/bin/env python3
"""
Command Line for QEC Coding Maps
Channels, effective channels, polynomial coding maps, concatenation, thresholds and curves
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from app_config import configure_logging, settings
from code_catalog import AnyCode, CodeRecipe, catalog_names, correctable_poly, resolve_code
from coding_maps import compose_chain, diagonal_poly_map, effective_channel_general
from concatenation_dynamics import (
    curves_to_csv,
    depolarizing_curves,
    exact_crossing,
    leading_order_threshold,
    leading_order_underestimate,
    storage_threshold,
)
from dense_oracle import (
    dense_effective_channel,
    kraus_from_diagonal,
    kraus_from_transfer_matrix,
    max_deviation,
)
from polynomial_maps import PolyMap
from qec_errors import DomainError, QECError
from qubit_channels import (
    DiagonalChannel,
    QubitChannel,
    diagonal_to_pauli_probs,
    parse_channel_literal,
    worst_case_axis,
    worst_case_fidelity,
)

logger = logging.getLogger(__name__)

ORACLE_AGREEMENT = 1e-10

CHANNEL_HELP = (
    "channel literal: diag:x,y,z | pauli:pX,pY,pZ | depol:gamma_t | ampdamp:p | "
    "JSON row-major 16 numbers (inline or .json file). Diagonal channels are checked for "
    "complete positivity; general matrices only for the trace-preservation row"
)


class Output:
    """Collects emitted text and writes it to stdout or a file"""

    def __init__(self, precision: int):
        self.precision = precision
        self.lines: List[str] = []

    def num(self, value: Optional[float]) -> str:
        if value is None:
            return "none"
        return f"{value:.{self.precision}g}"

    def add(self, line: str = ""):
        self.lines.append(line)

    def add_json(self, payload):
        self.lines.append(json.dumps(payload, indent=2))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""


def parse_grid(text: str) -> np.ndarray:
    """'start:stop:step', stop included"""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid {text!r} must look like start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise DomainError(f"grid {text!r} has a non-numeric part")
    if step <= 0 or stop < start:
        raise DomainError(f"grid {text!r} needs step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def parse_levels(text: str) -> List[int]:
    """'0,1,2' or '0-4'"""
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
            levels = list(range(lo, hi + 1))
        else:
            levels = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise DomainError(f"levels {text!r} must be a list like 0,1,2 or a range like 0-4")
    if not levels or min(levels) < 0:
        raise DomainError(f"levels {text!r} must be non-negative and non-empty")
    return levels


def _code_from(args) -> AnyCode:
    return resolve_code(args.spec if args.spec else args.code)


def _diagonal_channel(literal: str) -> DiagonalChannel:
    channel = parse_channel_literal(literal)
    if not isinstance(channel, DiagonalChannel):
        raise DomainError("this command needs a diagonal channel")
    return channel


def _matrix_lines(out: Output, m: np.ndarray) -> None:
    for row in m:
        out.add("  " + "  ".join(out.num(float(v)) for v in row))


def _poly_json(coeffs: Dict[int, Fraction]) -> Dict[str, str]:
    return {str(k): str(c) for k, c in sorted(coeffs.items())}


# subcommands

def cmd_validate(args, out: Output) -> int:
    if args.channel:
        channel = parse_channel_literal(args.channel)
        if isinstance(channel, DiagonalChannel):
            payload = {"channel": list(channel.as_tuple()), "physical": True}
            text = f"physical diagonal channel [{', '.join(out.num(v) for v in channel.as_tuple())}]"
        else:
            payload = {"matrix": channel.rows(), "physical": None}
            text = "general channel accepted (trace-preservation row only)"
        if args.format == "json":
            out.add_json(payload)
        else:
            out.add(text)
    if args.code or args.spec:
        code = _code_from(args)
        if args.format == "json":
            out.add_json(_describe(code))
        else:
            out.add(f"code {code.name}: n={code.n} valid")
    return 0


def _describe(code: AnyCode) -> Dict:
    if isinstance(code, CodeRecipe):
        data = code.describe()
        data["components"] = [c.describe() for c in code.components]
        return data
    return code.describe()


def cmd_channel_convert(args, out: Output) -> int:
    channel = parse_channel_literal(args.channel)
    if isinstance(channel, QubitChannel):
        if args.format == "json":
            out.add_json({"matrix": channel.rows(), "diagonal": False})
        else:
            out.add("transfer matrix:")
            _matrix_lines(out, channel.m)
        return 0
    probs = diagonal_to_pauli_probs(channel)
    payload = {
        "diagonal": list(channel.as_tuple()),
        "pauli": {"I": probs.p_identity, "X": probs.p_x, "Y": probs.p_y, "Z": probs.p_z},
        "worst_case_fidelity": worst_case_fidelity(channel),
        "worst_case_axis": worst_case_axis(channel),
    }
    if args.format == "json":
        out.add_json(payload)
    else:
        out.add(f"diagonal: [{', '.join(out.num(v) for v in channel.as_tuple())}]")
        out.add("pauli: " + ", ".join(f"p{k}={out.num(v)}" for k, v in payload["pauli"].items()))
        out.add(f"worst-case fidelity: {out.num(payload['worst_case_fidelity'])} "
                f"({payload['worst_case_axis']} eigenstates)")
    return 0


def cmd_effective(args, out: Output) -> int:
    code = _code_from(args)
    channel = parse_channel_literal(args.channel)
    result = effective_channel_general(code, channel)
    payload = result.to_json()
    deviation = None
    if args.oracle:
        if isinstance(code, CodeRecipe):
            raise DomainError("the dense oracle handles single codes only")
        if isinstance(channel, DiagonalChannel):
            kraus = kraus_from_diagonal(channel)
        else:
            kraus = kraus_from_transfer_matrix(channel)
        dense = dense_effective_channel(code, kraus)
        deviation = max_deviation(dense, result.channel)
        payload["oracle_max_deviation"] = deviation
    if args.format == "json":
        out.add_json(payload)
    else:
        out.add(f"code: {result.code_name} ({result.path} path)")
        out.add("G =")
        _matrix_lines(out, result.channel.m)
        if result.is_diagonal():
            diag = result.channel.as_diagonal()
            out.add(f"diagonal: [{', '.join(out.num(v) for v in diag.as_tuple())}]")
        if deviation is not None:
            if deviation < ORACLE_AGREEMENT:
                out.add(f"oracle: max|Δ| < {ORACLE_AGREEMENT:.0e}")
            else:
                out.add(f"oracle: max|Δ| = {deviation:.3e}")
    if deviation is not None and deviation >= ORACLE_AGREEMENT:
        logger.error(f"Oracle disagrees with the generic path by {deviation:.3e}")
        return 1
    return 0


def _emit_map(out: Output, name: str, m: PolyMap, fmt: str):
    if fmt == "json":
        out.add_json(dict(code=name, **m.to_json()))
    else:
        for line in m.pretty_lines():
            out.add(line)


def cmd_polymap(args, out: Output) -> int:
    code = _code_from(args)
    _emit_map(out, code.name, diagonal_poly_map(code), args.format)
    return 0


def cmd_concat(args, out: Output) -> int:
    codes = [resolve_code(ref) for ref in args.codes]
    composed = compose_chain([diagonal_poly_map(c) for c in codes])
    name = codes[-1].name
    for outer in reversed(codes[:-1]):
        name = f"{outer.name}({name})"
    _emit_map(out, name, composed, args.format)
    return 0


def cmd_iterate(args, out: Output) -> int:
    code = _code_from(args)
    m = diagonal_poly_map(code)
    channel = _diagonal_channel(args.channel)
    rows = [(0, *channel.as_tuple())]
    x, y, z = channel.as_tuple()
    for level in range(1, int(args.levels) + 1):
        x, y, z = m.evaluate(x, y, z)
        rows.append((level, x, y, z))
    table = pd.DataFrame(rows, columns=["level", "x", "y", "z"])
    if args.format == "json":
        out.add_json({"code": code.name, "levels": table.to_dict(orient="records")})
    elif args.format == "csv":
        out.add(table.to_csv(index=False, float_format=f"%.{out.precision}g", lineterminator="\n").rstrip("\n"))
    else:
        for level, x, y, z in rows:
            out.add(f"level {level}: [{out.num(x)}, {out.num(y)}, {out.num(z)}]")
    return 0


def cmd_threshold(args, out: Output) -> int:
    code = _code_from(args)
    report = storage_threshold(diagonal_poly_map(code), code=code.name)
    if args.format == "json":
        out.add_json(report.to_json())
        return 0
    out.add(f"code: {report.code} (period {report.period}, {report.method})")
    if not report.has_threshold:
        out.add("no finite threshold")
        return 0
    for axis in ("x", "y", "z"):
        out.add(f"t*_{axis} = {out.num(report.t_star[axis])}")
    out.add(f"t_th = {out.num(report.t_th)}")
    out.add(f"p_th = {out.num(report.p_th)}")
    return 0


def cmd_curves(args, out: Output) -> int:
    code = _code_from(args)
    table = depolarizing_curves(diagonal_poly_map(code), parse_grid(args.grid), parse_levels(args.levels))
    if args.format == "json":
        out.add_json({"code": code.name, "rows": table.to_dict(orient="records")})
    else:
        out.add(curves_to_csv(table, out.precision).rstrip("\n"))
    return 0


def cmd_leading_order(args, out: Output) -> int:
    code = _code_from(args)
    poly = correctable_poly(code)
    estimate = leading_order_threshold(poly)
    crossing = exact_crossing(poly)
    report = storage_threshold(diagonal_poly_map(code), code=code.name)
    underestimate = None
    if report.has_threshold:
        underestimate = leading_order_underestimate(estimate, report.p_th)
    payload = {
        "code": code.name,
        "correctable_prob": _poly_json(poly),
        "estimate": estimate,
        "exact_crossing": crossing,
        "p_th": report.p_th,
        "underestimate": underestimate,
    }
    if args.format == "json":
        out.add_json(payload)
    else:
        out.add(f"code: {code.name}")
        out.add(f"leading-order p_th = {out.num(estimate)}")
        out.add(f"full-polynomial crossing = {out.num(crossing)}")
        out.add(f"storage p_th = {out.num(report.p_th)}")
        if underestimate is not None:
            out.add(f"underestimate = {underestimate * 100:.1f}%")
    return 0


def _add_code_args(parser: argparse.ArgumentParser, required: bool = True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--code", help=f"catalog code or spec-file path ({', '.join(catalog_names())})")
    group.add_argument("--spec", help="path to a JSON code-spec file")


def _add_common(parser: argparse.ArgumentParser, formats: Sequence[str], default: str):
    parser.add_argument("--format", choices=list(formats), default=default)
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--precision", type=int, help="significant digits for text output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threshold_cli",
        description="Effective channels, coding maps and storage thresholds of stabilizer codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a channel literal and/or a code")
    p.add_argument("--channel", help=CHANNEL_HELP)
    _add_code_args(p, required=False)
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("channel-convert", help="diagonal form, Pauli probabilities, worst-case fidelity")
    p.add_argument("--channel", required=True, help=CHANNEL_HELP)
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_channel_convert)

    p = sub.add_parser("effective", help="effective channel of a code under a single-qubit channel")
    _add_code_args(p)
    p.add_argument("--channel", required=True, help=CHANNEL_HELP)
    p.add_argument("--oracle", action="store_true", help="cross-check against the dense oracle")
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_effective)

    p = sub.add_parser("polymap", help="exact coding map on diagonal channels")
    _add_code_args(p)
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_polymap)

    p = sub.add_parser("concat", help="compose coding maps, outermost code first")
    p.add_argument("codes", nargs="+", help="catalog names or spec-file paths")
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_concat)

    p = sub.add_parser("iterate", help="apply the coding map level by level")
    _add_code_args(p)
    p.add_argument("--channel", required=True, help=CHANNEL_HELP)
    p.add_argument("--levels", type=int, default=1)
    _add_common(p, ("pretty", "json", "csv"), "pretty")
    p.set_defaults(handler=cmd_iterate)

    p = sub.add_parser("threshold", help="storage threshold under infinite concatenation")
    _add_code_args(p)
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_threshold)

    p = sub.add_parser("curves", help="depolarizing curves per concatenation level (CSV)")
    _add_code_args(p)
    p.add_argument("--grid", default="0:1:0.05", help="gamma_t grid start:stop:step")
    p.add_argument("--levels", default="0-4", help="levels such as 0,1,2 or 0-4")
    _add_common(p, ("csv", "json"), "csv")
    p.set_defaults(handler=cmd_curves)

    p = sub.add_parser("leading-order", help="leading-order threshold estimate against the storage threshold")
    _add_code_args(p)
    _add_common(p, ("pretty", "json"), "pretty")
    p.set_defaults(handler=cmd_leading_order)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Exit status: 0 success, 1 domain error, 2 usage error"""
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command == "iterate" and args.levels < 0:
        print("error: --levels must be >= 0", file=sys.stderr)
        return 2
    if args.command == "validate" and not (args.channel or args.code or args.spec):
        print("error: validate needs --channel, --code or --spec", file=sys.stderr)
        return 2
    out = Output(args.precision or settings.precision)
    try:
        status = args.handler(args, out)
    except QECError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    text = out.text()
    if args.out:
        try:
            with open(args.out, "w") as f:
                f.write(text)
        except OSError as e:
            print(f"error: cannot write {args.out}: {e.strerror or e}", file=sys.stderr)
            return 1
        logger.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
