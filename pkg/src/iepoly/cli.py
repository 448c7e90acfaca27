"""Command-line front end.

Subcommands: compute, construct, constant, verify, search, oracle-check.
JSON goes to stdout (compact, fixed field order, byte-deterministic),
diagnostics to stderr.  Exit codes: 0 success, 1 a checked mathematical
predicate is false, 2 invalid input, 3 a capacity cap was exceeded.

Exact values never pass through lossy JSON numbers: arbitrary-precision
integers serialize as decimal strings and rationals as "num/den" strings.
Reals are reported as 64-bit floats (the underlying computations carry more
precision internally).

Configuration flags fall back to IEPOLY_* environment variables
(IEPOLY_MEMORY_CAP_COEFFS, IEPOLY_ORACLE_CAP_M, IEPOLY_SUBSET_CAP_K,
IEPOLY_MANTISSA_BITS, IEPOLY_FORMAT); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import analysis, construction, core, oracle
from .errors import (
    CapacityError,
    IdentityMismatch,
    InvalidParameter,
    NonzeroRemainder,
    TupleValidationError,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_CAPACITY = 3

ENV_PREFIX = "IEPOLY_"
COEFF_INLINE_LIMIT = 10**4
JSON_SAFE_INT = (1 << 53) - 1


@dataclass
class RunConfig:
    memory_cap_coeffs: int = 1 << 28
    oracle_cap_m: int = 10**4
    subset_cap_k: int = 20
    mantissa_bits: int = 128
    output_format: str = "json"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidParameter(f"environment variable {ENV_PREFIX}{name} = {raw!r} is not an integer") from exc


def resolve_config(args: argparse.Namespace) -> RunConfig:
    fmt = args.format or os.environ.get(ENV_PREFIX + "FORMAT")
    if fmt is None:
        fmt = "text" if sys.stdout.isatty() else "json"
    if fmt not in ("json", "csv", "text"):
        raise InvalidParameter(f"unknown output format {fmt!r}")
    cfg = RunConfig(
        memory_cap_coeffs=args.memory_cap if args.memory_cap is not None else _env_int("MEMORY_CAP_COEFFS", 1 << 28),
        oracle_cap_m=args.oracle_cap if args.oracle_cap is not None else _env_int("ORACLE_CAP_M", 10**4),
        subset_cap_k=args.subset_cap if args.subset_cap is not None else _env_int("SUBSET_CAP_K", 20),
        mantissa_bits=args.mantissa_bits if args.mantissa_bits is not None else _env_int("MANTISSA_BITS", 128),
        output_format=fmt,
    )
    for field in ("memory_cap_coeffs", "oracle_cap_m", "subset_cap_k", "mantissa_bits"):
        if getattr(cfg, field) < 1:
            raise InvalidParameter(f"{field} must be positive")
    return cfg


# ------------------------------ serialization ------------------------------

def _big(x: int) -> str:
    return str(x)


def _frac(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _real(x: Any) -> float:
    return float(x)


def _coeff_values(coeffs: Sequence[int]) -> tuple[list[Any], bool]:
    if all(-JSON_SAFE_INT <= c <= JSON_SAFE_INT for c in coeffs):
        return list(coeffs), False
    return [str(c) for c in coeffs], True


def emit(payload: dict[str, Any], fmt: str, out: Any = None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        out.write(_to_csv(payload))
    else:
        out.write(_to_text(payload))


def _flat(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return ";".join(_flat(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_flat(v)}" for k, v in value.items())
    return str(value)


def _to_csv(payload: dict[str, Any]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    tables = {k: v for k, v in payload.items() if isinstance(v, list) and v and isinstance(v[0], dict)}
    for key, value in payload.items():
        if key in tables:
            continue
        writer.writerow([key, _flat(value)])
    for key, rows in tables.items():
        writer.writerow([key])
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([_flat(row.get(h)) for h in header])
    return buf.getvalue()


def _to_text(payload: dict[str, Any]) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  " + "  ".join(f"{k}={_flat(v)}" for k, v in row.items()))
        else:
            lines.append(f"{key}: {_flat(value)}")
    return "\n".join(lines) + "\n"


# -------------------------------- commands ---------------------------------

def _parse_q(raw: str) -> core.CoprimeTuple:
    try:
        values = [int(part.strip()) for part in raw.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidParameter(f"cannot parse --q value {raw!r} as integers") from exc
    if not values:
        raise InvalidParameter(f"--q value {raw!r} contains no integers")
    return core.validate_tuple(values)


def _expand_options(config: RunConfig, half_degree: bool = False) -> core.ExpandOptions:
    return core.ExpandOptions(
        degree_cap=config.memory_cap_coeffs,
        subset_cap=config.subset_cap_k,
        half_degree=half_degree,
    )


def cmd_compute(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    rho = _parse_q(args.q)
    opts = _expand_options(config, half_degree=args.half_degree)
    p = core.expand(rho, opts)
    report = analysis.height_report(rho, polynomial=p, mantissa_bits=config.mantissa_bits)
    payload: dict[str, Any] = {
        "command": "compute",
        "q": [_big(q) for q in rho.qs],
        "k": rho.k,
        "m": _big(rho.m),
        "degree": p.degree,
        "height": _big(report.height),
        "normalizer": _big(report.normalizer),
        "normalized_ratio": _real(report.normalized_ratio),
    }
    if args.coeff is not None:
        if not 0 <= args.coeff <= p.degree:
            raise InvalidParameter(f"--coeff index {args.coeff} outside [0, {p.degree}]")
        payload["coeff_index"] = args.coeff
        payload["coeff"] = _big(p.coeffs[args.coeff])
    if not args.height_only:
        payload["palindromic"] = core.is_palindromic(p)
        payload["eval_at_one"] = _big(core.eval_at_one(p))
        if args.out:
            with open(args.out, "w", encoding="ascii") as sink:
                for c in p.coeffs:
                    sink.write(f"{c}\n")
            payload["coefficients_file"] = args.out
        elif len(p.coeffs) <= COEFF_INLINE_LIMIT or args.force_coeffs:
            values, as_strings = _coeff_values(p.coeffs)
            payload["coefficients"] = values
            if as_strings:
                payload["coefficients_as_strings"] = True
        else:
            payload["coefficients_omitted"] = True
    return payload, EXIT_OK


def cmd_construct(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    fam = construction.congruence_family(args.N, args.k)
    ratio = analysis.predicted_ratio(args.N, args.k, mantissa_bits=config.mantissa_bits)
    degree = core.degree_of(fam.rho)
    payload: dict[str, Any] = {
        "command": "construct",
        "N": args.N,
        "k": args.k,
        "r": _big(fam.r),
        "q": [_big(q) for q in fam.rho.qs],
        "m": _big(fam.rho.m),
        "degree": _big(degree),
        "congruence_ok": True,
        "branch": "plus",
        "lemma_bound": _frac(fam.height_bound.bound) if fam.height_bound else None,
        "height_floor": _big(fam.height_bound.floor) if fam.height_bound else None,
        "predicted_ratio": _real(ratio),
    }
    code = EXIT_OK
    if args.expand:
        p = core.expand(fam.rho, _expand_options(config))
        report = analysis.height_report(fam.rho, polynomial=p, mantissa_bits=config.mantissa_bits)
        payload["height"] = _big(report.height)
        payload["normalized_ratio"] = _real(report.normalized_ratio)
        if fam.height_bound is not None:
            ok = report.height >= fam.height_bound.floor
            payload["height_ok"] = ok
            if not ok:
                code = EXIT_VERIFY_FAILED
    return payload, code


def cmd_constant(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    result = analysis.limit_constant(args.terms, mantissa_bits=config.mantissa_bits)
    payload = {
        "command": "constant",
        "terms": result.terms_used,
        "value": _real(result.value),
        "error_bound": _real(result.error_bound),
    }
    return payload, EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    rho = _parse_q(args.q)
    if rho.k > config.subset_cap_k:
        raise CapacityError(f"k = {rho.k} exceeds subset cap {config.subset_cap_k}")
    if args.r < 1:
        raise InvalidParameter(f"--r must be positive, got {args.r}")
    report = construction.check_congruence(rho, args.r)
    payload: dict[str, Any] = {
        "command": "verify",
        "q": [_big(q) for q in rho.qs],
        "r": _big(args.r),
        "modulus": _big(report.modulus),
        "elements": [
            {"q": _big(e.q), "residue": _big(e.residue), "ok": e.ok, "branch": e.branch}
            for e in report.elements
        ],
        "congruence_ok": report.ok,
    }
    code = EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    if report.ok:
        bound = construction.height_lower_bound(rho, args.r)
        payload["lemma_bound"] = _frac(bound.bound)
        payload["height_floor"] = _big(bound.floor)
        if args.expand:
            p = core.expand(rho, _expand_options(config))
            measured = core.height(p)
            payload["degree"] = p.degree
            payload["height"] = _big(measured)
            payload["height_ok"] = measured >= bound.floor
            if not payload["height_ok"]:
                code = EXIT_VERIFY_FAILED
    return payload, code


def cmd_search(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    reports = analysis.search_max_ratio(
        args.m_cap,
        args.k,
        expand_cap=args.expand_cap,
        subset_cap=config.subset_cap_k,
        jobs=args.jobs,
        mantissa_bits=config.mantissa_bits,
    )
    payload: dict[str, Any] = {
        "command": "search",
        "k": args.k,
        "m_cap": _big(args.m_cap),
        "expand_cap": args.expand_cap,
        "note": "finite-sample statistic over the enumerated tuples; not an estimate of the limiting supremum",
        "reference_bracket": {"lower": analysis.RATIO_BRACKET_LOW, "upper": analysis.RATIO_BRACKET_HIGH},
        "count": len(reports),
        "results": [
            {
                "q": [_big(q) for q in rep.rho.qs],
                "m": _big(rep.rho.m),
                "degree": rep.degree,
                "height": _big(rep.height),
                "normalizer": _big(rep.normalizer),
                "normalized_ratio": _real(rep.normalized_ratio),
            }
            for rep in reports
        ],
    }
    return payload, EXIT_OK


def cmd_oracle_check(args: argparse.Namespace, config: RunConfig) -> tuple[dict[str, Any], int]:
    if args.m_cap > config.oracle_cap_m:
        raise CapacityError(f"m_cap = {args.m_cap} exceeds oracle cap {config.oracle_cap_m}")
    k_values = list(range(1, args.k_max + 1))
    opts = _expand_options(config)
    checked = 0
    mismatches: list[str] = []
    for k in k_values:
        for rho in analysis.coprime_tuples(k, args.m_cap):
            fast = core.expand(rho, opts)
            slow = oracle.oracle_expand(rho, oracle_cap=config.oracle_cap_m)
            checked += 1
            if fast.coeffs != slow.coeffs:
                mismatches.append(str(rho))
    payload = {
        "command": "oracle-check",
        "m_cap": _big(args.m_cap),
        "k_values": k_values,
        "tuples_checked": checked,
        "mismatches": len(mismatches),
        "mismatched_tuples": mismatches,
    }
    return payload, EXIT_OK if not mismatches else EXIT_VERIFY_FAILED


# --------------------------------- parser ----------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None,
                        help="output format (default: json when piped, text on a terminal)")
    common.add_argument("--memory-cap", type=int, default=None, metavar="COEFFS",
                        help="dense coefficient cap (default 2^28)")
    common.add_argument("--oracle-cap", type=int, default=None, metavar="M",
                        help="largest m the reference expander accepts (default 10^4)")
    common.add_argument("--subset-cap", type=int, default=None, metavar="K",
                        help="largest tuple length for subset enumeration (default 20)")
    common.add_argument("--mantissa-bits", type=int, default=None, metavar="BITS",
                        help="working precision for real-valued outputs (default 128)")

    parser = argparse.ArgumentParser(
        prog="iepoly",
        description="Exact inclusion-exclusion polynomials, coefficient heights, and extremal families.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("compute", parents=[common], help="expand a tuple and report height statistics")
    p.add_argument("--q", required=True, help="comma-separated tuple entries, e.g. 3,5,7")
    p.add_argument("--height-only", action="store_true", help="omit coefficients and structural checks")
    p.add_argument("--coeff", type=int, default=None, metavar="INDEX", help="also report one coefficient")
    p.add_argument("--half-degree", action="store_true", help="compute half the window and mirror")
    p.add_argument("--force-coeffs", action="store_true",
                   help=f"inline coefficients even above {COEFF_INLINE_LIMIT} entries")
    p.add_argument("--out", default=None, metavar="FILE",
                   help="write coefficients to FILE, one decimal integer per line")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("construct", parents=[common], help="build the (N, k) congruence family")
    p.add_argument("--N", required=True, type=int)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--expand", action="store_true", help="also expand and check the height floor")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("constant", parents=[common], help="evaluate the limiting ratio constant")
    p.add_argument("--terms", required=True, type=int)
    p.set_defaults(handler=cmd_constant)

    p = sub.add_parser("verify", parents=[common], help="check the congruence hypothesis and height bound")
    p.add_argument("--q", required=True, help="comma-separated tuple entries")
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--expand", action="store_true", help="also expand and compare the measured height")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="rank enumerable tuples by normalized ratio")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--m-cap", required=True, type=int)
    p.add_argument("--expand-cap", type=int, default=analysis.DEFAULT_SEARCH_EXPAND_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("oracle-check", parents=[common],
                       help="compare the fast expander against the reference route")
    p.add_argument("--m-cap", required=True, type=int)
    p.add_argument("--k-max", type=int, default=3)
    p.set_defaults(handler=cmd_oracle_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        # Arbitrary-precision integers are a deliberate output; the default
        # 4300-digit conversion guard would reject moderate-k bounds.
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        payload, code = args.handler(args, config)
    except (TupleValidationError, InvalidParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (IdentityMismatch, NonzeroRemainder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    emit(payload, config.output_format)
    return code


if __name__ == "__main__":
    sys.exit(main())
