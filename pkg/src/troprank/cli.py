"""Command-line front end: check | front | rate over a JSON problem file.

The problem file is a single JSON document::

    {
      "n": 2,
      "A": [[1, 2], ["1/2", 1]],
      "B": [[1, "1/3"], [3, 1]],
      "g": ["1/3", "1/3"],          // optional, default all zeros
      "h": ["1/2", "1/2"],          // optional, default unbounded
      "options": {"tolerance": 1e-9, "samples": 50, "log_base": 2.718281828}
    }

Matrix and vector entries are decimals or exact "p/q" fraction strings.
Records are printed to stdout as JSON; progress and error diagnostics
go to stderr.  Numbers in records carry a decimal rendering (12
significant digits) plus a fraction string wherever the value is an
exact small rational; unbounded limits render as null.

Exit codes: 0 success, 2 parse failure, 3 validation failure, 4 solver
infeasibility (the error kind is named), 5 requested alpha off the
front.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import semiring as sr
from .bicriteria import ProblemInstance, compute_front
from .inequalities import EmptyBoxError
from .oracle import GridSpec, front_agreement
from .ratings import (
    AlphaRangeError,
    ReciprocityError,
    consistency_index,
    rate,
    validate_reciprocal,
)
from .semiring import DomainError, StarConditionError, TOP

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SOLVER = 4
EXIT_ALPHA_RANGE = 5

_VERIFY_RESOLUTION = 60


class ProblemFormatError(ValueError):
    """The problem file cannot be parsed into matrices and bounds."""


@dataclass(frozen=True)
class ProblemFile:
    """Parsed problem file: log-domain data plus solver options."""

    a: np.ndarray
    b: np.ndarray
    g: np.ndarray
    h: np.ndarray
    tolerance: float
    samples: int
    log_base: float | None


def load_problem(path: str) -> ProblemFile:
    """Read and parse a JSON problem file (format errors only)."""
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ProblemFormatError("problem file must hold a JSON object")
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ProblemFormatError("missing or invalid alternative count 'n'") from exc
    if n < 1:
        raise ProblemFormatError(f"alternative count must be positive, got {n}")

    a = _parse_matrix(data, "A", n)
    b = _parse_matrix(data, "B", n)
    g = _parse_vector(data, "g", n, default=sr.zeros(n))
    h = _parse_vector(data, "h", n, default=np.full(n, TOP))

    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ProblemFormatError("'options' must be an object")
    try:
        tolerance = float(options.get("tolerance", sr.DEFAULT_TOL))
        samples = int(options.get("samples", 50))
        log_base = options.get("log_base")
        log_base = float(log_base) if log_base is not None else None
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError(f"invalid options: {exc}") from exc
    if samples < 1:
        raise ProblemFormatError("sample count must be positive")
    if log_base is not None and log_base <= 1:
        raise ProblemFormatError("log base must exceed 1")
    return ProblemFile(
        a=a, b=b, g=g, h=h, tolerance=tolerance, samples=samples, log_base=log_base
    )


def _parse_entry(token, where: str) -> float:
    try:
        return sr.parse_number(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"bad number at {where}: {token!r} ({exc})") from exc


def _parse_matrix(data: dict, key: str, n: int) -> np.ndarray:
    rows = data.get(key)
    if not isinstance(rows, list) or len(rows) != n:
        raise ProblemFormatError(f"'{key}' must be a list of {n} rows")
    out = np.empty((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ProblemFormatError(f"'{key}' row {i + 1} must hold {n} entries")
        for j, token in enumerate(row):
            out[i, j] = _parse_entry(token, f"{key}[{i + 1},{j + 1}]")
    return out


def _parse_vector(data: dict, key: str, n: int, default: np.ndarray) -> np.ndarray:
    tokens = data.get(key)
    if tokens is None:
        return default
    if not isinstance(tokens, list) or len(tokens) != n:
        raise ProblemFormatError(f"'{key}' must be a list of {n} entries")
    return np.array([_parse_entry(t, f"{key}[{j + 1}]") for j, t in enumerate(tokens)])


# ---------------------------------------------------------------------------
# number rendering

def _decimal(value: float):
    """Ordinary-scale value at 12 significant digits; unbounded maps to null."""
    if value == TOP:
        return None
    return float(f"{value:.12g}")


def _fraction(value: float, max_den: int = 10**6):
    """Exact small-rational rendering, or None when none fits."""
    if value == TOP:
        return "inf"
    if value == 0:
        return "0"
    if not math.isfinite(value) or value < 0:
        return None
    frac = Fraction(value).limit_denominator(max_den)
    if frac == 0 or abs(float(frac) - value) > 1e-9 * abs(value):
        return None
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def _scalar_fields(name: str, log_value: float) -> dict:
    value = sr.to_value(log_value)
    out = {name: _decimal(value)}
    frac = _fraction(value)
    if frac is not None:
        out[f"{name}_fraction"] = frac
    return out


def _vector_fields(name: str, values) -> dict:
    vals = [float(v) for v in values]
    return {
        name: [_decimal(v) for v in vals],
        f"{name}_fractions": [_fraction(v) for v in vals],
    }


def _matrix_fields(name: str, matrix: np.ndarray) -> dict:
    return {
        name: [[_decimal(float(v)) for v in row] for row in matrix],
        f"{name}_fractions": [[_fraction(float(v)) for v in row] for row in matrix],
    }


def _term_records(terms) -> list:
    records = []
    for t in terms:
        coeff = sr.to_value(t.coeff)
        rec = {"coefficient": _decimal(coeff), "exponent": str(t.exponent)}
        frac = _fraction(coeff)
        if frac is not None:
            rec["coefficient_fraction"] = frac
        records.append(rec)
    return records


def _front_record(front, samples: int) -> dict:
    record = {"kind": front.kind}
    if front.is_point:
        record.update(_scalar_fields("alpha", front.alpha_lo))
        record.update(_scalar_fields("beta", front.beta))
    else:
        record.update(_scalar_fields("alpha_lo", front.alpha_lo))
        record.update(_scalar_fields("alpha_hi", front.alpha_hi))
        record.update(_scalar_fields("beta_at_alpha_lo", front.beta_at(front.alpha_lo)))
        record.update(_scalar_fields("beta_at_alpha_hi", front.beta_at(front.alpha_hi)))
    record["beta_terms"] = _term_records(front.functions.beta_terms)
    record["alpha_terms"] = _term_records(front.functions.alpha_terms)
    record["samples"] = [
        {"alpha": _decimal(sr.to_value(a)), "beta": _decimal(sr.to_value(b))}
        for a, b in front.sample(samples)
    ]
    return record


# ---------------------------------------------------------------------------
# commands

def _validated_matrices(problem: ProblemFile):
    cm_a = validate_reciprocal(sr.to_values(problem.a))
    cm_b = validate_reciprocal(sr.to_values(problem.b))
    return cm_a, cm_b


def cmd_check(args) -> int:
    problem = load_problem(args.path)
    record = {"valid": True, "matrices": {}}
    status = EXIT_OK
    for key, log_matrix in (("A", problem.a), ("B", problem.b)):
        entry = {}
        ordinary = sr.to_values(log_matrix)
        try:
            cm = validate_reciprocal(ordinary)
            entry["reciprocal"] = True
            entry["violations"] = []
            entry["consistency_index"] = _decimal(consistency_index(cm))
        except ReciprocityError as exc:
            entry["reciprocal"] = False
            entry["violations"] = [
                {"row": i + 1, "col": j + 1, "product": _decimal(p)}
                for i, j, p in exc.violations
            ]
            entry["consistency_index"] = _decimal(
                sr.to_value(sr.spectral_radius(log_matrix))
            )
            record["valid"] = False
            status = EXIT_VALIDATION
        record["matrices"][key] = entry
    try:
        ProblemInstance(a=problem.a, b=problem.b, g=problem.g, h=problem.h)
        record["bounds_valid"] = True
    except (ValueError,) as exc:
        record["bounds_valid"] = False
        record["bounds_error"] = str(exc)
        record["valid"] = False
        status = EXIT_VALIDATION
    print(json.dumps(record, indent=2))
    return status


def cmd_front(args) -> int:
    problem = load_problem(args.path)
    _validated_matrices(problem)
    tol = args.tolerance if args.tolerance is not None else problem.tolerance
    inst = ProblemInstance(a=problem.a, b=problem.b, g=problem.g, h=problem.h)
    front = compute_front(inst, tol)
    samples = args.samples if args.samples is not None else problem.samples
    record = _front_record(front, samples)
    if args.output:
        rows = front.sample(samples)
        with open(args.output, "w") as handle:
            handle.write("alpha,beta\n")
            for a, b in rows:
                handle.write(f"{sr.to_value(a):.12g},{sr.to_value(b):.12g}\n")
        print(f"wrote {len(rows)} front samples to {args.output}", file=sys.stderr)
    print(json.dumps(record, indent=2))
    return EXIT_OK


def cmd_rate(args) -> int:
    problem = load_problem(args.path)
    cm_a, cm_b = _validated_matrices(problem)
    tol = args.tolerance if args.tolerance is not None else problem.tolerance
    log_base = args.log_base if args.log_base is not None else problem.log_base
    g = sr.to_values(problem.g)
    h = np.where(problem.h == TOP, np.inf, sr.to_values(problem.h))
    samples = args.samples if args.samples is not None else problem.samples
    at_alpha = None
    if args.at_alpha is not None:
        at_alpha = sr.to_value(_parse_entry(args.at_alpha, "--at-alpha"))
    result = rate(
        cm_a,
        cm_b,
        g,
        h,
        at_alpha=at_alpha,
        front_samples=samples,
        tol=tol,
        log_base=log_base,
    )

    record = {"front": _front_record(result.front, samples)}
    record["ratings"] = []
    for alpha, beta, box in result.families:
        family = {
            "alpha": _decimal(alpha),
            "beta": _decimal(beta),
        }
        frac = _fraction(alpha)
        if frac is not None:
            family["alpha_fraction"] = frac
        frac = _fraction(beta)
        if frac is not None:
            family["beta_fraction"] = frac
        family["family"] = {
            **_matrix_fields("generator", sr.to_values(box.star)),
            **_vector_fields("u_lower", sr.to_values(box.lower)),
            **_vector_fields(
                "u_upper",
                [TOP if v == TOP else sr.to_value(v) for v in box.upper],
            ),
        }
        family["representatives"] = [
            {
                **_vector_fields("x", rep.x),
                **_vector_fields("normalized", rep.normalized),
                "source": rep.source,
                "log_cheb_error": [_decimal(v) for v in rep.log_cheb],
                "max_relative_error": [_decimal(v) for v in rep.max_rel],
            }
            for rep in result.representatives
            if math.isclose(rep.alpha, alpha, rel_tol=1e-12, abs_tol=0.0)
        ]
        record["ratings"].append(family)

    if args.verify:
        record["verification"] = _verify_record(problem, result)
    print(json.dumps(record, indent=2))
    return EXIT_OK


def _verify_record(problem: ProblemFile, result) -> dict:
    inst = ProblemInstance(a=problem.a, b=problem.b, g=problem.g, h=problem.h)
    center = None
    if np.any(inst.h == TOP):
        if not result.representatives:
            return {"ran": False, "reason": "no representative to center the grid on"}
        center = sr.from_values(result.representatives[0].x)
    spec = GridSpec.from_instance(inst, resolution=_VERIFY_RESOLUTION, center=center)
    report = front_agreement(inst, result.front, spec)
    print(
        f"grid verification: {report['grid_points']} non-dominated grid pairs, "
        f"cover gap {math.expm1(report['cover_gap']):.4%}, "
        f"undercut {math.expm1(report['undercut']):.4%}, "
        f"tolerance {report['rel_tol']:.4%}",
        file=sys.stderr,
    )
    return {
        "ran": True,
        "resolution": _VERIFY_RESOLUTION,
        "grid_points": report["grid_points"],
        "relative_tolerance": _decimal(report["rel_tol"]),
        "cover_gap": _decimal(math.expm1(report["cover_gap"])),
        "undercut": _decimal(math.expm1(report["undercut"])),
        "agrees": report["agrees"],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troprank",
        description=(
            "Rate alternatives from two pairwise-comparison matrices under "
            "box constraints: exact Pareto front and all optimal ratings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("path", nargs="?", help="JSON problem file")
        p.add_argument("--input", dest="input_path", help="JSON problem file (alternative to the positional path)")
        p.add_argument("--tolerance", type=float, default=None,
                       help="comparison tolerance in the log domain (overrides the file option)")

    p_check = sub.add_parser("check", help="validate the problem file and report consistency")
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_front = sub.add_parser("front", help="compute the Pareto front")
    add_common(p_front)
    p_front.add_argument("--samples", type=int, default=None,
                         help="number of front samples (default from file options, else 50)")
    p_front.add_argument("--output", help="write alpha,beta samples to this CSV file")
    p_front.set_defaults(func=cmd_front)

    p_rate = sub.add_parser("rate", help="report optimal rating vectors")
    add_common(p_rate)
    group = p_rate.add_mutually_exclusive_group()
    group.add_argument("--at-alpha", dest="at_alpha",
                       help="report ratings at this first-objective value (number or p/q)")
    group.add_argument("--all", action="store_true",
                       help="report ratings across the whole front (default)")
    p_rate.add_argument("--samples", type=int, default=None,
                        help="front points reported with --all")
    p_rate.add_argument("--verify", action="store_true",
                        help="cross-check the front against the grid oracle")
    p_rate.add_argument("--log-base", dest="log_base", type=float, default=None,
                        help="log base for error diagnostics (overrides the file option)")
    p_rate.set_defaults(func=cmd_rate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    path = args.input_path or args.path
    if not path:
        print("error: no problem file given", file=sys.stderr)
        return EXIT_PARSE
    args.path = path
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ReciprocityError, DomainError, ValueError) as exc:
        if isinstance(exc, StarConditionError) or isinstance(exc, EmptyBoxError):
            kind = type(exc).__name__
            print(f"solver error ({kind}): {exc}", file=sys.stderr)
            return EXIT_SOLVER
        if isinstance(exc, AlphaRangeError):
            print(f"alpha range error: {exc}", file=sys.stderr)
            return EXIT_ALPHA_RANGE
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
