"""Command-line front end: point evaluation, table reproduction, convergence.

Exit codes: 0 success, 1 usage, 2 domain (precondition) errors, 3
accuracy/overflow errors, 4 golden-check failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Dict, List, Optional

from .catalog import DEFAULT_AGREE, FUNCTIONS, evaluate
from .engine import ConvergenceReport, MeshSpec
from .errors import (AccuracyError, DomainError, NonFiniteTerm, OverflowGuard,
                     PoleError, TermCapExceeded)
from .scaled import as_scaled, rel_diff
from .tables import TABLES, TableResult, run_table

PARAM_FLAGS = ("s", "x", "a", "b", "c", "z")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _f17(v: float) -> str:
    return format(float(v), ".17g")


def _canon_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats at 17 digits."""
    if isinstance(obj, dict):
        return "{" + ",".join(f'"{k}":{_canon_json(v)}' for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canon_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _f17(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _sig(v) -> Dict[str, object]:
    s = as_scaled(v)
    return {"sig": s.significand, "exp10": s.exp10}


def _sig_str(v) -> str:
    s = as_scaled(v)
    return f"{s.significand:.16g}e{s.exp10:+03d}"


def _grouped(value_printed: float) -> str:
    """16 significant digits with the decimals grouped in fives."""
    if value_printed == 0.0:
        return "0.00000 00000 00000"
    mag = int(math.floor(math.log10(abs(value_printed))))
    decimals = max(0, 15 - mag)
    s = f"{value_printed:.{decimals}f}"
    if "." not in s:
        return s
    head, frac = s.split(".")
    groups = [frac[i:i + 5] for i in range(0, len(frac), 5)]
    return head + "." + " ".join(groups)


def build_parser() -> _Parser:
    parser = _Parser(prog="trapfun",
                     description="Special functions by trapezoidal contour sums")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_check=False):
        p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
        p.add_argument("--h0", type=float, default=None, help="starting mesh size")
        p.add_argument("--levels", type=int, default=None, help="maximum halvings")
        p.add_argument("--trunc-tol", type=float, default=1e-16)
        p.add_argument("--max-terms", type=int, default=100000)
        if with_check:
            p.add_argument("--check", action="store_true",
                           help="compare against the embedded golden values")

    ev = sub.add_parser("eval", help="converged point evaluation")
    ev.add_argument("function", choices=sorted(FUNCTIONS))
    for flag in PARAM_FLAGS:
        ev.add_argument(f"--{flag}", type=float, default=None)
    add_common(ev)

    tb = sub.add_parser("table", help="reproduce a golden convergence table")
    tb.add_argument("table_id", type=int, choices=sorted(TABLES))
    add_common(tb, with_check=True)

    cv = sub.add_parser("converge", help="per-level convergence study")
    cv.add_argument("function", choices=sorted(FUNCTIONS))
    for flag in PARAM_FLAGS:
        cv.add_argument(f"--{flag}", type=float, default=None)
    add_common(cv)

    return parser


def _collect_params(args, name: str) -> Dict[str, float]:
    spec = FUNCTIONS[name]
    given = {f: getattr(args, f) for f in PARAM_FLAGS if getattr(args, f) is not None}
    missing = [p for p in spec.param_names if p not in given]
    extra = [p for p in given if p not in spec.param_names]
    if missing or extra:
        msg = f"{name} takes parameters {'/'.join('--' + p for p in spec.param_names)}"
        if missing:
            msg += f"; missing {', '.join('--' + p for p in missing)}"
        if extra:
            msg += f"; unexpected {', '.join('--' + p for p in extra)}"
        raise UsageError(msg)
    return {p: given[p] for p in spec.param_names}


def _mesh(args) -> MeshSpec:
    return MeshSpec(h=args.h0 if args.h0 is not None else 1.0 / 16,
                    trunc_tol=args.trunc_tol, max_terms_per_side=args.max_terms)


def _record(name: str, params: Dict[str, float], report: ConvergenceReport) -> dict:
    return {
        "function": name,
        "params": {k: float(v) for k, v in params.items()},
        "levels": [{"h": float(lv.h), "value": _sig(lv.value), "terms": lv.terms_used}
                   for lv in report.levels],
        "converged": report.converged,
        "final": _sig(report.final_value),
    }


def _csv_record(name: str, params: Dict[str, float], report: ConvergenceReport) -> str:
    lines = ["function," + ",".join(params) + ",h,value,exp10,terms,converged"]
    flag = "true" if report.converged else "false"
    pvals = ",".join(_f17(v) for v in params.values())
    for lv in report.levels:
        s = as_scaled(lv.value)
        lines.append(f"{name},{pvals},{_f17(lv.h)},{_f17(s.significand)},"
                     f"{s.exp10},{lv.terms_used},{flag}")
    return "\n".join(lines)


def _plain_record(name: str, params: Dict[str, float], report: ConvergenceReport,
                  digits_summary: bool) -> str:
    head = f"{name}(" + ", ".join(f"{k}={v:g}" for k, v in params.items()) + ")"
    lines = [head, f"{'1/h':>8}  {'value':<24}  {'terms':>6}"]
    digits: List[float] = []
    prev = None
    for lv in report.levels:
        inv = 1.0 / lv.h
        inv_s = f"{inv:.6g}" if abs(inv - round(inv)) > 1e-9 else str(round(inv))
        lines.append(f"{inv_s:>8}  {_sig_str(lv.value):<24}  {lv.terms_used:>6}")
        if prev is not None:
            r = rel_diff(lv.value, prev)
            digits.append(0.0 if r <= 0 else max(0.0, -math.log10(r)) if math.isfinite(r) else 16.0)
        prev = lv.value
    if digits_summary and digits:
        agreed = " ".join(f"{d:.1f}" for d in digits)
        gained = " ".join(f"{digits[i] - (digits[i - 1] if i else 0.0):+.1f}"
                          for i in range(len(digits)))
        lines.append(f"digits agreed per halving: {agreed}")
        lines.append(f"digits gained per halving: {gained}")
    lines.append(f"converged: {'yes' if report.converged else 'no'}"
                 f" (relative change {report.relative_change:.3e})")
    lines.append(f"final: {_sig_str(report.final_value)}")
    return "\n".join(lines)


def _cmd_point(args, digits_summary: bool) -> int:
    name = args.function
    params = _collect_params(args, name)
    mesh = _mesh(args)
    report = evaluate(name, params, mesh=mesh, h0=args.h0,
                      max_levels=args.levels, agree_tol=DEFAULT_AGREE)
    if args.format == "json":
        print(_canon_json(_record(name, params, report)))
    elif args.format == "csv":
        print(_csv_record(name, params, report))
    else:
        print(_plain_record(name, params, report, digits_summary))
    return 0


def _table_json(result: TableResult, checked: bool) -> dict:
    spec = result.spec
    obj = {"table": spec.table_id, "title": spec.title, "columns": []}
    for colres in result.columns:
        col = colres.column
        entry = {
            "label": col.label,
            "function": col.function,
            "params": {k: float(v) for k, v in col.params.items()},
            "scale_exp": col.scale_exp,
            "rows": [{"inv_h": c.inv_h, "value": _sig(c.value), "terms": c.terms}
                     for c in colres.cells],
        }
        if checked:
            entry["check"] = {"max_rel_dev": colres.max_rel_dev,
                              "tol": col.check_tol, "pass": colres.passed}
        obj["columns"].append(entry)
    if checked:
        obj["check"] = {"max_rel_dev": result.max_rel_dev, "pass": result.passed}
    return obj


def _table_plain(result: TableResult, checked: bool) -> str:
    spec = result.spec
    lines = [f"Table {spec.table_id}. {spec.title}", ""]
    width = max(22, max(len(c.column.label) for c in result.columns) + 2)
    header = f"{'1/h':<5}" + "".join(f"{c.column.label:<{width}}" for c in result.columns)
    lines.append(header.rstrip())
    deepest = max(result.columns, key=lambda c: len(c.cells))
    for row in range(spec.max_depth):
        cells = [f"{deepest.cells[row].inv_h:<5}"]
        for colres in result.columns:
            if row < len(colres.cells):
                cell = colres.cells[row]
                printed = cell.value.significand * 10.0 ** (
                    cell.value.exp10 + colres.column.scale_exp)
                cells.append(f"{_grouped(printed):<{width}}")
            else:
                cells.append(" " * width)
        lines.append("".join(cells).rstrip())
    if checked:
        lines.append("")
        for colres in result.columns:
            status = "ok" if colres.passed else "FAIL"
            lines.append(f"check {colres.column.label}: max rel dev "
                         f"{colres.max_rel_dev:.3e} (tol {colres.column.check_tol:g}) {status}")
            if not colres.passed:
                for cell in colres.cells:
                    if cell.rel_dev > colres.column.check_tol:
                        lines.append(
                            f"  cell 1/h={cell.inv_h}: got {_sig_str(cell.value)}, "
                            f"golden {_f17(cell.golden)}, rel dev {cell.rel_dev:.3e}")
        lines.append(f"check overall: max rel dev {result.max_rel_dev:.3e} "
                     f"{'PASS' if result.passed else 'FAIL'}")
    return "\n".join(lines)


def _table_csv(result: TableResult, checked: bool) -> str:
    spec = result.spec
    params = spec.columns[0].params
    lines = ["function," + ",".join(params) + ",h,value,exp10,terms,converged"]
    for colres in result.columns:
        col = colres.column
        pvals = ",".join(_f17(v) for v in col.params.values())
        for i, cell in enumerate(colres.cells):
            conv = "true" if i == len(colres.cells) - 1 else "false"
            lines.append(f"{col.function},{pvals},{_f17(cell.h)},"
                         f"{_f17(cell.value.significand)},{cell.value.exp10},"
                         f"{cell.terms},{conv}")
    if checked:
        lines.append(f"# max_rel_dev,{_f17(result.max_rel_dev)},"
                     f"pass,{'true' if result.passed else 'false'}")
    return "\n".join(lines)


def _cmd_table(args) -> int:
    mesh = MeshSpec(h=args.h0 if args.h0 is not None else 1.0, trunc_tol=args.trunc_tol,
                    max_terms_per_side=args.max_terms)
    result = run_table(args.table_id, h0=args.h0 if args.h0 is not None else 1.0, mesh=mesh)
    if args.format == "json":
        print(_canon_json(_table_json(result, args.check)))
    elif args.format == "csv":
        print(_table_csv(result, args.check))
    else:
        print(_table_plain(result, args.check))
    if args.check and not result.passed:
        return 4
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "eval":
            return _cmd_point(args, digits_summary=False)
        if args.command == "table":
            return _cmd_table(args)
        if args.command == "converge":
            if args.levels is not None and args.levels < 2:
                raise UsageError("--levels must be at least 2")
            return _cmd_point(args, digits_summary=True)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, PoleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, OverflowGuard, TermCapExceeded, NonFiniteTerm) as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
