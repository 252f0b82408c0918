"""Golden convergence tables and their reproduction machinery.

The printed strings are embedded verbatim (digit groups separated by spaces,
exactly as published); a column's printed number is value * 10**scale_exp.
Ragged columns stop at the depth where the source stopped printing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .catalog import level_fn
from .engine import MeshSpec
from .scaled import ScaledReal, as_scaled

CHECK_TOL_GAMMA = 1e-13
CHECK_TOL_CHF = 1e-12
CHECK_TOL_CHF_BIG_X = 1e-11


@dataclass(frozen=True)
class TableColumn:
    label: str
    function: str
    params: Dict[str, float]
    scale_exp: int
    printed: Tuple[str, ...]
    check_tol: float
    final_terms: Optional[int] = None  # stated in the source, where given

    def golden(self, row: int) -> float:
        return float(self.printed[row].replace(" ", "")) * 10.0 ** (-self.scale_exp)

    @property
    def depth(self) -> int:
        return len(self.printed)


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    title: str
    columns: Tuple[TableColumn, ...]

    @property
    def max_depth(self) -> int:
        return max(col.depth for col in self.columns)


def _gamma_col(label, s, x, scale, printed, final_terms=None):
    return TableColumn(label, "gamma-p", {"s": s, "x": x}, scale, tuple(printed),
                       CHECK_TOL_GAMMA, final_terms)


def _chf_col(label, a, b, x, scale, printed):
    tol = CHECK_TOL_CHF_BIG_X if x >= 100 else CHECK_TOL_CHF
    return TableColumn(label, "chf", {"a": a, "b": b, "x": x}, scale, tuple(printed), tol)


TABLES: Dict[int, TableSpec] = {
    1: TableSpec(1, "P(s, x) by the trapezoidal rule", (
        _gamma_col("P(0.1, 1) x 10", 0.1, 1.0, 1, [
            "9.85296 26362 19827",
            "9.75973 88897 94659",
            "9.75872 65150 00294",
            "9.75872 65627 36719",
            "9.75872 65627 36723",
        ], final_terms=153),
        _gamma_col("P(1, 0.1) x 100", 1.0, 0.1, 2, [
            "9.58023 11961 90712",
            "9.51192 39220 99238",
            "9.51625 80387 73782",
            "9.51625 81964 04048",
            "9.51625 81964 04037",
        ], final_terms=151),
        _gamma_col("P(0.1, 0.1) x 10", 0.1, 0.1, 1, [
            "8.37021 11048 74736",
            "8.27666 75413 58269",
            "8.27551 75852 50319",
            "8.27551 75958 58505",
            "8.27551 75958 58505",
        ], final_terms=153),
    )),
    2: TableSpec(2, "P(s, x) by the trapezoidal rule", (
        _gamma_col("P(1, 1) x 10", 1.0, 1.0, 1, [
            "6.35418 14003 89701",
            "6.32017 05027 55139",
            "6.32120 56442 73888",
            "6.32120 55882 85574",
            "6.32120 55882 85577",
        ], final_terms=151),
        _gamma_col("P(10, 10) x 10", 10.0, 10.0, 1, [
            "5.69571 39376 33220",
            "5.41549 12109 30272",
            "5.42070 15780 49574",
            "5.42070 28552 84053",
            "5.42070 28552 81477",
            "5.42070 28552 81479",
        ], final_terms=285),
        _gamma_col("P(1000, 1000) x 10", 1000.0, 1000.0, 1, [
            "5.45885 48876 16142",
            "5.11064 21436 17747",
            "5.04658 65045 16275",
            "5.04204 40307 32861",
            "5.04205 21812 85238",
            "5.04205 24418 02230",
            "5.04205 24418 02222",
        ], final_terms=841),
    )),
    3: TableSpec(3, "C(a = 1, b = 1; x)", (
        _chf_col("(x = 0.)", 1.0, 1.0, 0.0, 0, [
            "1.00107 86347 90329",
            "1.00000 01397 11616",
            "1.00000 00000 00001",
        ]),
        _chf_col("(x = 1.)", 1.0, 1.0, 1.0, 0, [
            "1.72266 65011 24113",
            "1.71828 29887 33384",
            "1.71828 18284 59079",
            "1.71828 18284 59044",
        ]),
        _chf_col("(x = 100.) x 10^-41", 1.0, 1.0, 100.0, -41, [
            "1.34247 60795 12472",
            "2.83640 72153 82483",
            "2.68831 33551 31161",
            "2.68811 71418 07843",
            "2.68811 71418 16129",
            "2.68811 71418 16129",
        ]),
    )),
    4: TableSpec(4, "C(a = 0.1, b = 1; x)", (
        _chf_col("(x = 0.)", 0.1, 1.0, 0.0, 0, [
            "9.99991 08876 77476",
            "10.00000 00993 10149",
            "9.99999 99999 99998",
            "9.99999 99999 99998",
        ]),
        _chf_col("(x = 1.)", 0.1, 1.0, 1.0, 0, [
            "11.21464 29773 5867",
            "11.21300 57977 0100",
            "11.21300 52032 3319",
            "11.21300 52032 3318",
        ]),
        _chf_col("(x = 100.) x 10^-41", 0.1, 1.0, 100.0, -41, [
            "1.34425 85914 11300",
            "2.86472 18192 35488",
            "2.71295 94923 56232",
            "2.71278 37414 62587",
            "2.71278 37414 71210",
            "2.71278 37414 71210",
        ]),
    )),
    5: TableSpec(5, "C(a = 0.1, b = 10; x)", (
        _chf_col("(x = 0.)", 0.1, 10.0, 0.0, 0, [
            "7.53951 55733 97154",
            "7.59131 58970 84419",
            "7.59138 00009 01282",
            "7.59138 00009 11013",
            "7.59138 00009 11017",
        ]),
        _chf_col("(x = 1.)", 0.1, 10.0, 1.0, 0, [
            "7.63169 79919 69269",
            "7.67046 16609 55571",
            "7.67049 54154 30269",
            "7.67049 54154 32864",
            "7.67049 54154 32878",
        ]),
        _chf_col("(x = 100.) x 10^-29", 0.1, 10.0, 100.0, -29, [
            "3.40378 23912 96282",
            "1.70396 29450 35887",
            "1.09112 36709 31219",
            "1.07365 08998 41708",
            "1.07365 07978 79342",
            "1.07365 07978 79343",
        ]),
    )),
    6: TableSpec(6, "C(a = 10, b = 0.1; x)", (
        _chf_col("(x = 0.)", 10.0, 0.1, 0.0, 0, [
            "7.53951 55733 97154",
            "7.59131 58970 84419",
            "7.59138 00009 01285",
            "7.59138 00009 11014",
            "7.59138 00009 11021",
        ]),
        _chf_col("(x = 1.)", 10.0, 0.1, 1.0, 0, [
            "20.26525 88483 9334",
            "20.44048 93266 6513",
            "20.44076 89724 1024",
            "20.44076 89724 7923",
            "20.44076 89724 7924",
        ]),
        _chf_col("(x = 100.) x 10^-44", 10.0, 0.1, 100.0, -44, [
            "1.69844 72080 59734",
            "1.59374 46727 15385",
            "1.59966 19996 26905",
            "1.59966 08127 76379",
            "1.59966 08127 76238",
            "1.59966 08127 76246",
        ]),
    )),
    7: TableSpec(7, "C(a = 0.1, b = 0.1; x)", (
        _chf_col("(x = 0.)", 0.1, 0.1, 0.0, 0, [
            "19.71352 25754 7283",
            "19.71463 97119 7631",
            "19.71463 94890 5016",
            "19.71463 94890 5015",
        ]),
        _chf_col("(x = 1.)", 0.1, 0.1, 1.0, 0, [
            "35.95446 58322 5812",
            "35.95643 50355 3144",
            "35.95643 47587 2009",
            "35.95643 47587 2014",
            "35.95643 47587 2013",
        ]),
        _chf_col("(x = 100.) x 10^-44", 0.1, 0.1, 100.0, -44, [
            "1.70487 63130 76804",
            "1.61024 26167 51076",
            "1.61504 43786 53350",
            "1.61504 16242 89936",
            "1.61504 16242 89858",
            "1.61504 16242 89859",
        ]),
    )),
}


@dataclass(frozen=True)
class CellResult:
    h: float
    inv_h: int
    value: ScaledReal
    terms: int
    golden: float
    rel_dev: float


@dataclass(frozen=True)
class ColumnResult:
    column: TableColumn
    cells: Tuple[CellResult, ...]

    @property
    def final(self) -> CellResult:
        return self.cells[-1]

    @property
    def max_rel_dev(self) -> float:
        return max(c.rel_dev for c in self.cells)

    @property
    def passed(self) -> bool:
        return self.max_rel_dev <= self.column.check_tol


@dataclass(frozen=True)
class TableResult:
    spec: TableSpec
    columns: Tuple[ColumnResult, ...]

    @property
    def max_rel_dev(self) -> float:
        return max(c.max_rel_dev for c in self.columns)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.columns)


def _rel_to_golden(value: ScaledReal, golden: float) -> float:
    g = as_scaled(golden)
    if g.significand == 0.0:
        return abs(value.significand)
    de = value.exp10 - g.exp10
    if abs(de) > 30:
        return math.inf
    return abs(value.significand * 10.0 ** de - g.significand) / abs(g.significand)


def run_table(table_id: int, h0: float = 1.0, mesh: Optional[MeshSpec] = None) -> TableResult:
    """Recompute every printed cell of one table at its published depths."""
    if table_id not in TABLES:
        raise KeyError(f"no table {table_id}; valid ids are 1..7")
    spec = TABLES[table_id]
    mesh = mesh or MeshSpec(h=h0)
    out_cols: List[ColumnResult] = []
    for col in spec.columns:
        fn = level_fn(col.function, col.params, mesh)
        cells = []
        h = h0
        for row in range(col.depth):
            value, terms = fn(h)
            sval = value if isinstance(value, ScaledReal) else as_scaled(value)
            golden = col.golden(row)
            cells.append(CellResult(
                h=h, inv_h=round(1.0 / h), value=sval, terms=terms,
                golden=golden, rel_dev=_rel_to_golden(sval, golden)))
            h *= 0.5
        out_cols.append(ColumnResult(column=col, cells=tuple(cells)))
    return TableResult(spec=spec, columns=tuple(out_cols))
