#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/21-下午3:40
import csv
import io
import json
import math
import numbers
from dataclasses import dataclass, field
from typing import Any, List, Sequence, Tuple

from censoring_design.config import OutputFormat

FLOAT_DIGITS = 17
TABLE_DECIMALS = 4

PROBLEM_COLUMNS = ("n", "m", "shape", "scale_rate", "k1", "k2", "k3")
OPTIMIZE_COLUMNS = PROBLEM_COLUMNS + ("seed", "scheme", "cost", "generations", "evaluations")
EVALUATE_COLUMNS = PROBLEM_COLUMNS + ("scheme", "expected_duration", "variance", "cost")
SENSITIVITY_COLUMNS = ("perturbed", "scheme", "re")
OPTIMAL_M_COLUMNS = ("n", "m_star", "scheme", "cost")
COMPARE_COLUMNS = ("method", "scheme", "cost", "evaluations", "seconds")
SIMULATE_COLUMNS = (
    "n",
    "m",
    "shape",
    "scale_rate",
    "scheme",
    "replications",
    "seed",
    "mean",
    "standard_error",
    "expected_duration",
)


def _plain(value: Any) -> Any:
    """numpy scalars to builtins"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        return float(value)
    return str(value)


@dataclass
class Report:
    command: str
    columns: Tuple[str, ...]
    rows: List[Tuple[Any, ...]] = field(default_factory=list)

    def add(self, *values: Any):
        assert len(values) == len(self.columns), (values, self.columns)
        self.rows.append(tuple(_plain(value) for value in values))

    def records(self) -> List[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def format_float(value: float) -> str:
    """17 significant digits, trailing zeros kept; non-finite values as JSON spells them"""
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return format(value, f"#.{FLOAT_DIGITS}g")


class _FixedDigitsJSONEncoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        encoder = json.encoder.py_encode_basestring_ascii if self.ensure_ascii else json.encoder.py_encode_basestring
        return json.encoder._make_iterencode(  # type: ignore[attr-defined]
            {} if self.check_circular else None,
            self.default,
            encoder,
            self.indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )(o, 0)


def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([format_float(value) if isinstance(value, float) else value for value in row])
    return buffer.getvalue()


def render_json(report: Report) -> str:
    payload = {"command": report.command, "rows": report.records()}
    return json.dumps(payload, indent=2, cls=_FixedDigitsJSONEncoder) + "\n"


def _table_cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.{TABLE_DECIMALS}f}"
    return str(value)


def render_table(report: Report) -> str:
    cells: List[Sequence[str]] = [report.columns] + [[_table_cell(value) for value in row] for row in report.rows]
    widths = [max(len(line[index]) for line in cells) for index in range(len(report.columns))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(line, widths)) for line in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: OutputFormat) -> str:
    output_format = OutputFormat(output_format)
    if output_format == OutputFormat.JSON:
        return render_json(report)
    if output_format == OutputFormat.TABLE:
        return render_table(report)
    return render_csv(report)
