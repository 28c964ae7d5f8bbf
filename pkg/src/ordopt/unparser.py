
"""
Serialisation of :class:`~ordopt.record.ResultRecord` lists.

JSON output is one object per line with sorted keys.  CSV output has a single
header row; parameters and extras are flattened into columns, floats are
written with 17 significant digits and missing values are left empty.  Both
formats are independent of the locale.
"""

import csv
import io
import json
from typing import Dict, List, Literal, NoReturn, Sequence

from .record import ResultRecord, Scalar


OutputFormat = Literal["json", "csv"]

__all__ = [
    "OutputFormat",
    "record_to_json",
    "records_to_csv",
    "serialize_records",
]

FIXED_COLUMNS = ("method", "value", "error_estimate", "seed", "log_n")


def _record_object(record: ResultRecord) -> Dict[str, object]:
    ret: Dict[str, object] = {
        "method": record.method,
        "params": dict(record.params),
        "value": record.value,
    }
    if record.error_estimate is not None:
        ret["error_estimate"] = record.error_estimate
    if record.seed is not None:
        ret["seed"] = record.seed
    if record.log_n is not None:
        ret["log_n"] = record.log_n
    for key, value in record.extras.items():
        ret.setdefault(key, value)
    return ret


def record_to_json(record: ResultRecord) -> str:
    return json.dumps(_record_object(record), sort_keys=True, allow_nan=False)


def _format_cell(value: Scalar) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _columns(records: Sequence[ResultRecord]) -> List[str]:
    """Fixed columns, then parameter and extra columns in order of first use."""

    params: List[str] = []
    extras: List[str] = []
    for record in records:
        params.extend(k for k in record.params if k not in params)
        extras.extend(k for k in record.extras if k not in extras)
    columns = ["method"] + params + list(FIXED_COLUMNS[1:])
    return columns + [k for k in extras if k not in columns]


def _row(record: ResultRecord, columns: Sequence[str]) -> List[str]:
    fixed: Dict[str, Scalar] = {
        "method": record.method,
        "value": record.value,
        "error_estimate": record.error_estimate,
        "seed": record.seed,
        "log_n": record.log_n,
    }
    cells: List[str] = []
    for column in columns:
        if column in fixed:
            cells.append(_format_cell(fixed[column]))
        elif column in record.params:
            cells.append(_format_cell(record.params[column]))
        else:
            cells.append(_format_cell(record.extras.get(column)))
    return cells


def records_to_csv(records: Sequence[ResultRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    columns = _columns(records)
    writer.writerow(columns)
    for record in records:
        writer.writerow(_row(record, columns))
    return out.getvalue()


def serialize_records(records: Sequence[ResultRecord], fmt: OutputFormat) -> str:
    if fmt == "json":
        return "".join(record_to_json(r) + "\n" for r in records)
    elif fmt == "csv":
        return records_to_csv(records)
    else:
        _x: NoReturn = fmt
        raise ValueError(f"Unexpected format {fmt!r}.")
