"""Schema-versioned JSON envelopes and CSV/JSON sweep records.

Floats are written with ``repr``, the shortest string that parses back to the
same double, so every dump -> load -> dump cycle is byte-identical. NaN (only
used by failed sweep cells) is written as JSON ``null`` and as ``nan`` in CSV.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

from .model import Deployment
from .optimize import OptimizeResult
from .stability import StabilityReport, SustainableRange
from .sweep import RECORD_FIELDS, SweepCell, SweepConfig, SweepSurface, surface_to_records

SCHEMA_VERSION = 1

_KINDS: dict[type, str] = {
    Deployment: "deployment",
    StabilityReport: "stability_report",
    SustainableRange: "sustainable_range",
    OptimizeResult: "optimize_result",
    SweepSurface: "sweep_surface",
}

Record = tuple[float, float, float, float, str]


def _num(x: float | None) -> float | None:
    if x is None or math.isnan(x):
        return None
    return float(x)


def _unnum(x: float | None) -> float:
    return math.nan if x is None else float(x)


def _payload(obj: Any) -> dict[str, Any]:
    if isinstance(obj, Deployment):
        return {"g_h": obj.g_h, "g_c": obj.g_c}
    if isinstance(obj, StabilityReport):
        return {
            "delta_h": obj.delta_h,
            "delta_c": obj.delta_c,
            "delta_min": obj.delta_min,
            "binding_player": obj.binding_player,
        }
    if isinstance(obj, SustainableRange):
        return {
            "lower": obj.lower,
            "upper": obj.upper,
            "shrink": obj.shrink,
            "raw_lower": obj.raw_lower,
            "raw_upper": obj.raw_upper,
        }
    if isinstance(obj, OptimizeResult):
        return {
            "minimizer": obj.minimizer,
            "objective": obj.objective,
            "evaluations": obj.evaluations,
        }
    if isinstance(obj, SweepSurface):
        cfg = obj.config
        return {
            "config": {
                "y_h_values": list(cfg.y_h_values),
                "y_c_values": list(cfg.y_c_values),
                "z": cfg.z,
                "tol": cfg.tol,
                "shrink": cfg.shrink,
            },
            "records": records_to_dicts(surface_to_records(obj)),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Serialize a result object to a versioned JSON envelope."""
    kind = _KINDS.get(type(obj))
    if kind is None:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    envelope = {"schema": f"geogame.{kind}", "version": SCHEMA_VERSION, **_payload(obj)}
    return json.dumps(envelope, indent=2, allow_nan=False) + "\n"


def loads(text: str) -> Any:
    """Inverse of :func:`dumps`."""
    data = json.loads(text)
    schema = data.pop("schema")
    version = data.pop("version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {version!r}")
    kind = schema.removeprefix("geogame.")
    if kind == "deployment":
        return Deployment(**data)
    if kind == "stability_report":
        return StabilityReport(**data)
    if kind == "sustainable_range":
        return SustainableRange(**data)
    if kind == "optimize_result":
        return OptimizeResult(**data)
    if kind == "sweep_surface":
        cfg = SweepConfig(**data["config"])
        cells = [SweepCell(*rec) for rec in records_from_dicts(data["records"])]
        n = len(cfg.y_c_values)
        rows = tuple(tuple(cells[i : i + n]) for i in range(0, len(cells), n))
        return SweepSurface(config=cfg, cells=rows)
    raise ValueError(f"unknown schema {schema!r}")


def records_to_dicts(records: list[Record]) -> list[dict[str, Any]]:
    return [
        {
            "y_star_h": _num(yh),
            "y_star_c": _num(yc),
            "y_tilde_opt": _num(yt),
            "delta_min_opt": _num(dm),
            "status": status,
        }
        for yh, yc, yt, dm, status in records
    ]


def records_from_dicts(items: list[dict[str, Any]]) -> list[Record]:
    return [
        (
            _unnum(d["y_star_h"]),
            _unnum(d["y_star_c"]),
            _unnum(d["y_tilde_opt"]),
            _unnum(d["delta_min_opt"]),
            d["status"],
        )
        for d in items
    ]


def records_to_json(records: list[Record]) -> str:
    return json.dumps(records_to_dicts(records), indent=2, allow_nan=False) + "\n"


def records_from_json(text: str) -> list[Record]:
    return records_from_dicts(json.loads(text))


def records_to_csv(records: list[Record]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for yh, yc, yt, dm, status in records:
        writer.writerow([repr(float(yh)), repr(float(yc)), repr(float(yt)), repr(float(dm)), status])
    return buf.getvalue()


def records_from_csv(text: str) -> list[Record]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != RECORD_FIELDS:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [(float(yh), float(yc), float(yt), float(dm), status) for yh, yc, yt, dm, status in reader]
