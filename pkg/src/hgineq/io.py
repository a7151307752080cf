"""Report serialization: versioned JSON documents and flat CSV tables.

JSON round-trips losslessly (``reports -> document -> reports``); CSV is
a lossy flat view with one row per report.  Documents are deterministic
byte-for-byte unless a timestamp is explicitly requested.
"""

from __future__ import annotations

import csv
import io as _io
import json
from datetime import datetime, timezone

from .errors import ConfigError
from .reports import InequalityReport

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "id",
    "group",
    "norm",
    "p",
    "alpha",
    "beta",
    "k",
    "m",
    "lhs",
    "rhs",
    "ratio",
    "margin",
    "satisfied",
)


def report_to_dict(report):
    return _jsonable({
        "check_id": report.check_id,
        "group": report.group,
        "norm": report.norm,
        "field_id": report.field_id,
        "kind": report.kind,
        "params": dict(report.params),
        "constant": report.constant,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "ratio": report.ratio,
        "margin": report.margin,
        "satisfied": report.satisfied,
        "trivial": report.trivial,
        "config_digest": report.config_digest,
        "detail": report.detail,
    })


def report_from_dict(data):
    return InequalityReport(
        check_id=data["check_id"],
        group=data["group"],
        norm=data["norm"],
        field_id=data["field_id"],
        kind=data["kind"],
        params=dict(data["params"]),
        constant=data["constant"],
        lhs=data["lhs"],
        rhs=data["rhs"],
        margin=data["margin"],
        satisfied=data["satisfied"],
        trivial=data.get("trivial", False),
        config_digest=data.get("config_digest", ""),
        detail=data.get("detail", {}),
    )


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def reports_document(reports, meta=None, timestamp=False):
    """Assemble the versioned JSON document for a list of reports."""
    doc = {"schema": SCHEMA_VERSION, "reports": [report_to_dict(r) for r in reports]}
    if meta:
        doc["meta"] = _jsonable(dict(meta))
    if timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat()
    return doc


def document_reports(doc):
    """Inverse of :func:`reports_document` (ignores meta/timestamp)."""
    if doc.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported report schema {doc.get('schema')!r}")
    return [report_from_dict(d) for d in doc["reports"]]


def render_json(reports, meta=None, timestamp=False):
    return json.dumps(reports_document(reports, meta, timestamp), indent=2, sort_keys=True) + "\n"


def render_csv(reports):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        p = r.params
        writer.writerow(
            [
                r.check_id,
                r.group,
                r.norm,
                _num(p.get("p")),
                _num(p.get("alpha")),
                _num(p.get("beta")),
                _num(p.get("k")),
                _num(p.get("m")),
                repr(r.lhs),
                repr(r.rhs),
                repr(r.ratio),
                repr(r.margin),
                "true" if r.satisfied else "false",
            ]
        )
    return buf.getvalue()


def _num(v):
    if v is None:
        return ""
    return repr(float(v)) if isinstance(v, float) else repr(v)


def write_reports(reports, path=None, fmt="json", meta=None, timestamp=False,
                  allow_empty=False):
    """Serialize reports, optionally writing to ``path``; returns the text.

    Refuses to emit an empty report list unless ``allow_empty`` is set —
    an empty verification run is almost always a configuration mistake.
    """
    if not reports and not allow_empty:
        raise ConfigError("no reports generated (pass allow_empty to permit this)")
    if fmt == "json":
        text = render_json(reports, meta=meta, timestamp=timestamp)
    elif fmt == "csv":
        text = render_csv(reports)
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def load_config_file(path):
    """Read a JSON run-configuration file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed config JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must contain a JSON object")
    return data
