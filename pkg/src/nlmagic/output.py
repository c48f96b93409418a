"""Table writers: CSV with a ``#`` metadata header, or one JSON document."""
import datetime
import json
import math
import os
import sys

from . import __version__


def timestamp():
    """UTC time, or ``SOURCE_DATE_EPOCH`` when set (reproducible outputs)."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        when = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    else:
        when = datetime.datetime.now(tz=datetime.timezone.utc)
    return when.replace(microsecond=0).isoformat()


def metadata(command, config, seed, **extra):
    meta = {
        "version": __version__,
        "command": command,
        "config": config,
        "seed": seed,
        "timestamp": timestamp(),
    }
    meta.update(extra)
    return meta


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, ".17g")
    if hasattr(v, "item"):
        return _fmt(v.item())
    return str(v)


def _jsonable(v):
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def format_csv(meta, columns, rows):
    lines = []
    for key, val in meta.items():
        text = json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val
        lines.append(f"# {key}: {text}")
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def format_json(meta, columns, rows):
    doc = {"meta": meta, "columns": list(columns),
           "rows": [[_jsonable(v) for v in row] for row in rows]}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def write_table(path, meta, columns, rows, as_json=False):
    text = (format_json if as_json else format_csv)(meta, columns, rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def read_csv(path):
    """Parse a file written by :func:`write_table` into ``(meta, columns, rows)``."""
    meta, columns, rows = {}, None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, val = line[2:].partition(": ")
                try:
                    meta[key] = json.loads(val)
                except json.JSONDecodeError:
                    meta[key] = val
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append(line.split(","))
    return meta, columns, rows
