"""File I/O: sample batches and distribution parameter records.

Sample files are either plain text (one nonnegative decimal per line; blank
lines and ``#`` comments ignored) or CSV with a header row and a named
column.  Parameter records are JSON objects with a ``family`` key plus the
family's parameters, e.g. ``{"family": "eme", "n": 2, "lambda": 1.0, "w": 3.0}``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .distributions import (
    EME,
    Erlang,
    Exponential,
    Hypoexponential,
    Sample,
    family_name,
    make_distribution,
)
from .errors import DataError, ParameterError


def read_samples(path, column=None):
    """Read a sample batch from ``path``.

    With ``column`` the file is parsed as CSV with a header row; otherwise as
    one value per line.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if column is not None:
        values = []
        reader = csv.DictReader(text.splitlines())
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise DataError(
                f"{path} has no column {column!r} (found {reader.fieldnames})"
            )
        for row in reader:
            cell = (row[column] or "").strip()
            if cell:
                values.append(_parse_value(cell, path))
        return Sample(np.asarray(values), label=f"{path}:{column}")
    values = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            values.append(_parse_value(line, path))
    return Sample(np.asarray(values), label=str(path))


def _parse_value(token, path):
    try:
        return float(token)
    except ValueError as exc:
        raise DataError(f"{path}: not a decimal value: {token!r}") from exc


def write_samples(path, data):
    """Write a batch as plain text, one value per line (round-trip exact)."""
    values = np.asarray(getattr(data, "values", data), dtype=float)
    Path(path).write_text("".join(f"{v:.17g}\n" for v in values))


def dist_to_dict(dist):
    """Self-describing parameter record for a distribution."""
    family = family_name(dist)
    if isinstance(dist, Exponential):
        return {"family": family, "lambda": dist.rate}
    if isinstance(dist, Erlang):
        return {"family": family, "n": dist.n, "lambda": dist.rate}
    if isinstance(dist, Hypoexponential):
        return {"family": family, "rates": list(dist.rates)}
    if isinstance(dist, EME):
        return {"family": family, "n": dist.n, "lambda": dist.rate, "w": dist.w}
    raise ParameterError(f"not a distribution: {dist!r}")


def dist_from_dict(record):
    """Inverse of :func:`dist_to_dict`."""
    if "family" not in record:
        raise ParameterError("parameter record is missing the 'family' key")
    params = {k: v for k, v in record.items() if k != "family"}
    if "lambda" in params:
        params["rate"] = params.pop("lambda")
    if "n" in params:
        params["n"] = int(params["n"])
    return make_distribution(record["family"], **params)


def save_dist(path, dist):
    Path(path).write_text(json.dumps(dist_to_dict(dist), indent=2) + "\n")


def load_dist(path):
    try:
        record = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot load parameters from {path}: {exc}") from exc
    return dist_from_dict(record)
