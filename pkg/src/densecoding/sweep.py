"""Parameter grids, sweep tables and their CSV/JSON serialization."""

import csv
import json
import math

import numpy as np

from .channels import ChannelKind, check_unit_interval
from .estimator import CapacityTransformer
from .exceptions import ParameterError
from .protection import STRENGTH_CAP

COLUMNS = (
    "channel",
    "alpha",
    "lambda",
    "mu",
    "m",
    "n",
    "chi",
    "entropy_avg",
    "entropy_state",
    "success_prob",
)
DEFAULT_MUS = (0.0, 0.25, 0.5, 0.75, 1.0)


def grid_points(start, stop, step, upper=1.0):
    """``start, start + step, ...`` up to ``stop``, always ending on ``stop``.

    Points are rounded to 12 decimals so that e.g. ``0.01 * 37`` prints as
    ``0.37``. When ``stop`` is not a whole number of steps from ``start``
    the final step is shortened to land on it.
    """
    start, stop, step = float(start), float(stop), float(step)
    if not step > 0:
        raise ParameterError(f"grid step must be positive, got {step}")
    if start > stop:
        raise ParameterError(f"grid start {start} exceeds stop {stop}")
    if start < 0.0 or stop > upper:
        raise ParameterError(f"grid [{start}, {stop}] leaves [0, {upper}]")
    count = int(math.floor((stop - start) / step + 1e-9))
    points = [round(start + k * step, 12) for k in range(count + 1)]
    points = [p for p in points if p <= stop]
    if stop - points[-1] > 1e-12:
        points.append(stop)
    return points


def _row(kind, alpha, lam, mu, m, n, values):
    chi, s_avg, s_rho, t = values
    return {
        "channel": kind.value,
        "alpha": alpha,
        "lambda": lam,
        "mu": mu,
        "m": m,
        "n": n,
        "chi": chi,
        "entropy_avg": s_avg,
        "entropy_state": s_rho,
        "success_prob": t,
    }


def sweep_rows(channel, lambdas, mus=DEFAULT_MUS, alpha=math.sqrt(0.5), m=None, n=None, threads=None):
    """One row per ``(mu, lambda)`` pair, ordered by ``mu`` then ``lambda``."""
    kind = ChannelKind.parse(channel)
    check_unit_interval("alpha", alpha)
    for v in list(lambdas) + list(mus):
        check_unit_interval("grid value", v)
    pairs = [(lam, mu) for mu in mus for lam in lambdas]
    if not pairs:
        return []
    est = CapacityTransformer(channel=kind.value, alpha=alpha, m=m, n=n, n_jobs=threads)
    values = est.fit_transform(np.asarray(pairs, dtype=float))
    protected = m is not None or n is not None
    m_out = float(m or 0.0) if protected else None
    n_out = float(n or 0.0) if protected else None
    return [
        _row(kind, alpha, lam, mu, m_out, n_out, vals) for (lam, mu), vals in zip(pairs, values)
    ]


def surface_rows(channel, lam, mu, m_values, n_values, alpha=math.sqrt(0.5), threads=None):
    """One row per ``(m, n)`` cell, ordered by ``m`` then ``n``."""
    kind = ChannelKind.parse(channel)
    for v in list(m_values) + list(n_values):
        if not 0.0 <= v <= STRENGTH_CAP:
            raise ParameterError(f"strength {v} leaves [0, {STRENGTH_CAP}]")
    cells = [(lam, mu, m, n) for m in m_values for n in n_values]
    if not cells:
        return []
    est = CapacityTransformer(channel=kind.value, alpha=alpha, n_jobs=threads)
    values = est.fit_transform(np.asarray(cells, dtype=float))
    return [_row(kind, alpha, lam, mu, m, n, vals) for (_, _, m, n), vals in zip(cells, values)]


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{float(value):.10g}"


def write_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in COLUMNS])


def write_json(rows, fh):
    """Array of flat objects with the CSV columns; values at CSV precision."""
    out = []
    for row in rows:
        rec = {}
        for c in COLUMNS:
            v = row[c]
            rec[c] = v if v is None or isinstance(v, str) else float(format_value(v))
        out.append(rec)
    json.dump(out, fh, indent=1)
    fh.write("\n")


def read_csv(fh):
    """Parse a table written by :func:`write_csv` back into row dicts."""
    rows = []
    for rec in csv.DictReader(fh):
        row = {"channel": rec["channel"]}
        for c in COLUMNS[1:]:
            row[c] = float(rec[c]) if rec[c] != "" else None
        rows.append(row)
    return rows
