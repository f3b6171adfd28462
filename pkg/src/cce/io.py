"""Readers for point CSV, matrix CSV and route files.

Every error message starts with ``path:line:`` so a bad file can be fixed
without guessing.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import InputError, ValidationError
from .similarity import PointSet, RouteNetwork, SimilarityMatrix


def _rows(path: Path):
    with open(path, newline="") as fh:
        rows = [
            (lineno, [c.strip() for c in row])
            for lineno, row in enumerate(csv.reader(fh), start=1)
            if row and any(c.strip() for c in row)
        ]
    if not rows:
        raise InputError(f"{path}: file is empty")
    return rows


def _parse_float(text: str, path, lineno: int, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"{path}:{lineno}: column {col + 1}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise InputError(f"{path}:{lineno}: column {col + 1}: non-finite value {text!r}")
    return value


def _is_numeric(cells) -> bool:
    try:
        for c in cells:
            float(c)
    except ValueError:
        return False
    return True


def read_points_csv(path, id_column: bool = False) -> tuple[PointSet, list[str] | None]:
    """Read one point per row.

    A first row with any non-numeric coordinate is taken as a header and
    returned as the column names. With ``id_column`` the first column holds
    point identifiers.
    """
    path = Path(path)
    rows = _rows(path)
    header = None
    first = rows[0][1][1:] if id_column else rows[0][1]
    if not _is_numeric(first):
        header = rows[0][1]
        rows = rows[1:]
        if not rows:
            raise InputError(f"{path}: header row but no data")
    skip = 1 if id_column else 0
    width = len(rows[0][1]) - skip
    if width < 1:
        raise InputError(f"{path}:{rows[0][0]}: row has no coordinates")
    ids, points = [], []
    for lineno, cells in rows:
        if len(cells) - skip != width:
            raise InputError(
                f"{path}:{lineno}: expected {width} coordinates, got {len(cells) - skip}"
            )
        if id_column:
            ids.append(cells[0])
        points.append([_parse_float(c, path, lineno, j + skip) for j, c in enumerate(cells[skip:])])
    try:
        return PointSet(np.array(points), tuple(ids)), header
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def read_matrix_csv(path) -> SimilarityMatrix:
    """Read ``n`` rows of ``n`` comma-separated numbers."""
    path = Path(path)
    rows = _rows(path)
    n = len(rows)
    values = []
    for lineno, cells in rows:
        if len(cells) != n:
            raise ValidationError(
                f"{path}:{lineno}: matrix must be square: expected {n} values, got {len(cells)}"
            )
        values.append([_parse_float(c, path, lineno, j) for j, c in enumerate(cells)])
    try:
        return SimilarityMatrix(np.array(values))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc} (row i is data line i + 1)") from None


def read_routes(path) -> RouteNetwork:
    """One route per line as comma-separated station identifiers.

    Blank lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    routes = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            stops = [s.strip() for s in line.split(",")]
            if any(not s for s in stops):
                raise InputError(f"{path}:{lineno}: empty station name")
            if len(stops) < 2:
                raise InputError(f"{path}:{lineno}: a route needs at least 2 stations")
            if len(set(stops)) != len(stops):
                raise InputError(f"{path}:{lineno}: route visits a station more than once")
            routes.append(stops)
    if not routes:
        raise InputError(f"{path}: file is empty")
    return RouteNetwork.from_routes(routes)


def write_matrix_csv(path, S) -> None:
    np.savetxt(path, np.asarray(S), delimiter=",", fmt="%.17g")
