"""
CSV time series and edge lists.

CSV files are comma separated and numeric only; rows starting with '#' are
comments (an optional header goes there). Edge lists hold one "u v [w]" line
per undirected edge with 0-based vertex ids and default weight 1.
"""
import csv
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from fileio.matrix_text import PathLike, format_float, parse_token, read_text
from utils.error_handlers import ParseError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, float]


def read_csv_matrix(path: PathLike) -> np.ndarray:
    """
    Read a numeric CSV file into a 2-D array.

    Raises:
        ParseError: On malformed numbers, ragged rows or an empty file.
    """
    rows: List[List[float]] = []
    for number, record in enumerate(csv.reader(read_text(path).splitlines()), start=1):
        if not record or not "".join(record).strip():
            continue
        if record[0].lstrip().startswith("#"):
            continue
        rows.append([parse_token(cell, f"{path}:{number}") for cell in record])
    if not rows:
        raise ParseError("no data rows found", details=str(path))
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ParseError("ragged CSV rows", details=str(path))
    return np.array(rows, dtype=float)


def write_csv_rows(path: PathLike, rows: Iterable[Sequence], header: Optional[Sequence[str]] = None) -> None:
    """Write rows to a CSV file; floats use the canonical text, other cells str()."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        if header:
            writer.writerow(["# " + str(header[0])] + [str(h) for h in header[1:]])
        for row in rows:
            writer.writerow([format_float(v) if isinstance(v, (float, np.floating)) else str(v) for v in row])


def read_timeseries_csv(path: PathLike) -> np.ndarray:
    """
    Read a time series CSV, one observation vector per row.

    Returns:
        (N+1)×d array, rows in time order.

    Raises:
        ParseError: With fewer than two rows.
    """
    rows = read_csv_matrix(path)
    if rows.shape[0] < 2:
        raise ParseError("a time series needs at least two rows", details=str(path))
    return rows


def write_timeseries_csv(path: PathLike, X: np.ndarray) -> None:
    """Write a d×(N+1) orbit as a CSV with one row per time step."""
    X = np.asarray(X, dtype=float)
    header = [f"x{i}" for i in range(X.shape[0])]
    write_csv_rows(path, (list(map(float, column)) for column in X.T), header)


def parse_edge_list(text: str, source: str = "<string>") -> Tuple[List[Edge], int]:
    """
    Parse "u v [w]" lines.

    Returns:
        (edges, number of vertices), the vertex count being max id + 1.

    Raises:
        ParseError: On malformed lines or negative vertex ids.
    """
    edges: List[Edge] = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.replace(",", " ").split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'u v [w]', got {line.strip()!r}", details=f"{source}:{number}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"vertex ids must be integers: {line.strip()!r}", details=f"{source}:{number}")
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be non-negative", details=f"{source}:{number}")
        weight = parse_token(tokens[2], f"{source}:{number}") if len(tokens) == 3 else 1.0
        edges.append((u, v, weight))
    vertices = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
    return edges, vertices


def read_edge_list(path: PathLike) -> Tuple[List[Edge], int]:
    """Read an edge list file, see parse_edge_list."""
    edges, vertices = parse_edge_list(read_text(path), str(path))
    logger.debug(f"read {len(edges)} edges on {vertices} vertices from {path}")
    return edges, vertices
