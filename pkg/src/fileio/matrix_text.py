"""
Dense matrix text format.

One matrix row per line, entries separated by whitespace (commas are
accepted too). Lines starting with '#' and blank lines are skipped. The
tokens "-inf" and "inf" stand for the infinities. Floats are written with
17 significant digits so a written matrix reads back bit-identically.
"""
import logging
import os
from typing import List, Union

import numpy as np

from utils.error_handlers import ParseError

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]

_INFINITY_TOKENS = {"-inf": -np.inf, "inf": np.inf, "+inf": np.inf}


def format_float(value: float) -> str:
    """Canonical text of a float: "-inf"/"inf" or 17 significant digits."""
    value = float(value)
    if np.isneginf(value):
        return "-inf"
    if np.isposinf(value):
        return "inf"
    return format(value, ".17g")


def parse_token(token: str, where: str = "") -> float:
    """
    Parse one numeric token.

    Raises:
        ParseError: On anything that is not a float or an infinity token.
    """
    lowered = token.strip().lower()
    if lowered in _INFINITY_TOKENS:
        return _INFINITY_TOKENS[lowered]
    try:
        value = float(lowered)
    except ValueError:
        raise ParseError(f"malformed number {token!r}", details=where or None)
    if np.isnan(value):
        raise ParseError(f"NaN is not a valid entry ({token!r})", details=where or None)
    return value


def _content_lines(text: str):
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, stripped


def parse_matrix(text: str, source: str = "<string>") -> np.ndarray:
    """
    Parse the dense text format into a 2-D float array.

    Raises:
        ParseError: On malformed tokens, ragged rows or an empty matrix.
    """
    rows: List[List[float]] = []
    for number, line in _content_lines(text):
        tokens = line.replace(",", " ").split()
        rows.append([parse_token(token, f"{source}:{number}") for token in tokens])
    if not rows:
        raise ParseError("no matrix rows found", details=source)
    width = len(rows[0])
    for index, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"ragged matrix: row {index + 1} has {len(row)} entries, expected {width}",
                details=source,
            )
    return np.array(rows, dtype=float)


def read_text(path: PathLike) -> str:
    """
    Read a UTF-8 text file.

    Raises:
        ParseError: If the bytes are not valid UTF-8.
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            return f.read()
        except UnicodeDecodeError as e:
            raise ParseError("file is not UTF-8 text", details=f"{path}: {e.reason} at byte {e.start}") from e


def read_matrix(path: PathLike) -> np.ndarray:
    """Read a matrix file."""
    matrix = parse_matrix(read_text(path), str(path))
    logger.debug(f"read {matrix.shape[0]}x{matrix.shape[1]} matrix from {path}")
    return matrix


def read_vector(path: PathLike) -> np.ndarray:
    """
    Read a vector file: either one row or one column in the matrix format.

    Raises:
        ParseError: If the file holds a proper 2-D matrix.
    """
    matrix = read_matrix(path)
    if matrix.shape[0] != 1 and matrix.shape[1] != 1:
        raise ParseError(f"expected a vector, got a {matrix.shape[0]}x{matrix.shape[1]} matrix", details=str(path))
    return matrix.reshape(-1)


def format_matrix(matrix: np.ndarray) -> str:
    """Text of a matrix in the dense format, newline terminated."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    return "".join(" ".join(format_float(v) for v in row) + "\n" for row in matrix)


def write_matrix(path: PathLike, matrix: np.ndarray, header: str = "") -> None:
    """Write a matrix file, with an optional '#' header line."""
    with open(path, "w", encoding="utf-8") as f:
        if header:
            f.write(f"# {header}\n")
        f.write(format_matrix(matrix))
    logger.debug(f"wrote matrix to {path}")
