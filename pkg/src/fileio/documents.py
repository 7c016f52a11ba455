"""
JSON result documents.

Standard JSON has no infinities, so ±∞ are written as the strings "-inf" and
"inf". Keys are sorted and floats keep Python's shortest round-trip repr,
which makes identical results byte-identical on disk.
"""
import json
import logging
import sys
from typing import Any, Optional

import numpy as np

from fileio.matrix_text import PathLike

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """Convert numpy values and infinities to plain JSON-compatible objects."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isneginf(value):
            return "-inf"
        if np.isposinf(value):
            return "inf"
        if np.isnan(value):
            return "nan"
        return value
    return value


def dumps_document(document: Any) -> str:
    """Canonical JSON text of a result document."""
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_document(document: Any, path: Optional[PathLike] = None) -> None:
    """Write a result document to path, or to stdout when path is None."""
    text = dumps_document(document)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"result written to {path}")


def from_jsonable(value: Any) -> Any:
    """Inverse of to_jsonable for nested lists of numbers and infinity strings."""
    if isinstance(value, list):
        return [from_jsonable(v) for v in value]
    if value == "-inf":
        return -np.inf
    if value == "inf":
        return np.inf
    return value
