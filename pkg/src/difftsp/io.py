"""Instance files: the native JSON layout and a TSPLIB subset.

Native files store the lower triangle of the weight matrix, diagonal
included, one row per line::

    {
      "name": "k4",
      "n": 4,
      "scale": 0,
      "weights": [
        [0],
        [3, 0],
        ...
      ]
    }

``dump_native`` writes exactly this layout, so parsing a file written by it
and dumping again reproduces the same bytes.
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Union

import numpy as np

from .core import Instance
from .errors import MalformedInputError


def _located(msg: str, line: int, col: int) -> MalformedInputError:
    err = MalformedInputError(f"line {line}, column {col}: {msg}")
    err.line, err.column = line, col  # type: ignore[attr-defined]
    return err


def parse_native(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _located(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise _located("top level must be an object", 1, 1)
    for key in ("n", "weights"):
        if key not in doc:
            raise MalformedInputError(f"missing field {key!r}")
    n, rows = doc["n"], doc["weights"]
    name = doc.get("name", "")
    scale = doc.get("scale", 0)
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise MalformedInputError(f"n must be an integer >= 3, got {n!r}")
    if not isinstance(scale, int) or isinstance(scale, bool) or scale < 0:
        raise MalformedInputError(f"scale must be a nonnegative integer, got {scale!r}")
    if not isinstance(name, str):
        raise MalformedInputError("name must be a string")
    if not isinstance(rows, list) or len(rows) != n:
        raise MalformedInputError(f"weights must list {n} rows")
    W = np.zeros((n, n), dtype=object)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != i + 1:
            raise MalformedInputError(f"weights row {i} must have {i + 1} entries")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise MalformedInputError(f"weight ({i},{j}) is not an integer: {x!r}")
            if i == j:
                if x != 0:
                    raise MalformedInputError(f"diagonal entry {i} must be 0")
                continue
            W[i, j] = W[j, i] = x
    return Instance(W, name=name, scale=scale)


def dump_native(inst: Instance) -> str:
    rows = inst.rows
    body = ",\n".join(
        "    [" + ", ".join(str(rows[i][j]) for j in range(i + 1)) + "]" for i in range(inst.n)
    )
    return (
        "{\n"
        f'  "name": {json.dumps(inst.name)},\n'
        f'  "n": {inst.n},\n'
        f'  "scale": {inst.scale},\n'
        '  "weights": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )


_FORMATS = ("FULL_MATRIX", "LOWER_DIAG_ROW")


def parse_tsplib(text: str) -> Instance:
    """Read a symmetric TSP with explicit weights (``FULL_MATRIX`` or ``LOWER_DIAG_ROW``).

    Decimal weights are scaled by the smallest power of ten that makes all of
    them integral; that power is stored as ``scale``.
    """
    header: dict[str, str] = {}
    numbers: list[tuple[str, int, int]] = []
    in_section = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped == "EOF":
            break
        if in_section:
            col = 1
            for tok in line.split():
                col = line.index(tok, col - 1) + 1
                numbers.append((tok, lineno, col))
                col += len(tok)
            continue
        if stripped.startswith("EDGE_WEIGHT_SECTION"):
            in_section = True
            continue
        if ":" not in stripped:
            if stripped.endswith("_SECTION"):
                raise _located(f"unsupported section {stripped}", lineno, 1)
            raise _located(f"expected KEY: VALUE, got {stripped!r}", lineno, 1)
        key, value = stripped.split(":", 1)
        header[key.strip().upper()] = value.strip()
    if header.get("TYPE", "TSP").split()[0] != "TSP":
        raise MalformedInputError(f"only TYPE: TSP is supported, got {header.get('TYPE')}")
    wtype = header.get("EDGE_WEIGHT_TYPE")
    if wtype != "EXPLICIT":
        raise MalformedInputError(f"only EDGE_WEIGHT_TYPE: EXPLICIT is supported, got {wtype}")
    fmt = header.get("EDGE_WEIGHT_FORMAT")
    if fmt not in _FORMATS:
        raise MalformedInputError(f"EDGE_WEIGHT_FORMAT must be one of {_FORMATS}, got {fmt}")
    try:
        n = int(header["DIMENSION"])
    except (KeyError, ValueError):
        raise MalformedInputError("missing or invalid DIMENSION") from None
    if not in_section:
        raise MalformedInputError("missing EDGE_WEIGHT_SECTION")
    want = n * n if fmt == "FULL_MATRIX" else n * (n + 1) // 2
    if len(numbers) != want:
        raise MalformedInputError(f"{fmt} with DIMENSION {n} needs {want} weights, found {len(numbers)}")
    values = []
    scale = 0
    for tok, ln, col in numbers:
        try:
            d = Decimal(tok)
        except InvalidOperation:
            raise _located(f"not a number: {tok!r}", ln, col) from None
        if not d.is_finite():
            raise _located(f"not a finite number: {tok!r}", ln, col)
        exp = d.normalize().as_tuple().exponent
        if isinstance(exp, int) and exp < 0:
            scale = max(scale, -exp)
        values.append(d)
    factor = Decimal(10) ** scale
    ints = [int(d * factor) for d in values]
    W = np.zeros((n, n), dtype=object)
    if fmt == "FULL_MATRIX":
        for idx, x in enumerate(ints):
            W[idx // n, idx % n] = x
    else:
        idx = 0
        for i in range(n):
            for j in range(i + 1):
                W[i, j] = W[j, i] = ints[idx]
                idx += 1
    return Instance(W, name=header.get("NAME", ""), scale=scale)


def dump_tsplib(inst: Instance, fmt: str = "FULL_MATRIX") -> str:
    """TSPLIB text with the integer weights (``scale`` is not undone)."""
    if fmt not in _FORMATS:
        raise MalformedInputError(f"unsupported format {fmt}")
    n = inst.n
    rows = inst.rows
    lines = [
        f"NAME: {inst.name}",
        "TYPE: TSP",
        f"DIMENSION: {n}",
        "EDGE_WEIGHT_TYPE: EXPLICIT",
        f"EDGE_WEIGHT_FORMAT: {fmt}",
        "EDGE_WEIGHT_SECTION",
    ]
    for i in range(n):
        stop = n if fmt == "FULL_MATRIX" else i + 1
        lines.append(" ".join(str(rows[i][j]) for j in range(stop)))
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    """Native JSON if the text starts with ``{``, TSPLIB otherwise."""
    return parse_native(text) if text.lstrip().startswith("{") else parse_tsplib(text)


def read_instance(path: Union[str, Path]) -> Instance:
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError as exc:
        raise MalformedInputError(f"{path}: not a text file ({exc.reason})") from None
    return parse_instance(text)


def write_instance(inst: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_native(inst))
