"""Reading datasets and matrices from text files, and resolving the mu / sigma arguments.

Files are UTF-8 text with one row per line. Fields are separated by commas
and/or whitespace, lines starting with ``#`` are ignored, and a first row
that does not parse as numbers is taken to be a header.
"""

from __future__ import annotations

import os
import re

import numpy as np

from .errors import DataIOError, DimensionMismatch, EmptyDataset, ParseError, RaggedRows, ValidationError

_SPLIT = re.compile(r"[,\s]+")


def _fields(line: str) -> list[str]:
    return [f for f in _SPLIT.split(line.strip()) if f]


def _parse_row(fields: list[str], lineno: int) -> list[float]:
    row = []
    for f in fields:
        try:
            row.append(float(f))
        except ValueError:
            raise ParseError(f"cannot parse {f!r} as a number", lineno) from None
    return row


def parse_rows(text: str) -> np.ndarray:
    """Parse delimited numeric text into an (n, d) array."""
    rows = []
    width = None
    first = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = _fields(stripped)
        if first:
            first = False
            try:
                row = _parse_row(fields, lineno)
            except ParseError:
                # header row
                continue
        else:
            row = _parse_row(fields, lineno)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRows(f"expected {width} columns, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise EmptyDataset("no data rows")
    return np.array(rows, dtype=float)


def _read_text(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DataIOError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not valid UTF-8") from None


def read_dataset(path) -> np.ndarray:
    """Read an n x d point set."""
    return parse_rows(_read_text(path))


def write_dataset(path, x, header: list[str] | None = None) -> None:
    """Write points comma-separated with enough digits to round-trip exactly."""
    xa = np.atleast_2d(np.asarray(x, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for row in xa:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    """Read a square matrix (d rows of d numbers)."""
    a = read_dataset(path)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{path}: matrix must be square, got {a.shape[0]}x{a.shape[1]}")
    return a


def _inline_numbers(arg: str) -> list[float] | None:
    try:
        return [float(f) for f in _fields(arg)]
    except ValueError:
        return None


def resolve_mu(arg: str | None, x: np.ndarray) -> np.ndarray:
    """Location from a CLI argument: None or "zero", "mean", an inline vector "1,2", or a file."""
    d = x.shape[1]
    if arg is None or arg.strip().lower() in ("zero", "zeros", "origin"):
        return np.zeros(d)
    s = arg.strip()
    if s.lower() == "mean":
        return x.mean(axis=0)
    if os.path.exists(s):
        mu = read_dataset(s).ravel()
    else:
        vals = _inline_numbers(s)
        if vals is None:
            raise ValidationError(f"cannot interpret mu argument {arg!r}")
        mu = np.array(vals)
    if mu.size != d:
        raise DimensionMismatch(f"mu has {mu.size} entries but data have d = {d}")
    return mu


def resolve_sigma(arg: str | None, x: np.ndarray) -> np.ndarray:
    """Scatter matrix from a CLI argument: None or "identity", inline rows "a,b;c,d", or a file."""
    d = x.shape[1]
    if arg is None or arg.strip().lower() in ("identity", "eye", "i"):
        return np.eye(d)
    s = arg.strip()
    if os.path.exists(s):
        sigma = read_matrix(s)
    else:
        rows = [_inline_numbers(r) for r in s.split(";") if r.strip()]
        if not rows or any(r is None for r in rows):
            raise ValidationError(f"cannot interpret sigma argument {arg!r}")
        if any(len(r) != len(rows) for r in rows):
            raise DimensionMismatch(f"inline sigma must be square: {arg!r}")
        sigma = np.array(rows, dtype=float)
    if sigma.shape != (d, d):
        raise DimensionMismatch(f"sigma is {sigma.shape[0]}x{sigma.shape[1]} but data have d = {d}")
    return sigma
