"""CSV schemas: points.csv (x,y), lines.csv (a,b), curves.csv (family,u,v,branch).

Integers are written without a decimal point and floats with 17 significant
digits, so every file round-trips losslessly.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, TextIO

from .arrangements import IntArrangement
from .curves import CurveFamily, CurveTranslate


class CsvFormatError(ValueError):
    def __init__(self, source: str, lineno: int, message: str):
        super().__init__(f"{source}:{lineno}: {message}")
        self.lineno = lineno


def fmt(v) -> str:
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def _write(path_or_file, header: str, rows: Iterable[Iterable]) -> None:
    lines = [header] + [",".join(fmt(v) if not isinstance(v, str) else v for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if isinstance(path_or_file, (str, Path)):
        with open(path_or_file, "w", newline="") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)


def write_points(target, points) -> None:
    _write(target, "x,y", points)


def write_lines(target, lines) -> None:
    _write(target, "a,b", lines)


def write_curves(target, curves: Iterable[CurveTranslate]) -> None:
    _write(target, "family,u,v,branch", ((str(c.family), c.u, c.v, c.branch) for c in curves))


def _parse_int(text: str, source: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise CsvFormatError(source, lineno, f"expected an integer, got {text!r}") from None


def _parse_float(text: str, source: str, lineno: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise CsvFormatError(source, lineno, f"expected a number, got {text!r}") from None


def _rows(path, header: list[str]):
    source = str(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first is None or [h.strip() for h in first] != header:
            raise CsvFormatError(source, 1, f"expected header {','.join(header)}")
        for row in reader:
            lineno = reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise CsvFormatError(source, lineno, f"expected {len(header)} fields, got {len(row)}")
            yield lineno, [f.strip() for f in row]


def read_int_pairs(path, header: list[str]) -> list[tuple[int, int]]:
    return [tuple(_parse_int(f, str(path), ln) for f in row) for ln, row in _rows(path, header)]


def read_arrangement(points_csv, lines_csv) -> IntArrangement:
    return IntArrangement(read_int_pairs(points_csv, ["x", "y"]), read_int_pairs(lines_csv, ["a", "b"]))


def read_curves(path) -> list[CurveTranslate]:
    out = []
    for ln, (fam, u, v, branch) in _rows(path, ["family", "u", "v", "branch"]):
        try:
            family = CurveFamily.parse(fam)
        except ValueError as exc:
            raise CsvFormatError(str(path), ln, str(exc)) from None
        out.append(CurveTranslate(family, _parse_float(u, str(path), ln), _parse_float(v, str(path), ln),
                                  _parse_int(branch, str(path), ln)))
    return out


def read_series(fh: TextIO, source: str = "<input>") -> list[list[tuple[float, float]]]:
    """Point series from "x,y" rows.

    A comment line (starting with '#') or a blank line ends the current
    series; "x,y" header rows are skipped.
    """
    series: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if current:
                series.append(current)
                current = []
            continue
        fields = [f.strip() for f in line.split(",")]
        if fields == ["x", "y"]:
            continue
        if len(fields) != 2:
            raise CsvFormatError(source, lineno, f"expected 'x,y', got {line!r}")
        current.append((_parse_float(fields[0], source, lineno), _parse_float(fields[1], source, lineno)))
    if current:
        series.append(current)
    return series


def dumps_points(points) -> str:
    buf = io.StringIO()
    write_points(buf, points)
    return buf.getvalue()
