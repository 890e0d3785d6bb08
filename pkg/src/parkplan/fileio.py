"""Plain-text formats: matrix files, scenario files, result CSVs.

Matrix file: first line ``rows cols``, then ``rows`` lines of whitespace
separated numbers, ``cols`` per line.  Blank lines and lines starting with
``#`` are ignored; parse errors name the offending line (and column within
it).  Real values are written with 17 significant digits, so a write/read
round trip is lossless.

Scenario file: sections ``[config]``, ``[vehicles]``, ``[spaces]``.  The
config section holds ``key = value`` pairs including the seed; coordinate
sections hold one ``x y`` pair per line.  Adversarial scenarios carry no
coordinates, just the config, since their matrix is a pure function of it.

Results: CSV with the fixed column order in RESULT_COLUMNS; absent values
(an exact cost that was never computed, say) are empty fields.
"""

from __future__ import annotations

import csv
import dataclasses
import io
from pathlib import Path

import numpy as np

from .assignment import CostMatrix
from .errors import ConfigError, DomainError, FileFormatError
from .scenarios import Scenario, ScenarioConfig, adversarial_matrix

RESULT_COLUMNS = [
    "suite",
    "kind",
    "n_vehicles",
    "n_spaces",
    "lot_size",
    "world_extent",
    "seed",
    "seeds",
    "m",
    "batch_count",
    "cumulative_cost",
    "exact_cost",
    "waste",
    "mean_subset_size",
    "mean_subset_ratio",
    "wall_time_s",
]


def format_number(x: float) -> str:
    """17-significant-digit decimal form; integers come out bare ("209")."""
    return format(float(x), ".17g")


def _content_lines(text: str):
    """(line_number, line) pairs with blanks and # comments skipped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _parse_float(token: str, lineno: int, col: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FileFormatError(
            f"line {lineno}, column {col}: expected a number, got {token!r}"
        ) from None
    if not np.isfinite(value):
        raise FileFormatError(f"line {lineno}, column {col}: {token!r} is not finite")
    return value


def parse_matrix(text: str) -> CostMatrix:
    """Parse matrix-file content into a validated CostMatrix."""
    lines = _content_lines(text)
    try:
        header_no, header = next(lines)
    except StopIteration:
        raise FileFormatError("line 1: empty file, expected a 'rows cols' header") from None
    parts = header.split()
    if len(parts) != 2:
        raise FileFormatError(
            f"line {header_no}: header must be 'rows cols', got {header!r}"
        )
    try:
        n_rows, n_cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise FileFormatError(
            f"line {header_no}: header must be two integers, got {header!r}"
        ) from None
    if n_rows < 1 or n_cols < 1:
        raise FileFormatError(f"line {header_no}: dimensions must be positive")

    entries = np.empty((n_rows, n_cols))
    for i in range(n_rows):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise FileFormatError(
                f"unexpected end of file: expected {n_rows} matrix rows, got {i}"
            ) from None
        tokens = line.split()
        if len(tokens) != n_cols:
            raise FileFormatError(
                f"line {lineno}: expected {n_cols} values, got {len(tokens)}"
            )
        for j, token in enumerate(tokens):
            value = _parse_float(token, lineno, j + 1)
            if value < 0:
                raise FileFormatError(
                    f"line {lineno}, column {j + 1}: negative distance {token!r}"
                )
            entries[i, j] = value
    for lineno, line in lines:
        raise FileFormatError(f"line {lineno}: trailing content after the matrix")
    return CostMatrix(entries)


def read_matrix(path) -> CostMatrix:
    return parse_matrix(Path(path).read_text())


def format_matrix(matrix: CostMatrix) -> str:
    out = [f"{matrix.rows} {matrix.cols}"]
    for row in matrix.entries:
        out.append(" ".join(format_number(x) for x in row))
    return "\n".join(out) + "\n"


def write_matrix(matrix: CostMatrix, path) -> None:
    Path(path).write_text(format_matrix(matrix))


_CONFIG_FIELDS = {
    "kind": str,
    "n_vehicles": int,
    "n_spaces": int,
    "lot_size": int,
    "world_extent": float,
    "seed": int,
}


def format_scenario(scenario: Scenario) -> str:
    cfg = scenario.config
    out = ["[config]"]
    out.append(f"kind = {cfg.kind}")
    out.append(f"n_vehicles = {cfg.n_vehicles}")
    out.append(f"n_spaces = {cfg.n_spaces}")
    out.append(f"lot_size = {cfg.lot_size}")
    out.append(f"world_extent = {format_number(cfg.world_extent)}")
    out.append(f"seed = {cfg.seed}")
    for name, coords in (("vehicles", scenario.vehicle_xy), ("spaces", scenario.space_xy)):
        if coords is None:
            continue
        out.append("")
        out.append(f"[{name}]")
        for x, y in coords:
            out.append(f"{format_number(x)} {format_number(y)}")
    return "\n".join(out) + "\n"


def write_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(format_scenario(scenario))


def parse_scenario(text: str) -> Scenario:
    """Parse scenario-file content back into a Scenario."""
    sections: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    for lineno, line in _content_lines(text):
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name in sections:
                raise FileFormatError(f"line {lineno}: duplicate section [{name}]")
            if name not in ("config", "vehicles", "spaces"):
                raise FileFormatError(f"line {lineno}: unknown section [{name}]")
            current = sections.setdefault(name, [])
            continue
        if current is None:
            raise FileFormatError(f"line {lineno}: content before any section header")
        current.append((lineno, line))

    if "config" not in sections:
        raise FileFormatError("missing [config] section")
    raw: dict[str, str] = {}
    for lineno, line in sections["config"]:
        key, sep, value = line.partition("=")
        if not sep:
            raise FileFormatError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        if key not in _CONFIG_FIELDS:
            raise FileFormatError(f"line {lineno}: unknown config key {key!r}")
        if key in raw:
            raise FileFormatError(f"line {lineno}: duplicate config key {key!r}")
        raw[key] = value.strip()
    missing = [k for k in ("kind", "n_vehicles", "n_spaces") if k not in raw]
    if missing:
        raise FileFormatError(f"[config] is missing keys: {', '.join(missing)}")
    kwargs = {}
    for key, value in raw.items():
        caster = _CONFIG_FIELDS[key]
        try:
            kwargs[key] = caster(value)
        except ValueError:
            raise FileFormatError(
                f"[config] key {key!r}: cannot parse {value!r} as {caster.__name__}"
            ) from None
    try:
        config = ScenarioConfig(**kwargs)
    except ConfigError as exc:
        raise FileFormatError(f"[config]: {exc}") from exc

    if config.kind == "adversarial":
        for name in ("vehicles", "spaces"):
            if name in sections:
                raise FileFormatError(
                    f"adversarial scenarios carry no [{name}] section"
                )
        return Scenario(
            config=config,
            vehicle_xy=None,
            space_xy=None,
            matrix=adversarial_matrix(config.n_spaces),
        )

    coords: dict[str, np.ndarray] = {}
    for name, expected in (("vehicles", config.n_vehicles), ("spaces", config.n_spaces)):
        if name not in sections:
            raise FileFormatError(f"missing [{name}] section")
        body = sections[name]
        if len(body) != expected:
            raise FileFormatError(
                f"[{name}]: expected {expected} coordinate lines, got {len(body)}"
            )
        pts = np.empty((expected, 2))
        for i, (lineno, line) in enumerate(body):
            tokens = line.split()
            if len(tokens) != 2:
                raise FileFormatError(
                    f"line {lineno}: expected 'x y', got {len(tokens)} values"
                )
            pts[i, 0] = _parse_float(tokens[0], lineno, 1)
            pts[i, 1] = _parse_float(tokens[1], lineno, 2)
        coords[name] = pts
    return Scenario(
        config=config, vehicle_xy=coords["vehicles"], space_xy=coords["spaces"], matrix=None
    )


def read_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text())


def _field_str(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def format_records(records) -> str:
    """Render records (dataclasses keyed like RESULT_COLUMNS) as CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULT_COLUMNS)
    for record in records:
        row = dataclasses.asdict(record)
        unknown = set(row) - set(RESULT_COLUMNS)
        if unknown:
            raise DomainError(f"record has fields outside the schema: {sorted(unknown)}")
        writer.writerow([_field_str(row.get(col)) for col in RESULT_COLUMNS])
    return buf.getvalue()


def write_results(records, path) -> None:
    Path(path).write_text(format_records(records))


def read_results(path) -> list[dict[str, str]]:
    """Rows of a results CSV as raw string dicts (callers cast as needed)."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULT_COLUMNS:
            raise FileFormatError(
                f"unexpected results header: {reader.fieldnames}"
            )
        return list(reader)


__all__ = [
    "RESULT_COLUMNS",
    "format_matrix",
    "format_number",
    "format_records",
    "format_scenario",
    "parse_matrix",
    "parse_scenario",
    "read_matrix",
    "read_results",
    "read_scenario",
    "write_matrix",
    "write_results",
    "write_scenario",
]
