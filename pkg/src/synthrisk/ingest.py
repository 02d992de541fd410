"""CSV ingestion into typed, immutable column tables.

Every cell is one of: a category label, a numeric value, a special
not-applicable code (e.g. ``-8`` for "not applicable" income), or missing.
Each column also carries the categorical *label* of every cell, which is
what the tabulation layer works with.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DataError

CATEGORICAL = "categorical"
NUMERIC = "numeric"

MISSING_LABEL = "NA"
DEFAULT_MISSING_TOKENS = ("", "NA")

# cell states
VALUE = 0
CODE = 1
MISSING = 2

_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def format_number(value: float) -> str:
    """Shortest text for a number; integral values lose the trailing ``.0``."""
    value = float(value)
    if math.isfinite(value) and value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def is_number(token: str) -> bool:
    return _NUMBER_RE.fullmatch(token) is not None


@dataclass(frozen=True)
class Code:
    """A special numeric code cell, kept apart from ordinary values."""

    value: float

    def __str__(self) -> str:
        return format_number(self.value)


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: str = CATEGORICAL
    na_codes: tuple[float, ...] = ()
    missing_tokens: tuple[str, ...] = DEFAULT_MISSING_TOKENS

    def __post_init__(self):
        if self.kind not in (CATEGORICAL, NUMERIC):
            raise ValueError(f"column {self.name!r}: unknown kind {self.kind!r}")
        if self.na_codes and self.kind != NUMERIC:
            raise ValueError(f"column {self.name!r}: na_codes are only allowed on numeric columns")
        object.__setattr__(self, "na_codes", tuple(float(c) for c in self.na_codes))
        object.__setattr__(self, "missing_tokens", tuple(self.missing_tokens))


@dataclass(frozen=True, eq=False)
class Column:
    """One column: per-cell labels and states, plus numbers for numeric columns."""

    schema: ColumnSchema
    labels: np.ndarray
    state: np.ndarray
    values: np.ndarray | None = None

    @property
    def name(self) -> str:
        return self.schema.name

    @property
    def kind(self) -> str:
        return self.schema.kind

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def missing(self) -> np.ndarray:
        return self.state == MISSING

    @property
    def registry(self) -> list[str]:
        """Sorted distinct labels of the non-missing cells."""
        return sorted(set(self.labels[self.state != MISSING].tolist()))

    def cell(self, i: int):
        st = self.state[i]
        if st == MISSING:
            return None
        if self.kind == NUMERIC:
            return Code(float(self.labels[i])) if st == CODE else float(self.values[i])
        return self.labels[i]

    def cells(self) -> list:
        return [self.cell(i) for i in range(len(self))]

    def take(self, idx: np.ndarray) -> Column:
        values = None if self.values is None else self.values[idx]
        return Column(self.schema, self.labels[idx], self.state[idx], values)

    def equals(self, other: Column) -> bool:
        if self.schema != other.schema or len(self) != len(other):
            return False
        if not (np.array_equal(self.state, other.state) and np.array_equal(self.labels, other.labels)):
            return False
        if self.values is None or other.values is None:
            return self.values is other.values
        return np.array_equal(self.values, other.values, equal_nan=True)


@dataclass(frozen=True, eq=False)
class ColumnTable:
    columns: tuple[Column, ...]
    n_rows: int

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise DataError(f"duplicate column names: {dup}")
        for c in self.columns:
            if len(c) != self.n_rows:
                raise DataError(f"column {c.name!r} has {len(c)} cells, expected {self.n_rows}")

    @property
    def schema(self) -> list[ColumnSchema]:
        return [c.schema for c in self.columns]

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def __getitem__(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(name)

    def take(self, idx) -> ColumnTable:
        idx = np.asarray(idx, dtype=np.intp)
        return ColumnTable(tuple(c.take(idx) for c in self.columns), len(idx))

    def with_column(self, column: Column) -> ColumnTable:
        cols = tuple(column if c.name == column.name else c for c in self.columns)
        return ColumnTable(cols, self.n_rows)

    def equals(self, other: ColumnTable) -> bool:
        return (
            self.n_rows == other.n_rows
            and self.names == other.names
            and all(a.equals(b) for a, b in zip(self.columns, other.columns))
        )

    @classmethod
    def from_rows(
        cls,
        names: Sequence[str],
        rows: Iterable[Sequence],
        schema_hints: Iterable[ColumnSchema] | None = None,
    ) -> ColumnTable:
        """Build a table from in-memory rows. ``None`` cells are missing."""
        rows = [["" if v is None else (format_number(v) if isinstance(v, float) else str(v)) for v in r]
                for r in rows]
        return _build(list(names), rows, _hint_map(schema_hints), source="<rows>")


@dataclass(frozen=True, eq=False)
class SyntheticSet:
    replicates: tuple[ColumnTable, ...]

    def __post_init__(self):
        if not self.replicates:
            raise DataError("a synthetic set needs at least one replicate")
        first = self.replicates[0]
        for i, rep in enumerate(self.replicates[1:], start=2):
            if rep.names != first.names or [c.kind for c in rep.columns] != [c.kind for c in first.columns]:
                raise DataError(f"replicate {i} does not share the schema of replicate 1")
        object.__setattr__(self, "replicates", tuple(self.replicates))

    @property
    def m(self) -> int:
        return len(self.replicates)

    def __iter__(self):
        return iter(self.replicates)

    def __len__(self) -> int:
        return self.m

    def __getitem__(self, i: int) -> ColumnTable:
        return self.replicates[i]


def _hint_map(hints) -> dict[str, ColumnSchema]:
    if hints is None:
        return {}
    if isinstance(hints, Mapping):
        return dict(hints)
    return {h.name: h for h in hints}


def _parse_column(name: str, tokens: list[str], hint: ColumnSchema | None,
                  missing_tokens: tuple[str, ...], source: str) -> Column:
    if hint is not None:
        missing_tokens = hint.missing_tokens
    missing_set = set(missing_tokens)
    n = len(tokens)
    uniq: dict[str, int] = {}
    inv = np.empty(n, dtype=np.intp)
    for i, tok in enumerate(tokens):
        j = uniq.get(tok)
        if j is None:
            j = uniq[tok] = len(uniq)
        inv[i] = j
    distinct = list(uniq)
    is_missing = np.array([t in missing_set for t in distinct], dtype=bool)

    if hint is not None:
        kind = hint.kind
    else:
        present = [t for t, m in zip(distinct, is_missing) if not m]
        kind = NUMERIC if present and all(is_number(t) for t in present) else CATEGORICAL
    schema = hint if hint is not None else ColumnSchema(name, kind, missing_tokens=missing_tokens)

    if kind == CATEGORICAL:
        labels_u = np.array([MISSING_LABEL if m else t for t, m in zip(distinct, is_missing)], dtype=object)
        state_u = np.where(is_missing, MISSING, VALUE).astype(np.int8)
        return Column(schema, labels_u[inv], state_u[inv])

    codes = set(schema.na_codes)
    labels_u = np.empty(len(distinct), dtype=object)
    state_u = np.empty(len(distinct), dtype=np.int8)
    values_u = np.full(len(distinct), np.nan)
    for j, tok in enumerate(distinct):
        if is_missing[j]:
            labels_u[j], state_u[j] = MISSING_LABEL, MISSING
            continue
        if not is_number(tok):
            row = int(np.argmax(inv == j)) + 2
            raise DataError(f"{source}: row {row}, column {name!r}: {tok!r} is not numeric")
        v = float(tok)
        if v in codes:
            labels_u[j], state_u[j] = format_number(v), CODE
        else:
            labels_u[j], state_u[j], values_u[j] = format_number(v), VALUE, v
    return Column(schema, labels_u[inv], state_u[inv], values_u[inv])


def _build(header: list[str], rows: list[list[str]], hints: dict[str, ColumnSchema], source: str,
           missing_tokens: tuple[str, ...] = DEFAULT_MISSING_TOKENS, strict: bool = True) -> ColumnTable:
    if len(set(header)) != len(header):
        dup = sorted({h for h in header if header.count(h) > 1})
        raise DataError(f"{source}: duplicate column names in header: {dup}")
    if strict:
        unknown = [h for h in hints if h not in header]
        if unknown:
            raise DataError(f"{source}: schema names columns not in header: {unknown}")
    ncol = len(header)
    for i, r in enumerate(rows):
        if len(r) != ncol:
            raise DataError(f"{source}: row {i + 2} has {len(r)} fields, expected {ncol} (ragged row)")
    columns = []
    for j, name in enumerate(header):
        tokens = [r[j].strip() for r in rows]
        columns.append(_parse_column(name, tokens, hints.get(name), missing_tokens, source))
    return ColumnTable(tuple(columns), len(rows))


def read_header(path: str | Path, delimiter: str = ",") -> list[str]:
    with open(path, newline="", encoding="utf-8") as fh:
        return next(csv.reader(fh, delimiter=delimiter), [])


def load_table(
    path: str | Path,
    schema_hints: Iterable[ColumnSchema] | Mapping[str, ColumnSchema] | None = None,
    *,
    delimiter: str = ",",
    missing_tokens: Sequence[str] = DEFAULT_MISSING_TOKENS,
    strict: bool = True,
) -> ColumnTable:
    """Load a CSV file with a header row.

    Columns without a hint are numeric when every non-missing cell parses as
    a number, categorical otherwise. With ``strict=False`` hints naming
    columns absent from the file are ignored.
    """
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh, delimiter=delimiter)
            header = next(reader, None)
            if header is None:
                raise DataError(f"{path}: empty file, expected a header row")
            rows = [r if r else [""] for r in reader]
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from exc
    except csv.Error as exc:
        raise DataError(f"{path}: malformed CSV: {exc}") from exc
    return _build([h.strip() for h in header], rows, _hint_map(schema_hints), str(path),
                  tuple(missing_tokens), strict=strict)


def load_synthetic_set(
    paths: Sequence[str | Path],
    schema: Iterable[ColumnSchema] | None = None,
    **kwargs,
) -> SyntheticSet:
    if not paths:
        raise DataError("at least one synthetic data file is required")
    hints = _hint_map(schema)
    reps = []
    for p in paths:
        rep = load_table(p, hints, strict=False, **kwargs)
        if reps and rep.names != reps[0].names:
            diff = sorted(set(rep.names) ^ set(reps[0].names)) or rep.names
            raise DataError(f"{p}: columns differ from {paths[0]}: {diff}")
        reps.append(rep)
    return SyntheticSet(tuple(reps))


def write_table(table: ColumnTable, path: str | Path, *, delimiter: str = ",") -> None:
    """Write a table as CSV; missing cells become empty fields."""
    cols = []
    for c in table.columns:
        cols.append(np.where(c.state == MISSING, "", c.labels).tolist())
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow(table.names)
        w.writerows(zip(*cols))

