"""Equal-frequency grouping of numeric key and target columns.

Breaks are quantiles of the pooled ordinary values of the original and all
synthetic replicates, so that every table shares one set of group labels.
Special codes and missing cells keep their own groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DataError
from .ingest import (CATEGORICAL, CODE, MISSING, MISSING_LABEL, NUMERIC, VALUE, Column,
                     ColumnSchema, ColumnTable, SyntheticSet, format_number)


@dataclass(frozen=True)
class GroupingSpec:
    """Requested group counts per key and per target; 0 leaves a column as-is."""

    ngroups_keys: tuple[int, ...] = ()
    ngroups_targets: tuple[int, ...] = ()

    def __post_init__(self):
        for n in (*self.ngroups_keys, *self.ngroups_targets):
            if int(n) != n or n < 0:
                raise ConfigError(f"group counts must be non-negative integers, got {n!r}")
        object.__setattr__(self, "ngroups_keys", tuple(int(n) for n in self.ngroups_keys))
        object.__setattr__(self, "ngroups_targets", tuple(int(n) for n in self.ngroups_targets))


@dataclass(frozen=True)
class BinningResult:
    breaks: tuple[float, ...]
    labels: tuple[str, ...]
    code_labels: tuple[str, ...]
    missing_label: str = MISSING_LABEL

    @property
    def n_bins(self) -> int:
        return len(self.labels)

    def bin_index(self, values: np.ndarray) -> np.ndarray:
        """Bin of each value: half-open ``[lo, hi)``, the last bin closed."""
        inner = np.asarray(self.breaks[1:-1])
        return np.searchsorted(inner, values, side="right")


def _render_breaks(breaks: np.ndarray) -> list[str]:
    # exact shortest text, so a label never misstates its boundary
    return [format_number(b) for b in breaks]


def compute_breaks(values: np.ndarray, ngroups: int) -> np.ndarray:
    probs = np.linspace(0.0, 1.0, ngroups + 1)
    qs = np.quantile(values, probs)
    breaks = np.unique(qs)
    if len(breaks) == 1:
        breaks = np.array([breaks[0], breaks[0]])
    return breaks


def _apply(col: Column, result: BinningResult, label_arr: np.ndarray) -> Column:
    labels = col.labels.copy()
    ordinary = col.state == VALUE
    if ordinary.any():
        labels[ordinary] = label_arr[result.bin_index(col.values[ordinary])]
    labels[col.state == MISSING] = MISSING_LABEL
    # code cells already carry their literal text
    schema = ColumnSchema(col.name, CATEGORICAL, missing_tokens=col.schema.missing_tokens)
    state = np.where(col.state == MISSING, MISSING, VALUE).astype(np.int8)
    return Column(schema, labels, state)


def group_numeric(orig_col: Column, syn_cols: Sequence[Column], ngroups: int
                  ) -> tuple[BinningResult, Column, list[Column]]:
    if ngroups < 2:
        raise ConfigError(f"column {orig_col.name!r}: ngroups must be at least 2, got {ngroups}")
    cols = [orig_col, *syn_cols]
    for c in cols:
        if c.kind != NUMERIC:
            raise ConfigError(f"column {c.name!r} is categorical and cannot be grouped")
    pooled = np.concatenate([c.values[c.state == VALUE] for c in cols])
    if pooled.size == 0:
        raise DataError(f"column {orig_col.name!r} has no ordinary numeric values to group")

    breaks = compute_breaks(pooled, ngroups)
    text = _render_breaks(breaks)
    nb = len(breaks) - 1
    labels = [f"[{text[i]},{text[i + 1]})" for i in range(nb - 1)]
    labels.append(f"[{text[nb - 1]},{text[nb]}]")
    present_codes = sorted({float(v) for c in cols for v in c.labels[c.state == CODE]})
    result = BinningResult(tuple(float(b) for b in breaks), tuple(labels),
                           tuple(format_number(v) for v in present_codes))
    label_arr = np.array(labels, dtype=object)
    return result, _apply(orig_col, result, label_arr), [_apply(c, result, label_arr) for c in syn_cols]


def apply_grouping(spec: GroupingSpec, orig: ColumnTable, syn: SyntheticSet,
                   keys: Sequence[str], targets: Sequence[str] | str
                   ) -> tuple[ColumnTable, SyntheticSet, dict[str, BinningResult]]:
    """Group the requested key and target columns of ``orig`` and every replicate.

    Returns the grouped copies and the binning used for each grouped column.
    """
    if isinstance(targets, str):
        targets = [targets]
    keys, targets = list(keys), list(targets)
    nk = spec.ngroups_keys or (0,) * len(keys)
    nt = spec.ngroups_targets or (0,) * len(targets)
    if len(nk) != len(keys):
        raise ConfigError(f"ngroups_keys has {len(nk)} entries for {len(keys)} keys")
    if len(nt) != len(targets):
        raise ConfigError(f"ngroups_targets has {len(nt)} entries for {len(targets)} targets")

    binnings: dict[str, BinningResult] = {}
    reps = list(syn.replicates)
    for name, n in [*zip(keys, nk), *zip(targets, nt)]:
        if n == 0:
            continue
        if name not in orig:
            raise ConfigError(f"unknown column {name!r}")
        if orig[name].kind != NUMERIC:
            raise ConfigError(f"grouping requested on categorical column {name!r}")
        result, g_orig, g_syn = group_numeric(orig[name], [r[name] for r in reps], n)
        binnings[name] = result
        orig = orig.with_column(g_orig)
        reps = [r.with_column(g) for r, g in zip(reps, g_syn)]
    return orig, SyntheticSet(tuple(reps)), binnings
