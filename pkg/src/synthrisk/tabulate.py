"""Union-aligned sparse q-by-t contingency tables.

The quasi-identifier ``q`` of a record is the composite of its key labels.
Original and synthetic records are tabulated against the target ``t`` over
shared q and t registries (the union of the levels seen in either table),
and only non-empty (q, t) cells are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np
import pandas as pd

from .errors import ConfigError, DataError
from .ingest import ColumnTable

SEPARATOR = " | "


@dataclass(frozen=True)
class QLevel:
    key_values: tuple[str, ...]

    @property
    def rendered(self) -> str:
        return SEPARATOR.join(self.key_values)

    def __str__(self) -> str:
        return self.rendered

    @classmethod
    def parse(cls, rendered: str) -> QLevel:
        return cls(tuple(rendered.split(SEPARATOR)))


def compose_q(record: Sequence[str], keys: Sequence[str] | None = None) -> QLevel:
    if keys is not None and len(record) != len(keys):
        raise ConfigError(f"got {len(record)} key values for {len(keys)} keys")
    values = tuple(str(v) for v in record)
    for v in values:
        if SEPARATOR in v:
            raise DataError(f"key level {v!r} contains the separator {SEPARATOR!r}")
    return QLevel(values)


def _first_index(ids: np.ndarray, n: int) -> np.ndarray:
    first = np.full(n, len(ids), dtype=np.intp)
    np.minimum.at(first, ids, np.arange(len(ids)))
    return first


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """Sparse aligned tables for one (keys, target, replicate) triple.

    Cells are stored in coordinate form: cell ``i`` is ``(cell_q[i],
    cell_t[i])`` with original count ``d[i]`` and synthetic count ``s[i]``.
    ``n_orig`` and ``n_syn`` are the record totals used as percentage bases;
    they keep their pre-exclusion values when records are excluded.
    ``row_cells`` maps each original record to its cell, or -1 when the
    record is excluded.
    """

    keys: tuple[str, ...]
    target: str | None
    key_levels: tuple[np.ndarray, ...]
    q_codes: np.ndarray
    t_levels: np.ndarray
    cell_q: np.ndarray
    cell_t: np.ndarray
    d: np.ndarray
    s: np.ndarray
    n_orig: int
    n_syn: int
    row_cells: np.ndarray

    def __post_init__(self):
        nq, nt = self.n_q, self.n_t
        object.__setattr__(self, "d_q", np.bincount(self.cell_q, self.d, minlength=nq).astype(np.int64))
        object.__setattr__(self, "s_q", np.bincount(self.cell_q, self.s, minlength=nq).astype(np.int64))
        object.__setattr__(self, "d_t", np.bincount(self.cell_t, self.d, minlength=nt).astype(np.int64))
        object.__setattr__(self, "s_t", np.bincount(self.cell_t, self.s, minlength=nt).astype(np.int64))

    # registries and totals

    @property
    def n_q(self) -> int:
        return len(self.q_codes)

    @property
    def n_t(self) -> int:
        return len(self.t_levels)

    @property
    def n_cells(self) -> int:
        return len(self.d)

    @property
    def N_d(self) -> int:
        return self.n_orig

    @property
    def N_s(self) -> int:
        return self.n_syn

    @property
    def N_b(self) -> int:
        """Original records whose q also occurs in the synthetic table."""
        return int(self.d_q[self.s_q > 0].sum())

    @property
    def N_d_only(self) -> int:
        return int(self.d_q[self.s_q == 0].sum())

    @property
    def N_s_only(self) -> int:
        return int(self.s_q[self.d_q == 0].sum())

    def q_level(self, i: int) -> QLevel:
        return QLevel(tuple(str(self.key_levels[k][c]) for k, c in enumerate(self.q_codes[i])))

    @property
    def q_registry(self) -> list[QLevel]:
        return [self.q_level(i) for i in range(self.n_q)]

    @property
    def t_registry(self) -> list[str]:
        return [str(t) for t in self.t_levels]

    def rendered_q(self) -> np.ndarray:
        parts = [self.key_levels[k][self.q_codes[:, k]].astype(str) for k in range(len(self.keys))]
        out = parts[0].astype(object)
        for p in parts[1:]:
            out = out + SEPARATOR + p
        return out

    def key_column(self, key: str) -> np.ndarray:
        """Level of ``key`` in the q of every cell."""
        k = self.keys.index(key)
        return self.key_levels[k][self.q_codes[self.cell_q, k]]

    def cells(self) -> Iterator[tuple[str, str, int, int]]:
        """Yield ``(rendered q, t, d_tq, s_tq)`` for every stored cell."""
        rq = self.rendered_q()
        for q, t, d, s in zip(self.cell_q, self.cell_t, self.d, self.s):
            yield rq[q], str(self.t_levels[t]), int(d), int(s)

    def counts(self) -> dict[tuple[str, str], tuple[int, int]]:
        return {(q, t): (d, s) for q, t, d, s in self.cells()}

    def with_counts(self, d: np.ndarray, s: np.ndarray) -> AlignedPair:
        """New pair with per-cell counts replaced and registries compacted.

        Each new count must be either the old count or zero; original records
        of cells whose count drops to zero become excluded.
        """
        d = np.asarray(d, dtype=np.int64)
        s = np.asarray(s, dtype=np.int64)
        keep = (d > 0) | (s > 0)
        cell_map = np.full(self.n_cells, -1, dtype=np.intp)
        cell_map[keep] = np.arange(int(keep.sum()))

        used_q = np.unique(self.cell_q[keep])
        q_map = np.full(self.n_q, -1, dtype=np.intp)
        q_map[used_q] = np.arange(len(used_q))
        used_t = np.unique(self.cell_t[keep])
        t_map = np.full(self.n_t, -1, dtype=np.intp)
        t_map[used_t] = np.arange(len(used_t))

        rc = self.row_cells
        new_rc = np.full(len(rc), -1, dtype=np.intp)
        live = rc >= 0
        live_cells = rc[live]
        new_rc[live] = np.where(d[live_cells] > 0, cell_map[live_cells], -1)

        return AlignedPair(
            keys=self.keys, target=self.target, key_levels=self.key_levels,
            q_codes=self.q_codes[used_q], t_levels=self.t_levels[used_t],
            cell_q=q_map[self.cell_q[keep]], cell_t=t_map[self.cell_t[keep]],
            d=d[keep], s=s[keep], n_orig=self.n_orig, n_syn=self.n_syn, row_cells=new_rc,
        )


@dataclass(frozen=True, eq=False)
class Proportions:
    """Column proportions per stored cell; zero where the q-margin is zero."""

    pd: np.ndarray
    ps: np.ndarray
    pd_t: np.ndarray
    pd_one: np.ndarray
    ps_one: np.ndarray

    def as_dict(self, pair: AlignedPair) -> dict[tuple[str, str], tuple[float, float]]:
        rq = pair.rendered_q()
        return {(rq[q], str(pair.t_levels[t])): (float(a), float(b))
                for q, t, a, b in zip(pair.cell_q, pair.cell_t, self.pd, self.ps)}


def proportions(pair: AlignedPair) -> Proportions:
    dq = pair.d_q[pair.cell_q]
    sq = pair.s_q[pair.cell_q]
    with np.errstate(invalid="ignore", divide="ignore"):
        pdv = np.where(dq > 0, pair.d / np.maximum(dq, 1), 0.0)
        psv = np.where(sq > 0, pair.s / np.maximum(sq, 1), 0.0)
    pd_t = pair.d_t / pair.n_orig if pair.n_orig else np.zeros(pair.n_t)
    # exact integer tests so that "= 1" never depends on float rounding
    pd_one = (pair.d > 0) & (pair.d == dq)
    ps_one = (pair.s > 0) & (pair.s == sq)
    return Proportions(pdv, psv, pd_t, pd_one, ps_one)


def _check_columns(table: ColumnTable, names: Sequence[str], which: str) -> None:
    missing = [n for n in names if n not in table]
    if missing:
        raise ConfigError(f"unknown column(s) in {which} data: {missing}")


def build_pair(
    orig: ColumnTable,
    syn: ColumnTable,
    keys: Sequence[str],
    target: str | None,
    na_policy: Mapping[str, bool] | None = None,
) -> AlignedPair:
    """Tabulate ``orig`` and ``syn`` by q and target over union registries.

    ``na_policy`` maps a key or target name to ``False`` to drop records whose
    value for it is missing. ``target=None`` tabulates q alone.
    """
    keys = tuple(keys)
    if not keys:
        raise ConfigError("at least one key is required")
    if target is not None and target in keys:
        raise ConfigError(f"target {target!r} is also a key")
    names = [*keys] + ([target] if target is not None else [])
    _check_columns(orig, names, "original")
    _check_columns(syn, names, "synthetic")
    if orig.n_rows == 0:
        raise DataError("the original data has no records")

    n_o = orig.n_rows
    keep = np.ones(n_o + syn.n_rows, dtype=bool)
    for name, include in (na_policy or {}).items():
        if include or name not in names:
            continue
        keep &= np.concatenate([orig[name].missing, syn[name].missing]) == False  # noqa: E712
    keep_o = keep[:n_o]

    key_codes, key_levels = [], []
    for k in keys:
        labels = np.concatenate([orig[k].labels, syn[k].labels])[keep]
        codes, uniques = pd.factorize(labels)
        bad = [u for u in uniques if SEPARATOR in u]
        if bad:
            raise DataError(f"key {k!r}: level {bad[0]!r} contains the separator {SEPARATOR!r}")
        key_codes.append(codes.astype(np.int64))
        key_levels.append(np.asarray(uniques, dtype=object))

    comp = key_codes[0]
    for codes, levels in zip(key_codes[1:], key_levels[1:]):
        comp = pd.factorize(comp * len(levels) + codes)[0].astype(np.int64)
    q_ids, q_uniques = pd.factorize(comp)
    n_q = len(q_uniques)
    first = _first_index(q_ids, n_q)
    q_codes = np.stack([c[first] for c in key_codes], axis=1) if n_q else np.zeros((0, len(keys)), np.int64)

    if target is None:
        t_ids = np.zeros(len(q_ids), dtype=np.int64)
        t_levels = np.array([""], dtype=object) if len(q_ids) else np.array([], dtype=object)
    else:
        labels = np.concatenate([orig[target].labels, syn[target].labels])[keep]
        t_ids, t_uniques = pd.factorize(labels)
        t_levels = np.asarray(t_uniques, dtype=object)
    n_t = max(len(t_levels), 1)

    flat = q_ids.astype(np.int64) * n_t + t_ids
    cell_keys, inv = np.unique(flat, return_inverse=True)
    inv = inv.reshape(-1)
    n_keep_o = int(keep_o.sum())
    d = np.bincount(inv[:n_keep_o], minlength=len(cell_keys)).astype(np.int64)
    s = np.bincount(inv[n_keep_o:], minlength=len(cell_keys)).astype(np.int64)

    row_cells = np.full(n_o, -1, dtype=np.intp)
    row_cells[keep_o] = inv[:n_keep_o]

    return AlignedPair(
        keys=keys, target=target, key_levels=tuple(key_levels), q_codes=q_codes,
        t_levels=t_levels, cell_q=(cell_keys // n_t).astype(np.intp),
        cell_t=(cell_keys % n_t).astype(np.intp), d=d, s=s,
        n_orig=n_o, n_syn=syn.n_rows, row_cells=row_cells,
    )
