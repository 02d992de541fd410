"""Record and cell exclusions applied before measurement, and replicated-unique stripping."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np
import pandas as pd

from .errors import ConfigError, DataError
from .ingest import MISSING_LABEL, ColumnTable
from .tabulate import SEPARATOR, AlignedPair, Proportions, proportions


@dataclass(frozen=True)
class ExclusionSpec:
    """What to leave out of every measure.

    ``use_keys_na`` is either one flag for all keys or a mapping from key name
    to flag; ``True`` keeps records with a missing value. ``excluded_pairs``
    holds ``(key, key level, target level)`` triples.
    """

    not_target: tuple[str, ...] = ()
    use_keys_na: bool | Mapping[str, bool] = True
    use_target_na: bool = True
    excluded_pairs: tuple[tuple[str, str, str], ...] = ()
    denom_lim: int = 5
    exclude_ov_denom_lim: bool = False

    def __post_init__(self):
        object.__setattr__(self, "not_target", tuple(str(t) for t in self.not_target))
        pairs = tuple(tuple(str(x) for x in p) for p in self.excluded_pairs)
        for p in pairs:
            if len(p) != 3:
                raise ConfigError(f"excluded pair needs (key, key level, target level), got {p!r}")
        object.__setattr__(self, "excluded_pairs", pairs)
        if not isinstance(self.use_keys_na, bool):
            object.__setattr__(self, "use_keys_na", dict(self.use_keys_na))
        if int(self.denom_lim) != self.denom_lim or self.denom_lim < 1:
            raise ConfigError(f"denom_lim must be a positive integer, got {self.denom_lim!r}")

    @classmethod
    def from_vectors(cls, keys: Sequence[str], keylevs: Sequence[str], targetlevs: Sequence[str],
                     **kwargs) -> ExclusionSpec:
        if not len(keys) == len(keylevs) == len(targetlevs):
            raise ConfigError("exclude keys, key levels and target levels must have equal lengths")
        return cls(excluded_pairs=tuple(zip(keys, keylevs, targetlevs)), **kwargs)

    def keep_key_na(self, key: str) -> bool:
        if isinstance(self.use_keys_na, bool):
            return self.use_keys_na
        return self.use_keys_na.get(key, True)

    def na_policy(self, keys: Sequence[str], target: str | None) -> dict[str, bool]:
        policy = {k: self.keep_key_na(k) for k in keys}
        if target is not None:
            policy[target] = self.use_target_na
        return policy

    def for_identity(self) -> ExclusionSpec:
        """The exclusions that still apply to q-only tables."""
        return replace(self, not_target=(), use_target_na=True, excluded_pairs=())

    @property
    def is_empty(self) -> bool:
        keys_all = self.use_keys_na is True or (
            isinstance(self.use_keys_na, dict) and all(self.use_keys_na.values()))
        return (not self.not_target and keys_all and self.use_target_na
                and not self.excluded_pairs and not self.exclude_ov_denom_lim)


def apply_exclusions(pair: AlignedPair, props: Proportions | None,
                     spec: ExclusionSpec) -> tuple[AlignedPair, Proportions]:
    """Drop excluded cells from both tables and recompute margins.

    Percentage bases (``N_d``, ``N_s``) keep their pre-exclusion values.
    Levels named in ``spec`` that do not occur only raise a warning.
    """
    if spec.is_empty:
        return pair, props if props is not None else proportions(pair)
    drop = np.zeros(pair.n_cells, dtype=bool)
    t_levels = pair.t_registry
    t_of_cell = pair.t_levels[pair.cell_t]

    if pair.target is not None:
        for lev in spec.not_target:
            if lev not in t_levels:
                warnings.warn(f"not_target level {lev!r} does not occur in target {pair.target!r}")
        if spec.not_target:
            drop |= np.isin(t_of_cell, list(spec.not_target))
        if not spec.use_target_na:
            drop |= t_of_cell == MISSING_LABEL

    for k in pair.keys:
        if not spec.keep_key_na(k):
            drop |= pair.key_column(k) == MISSING_LABEL

    if pair.target is not None:
        for key, key_lev, t_lev in spec.excluded_pairs:
            if key not in pair.keys:
                warnings.warn(f"excluded pair names {key!r}, which is not a key")
                continue
            kcol = pair.key_column(key)
            if key_lev not in set(pair.key_levels[pair.keys.index(key)]):
                warnings.warn(f"key {key!r} has no level {key_lev!r}")
            if t_lev not in t_levels:
                warnings.warn(f"target {pair.target!r} has no level {t_lev!r}")
            drop |= (kcol == key_lev) & (t_of_cell == t_lev)

    d = np.where(drop, 0, pair.d)
    s = np.where(drop, 0, pair.s)
    if spec.exclude_ov_denom_lim:
        d = np.where(d > spec.denom_lim, 0, d)
        s = np.where(s > spec.denom_lim, 0, s)
    new = pair.with_counts(d, s)
    return new, proportions(new)


def _q_labels(table: ColumnTable, keys: Sequence[str]) -> np.ndarray:
    out = table[keys[0]].labels.astype(object)
    for k in keys[1:]:
        out = out + SEPARATOR + table[k].labels
    return out


def strip_replicated_uniques(orig: ColumnTable, syn: ColumnTable, keys: Sequence[str]) -> ColumnTable:
    """Synthetic table without the records whose q is unique in both tables."""
    keys = list(keys)
    if not keys:
        raise ConfigError("at least one key is required")
    for name, table in (("original", orig), ("synthetic", syn)):
        missing = [k for k in keys if k not in table]
        if missing:
            raise ConfigError(f"unknown key(s) in {name} data: {missing}")
        for k in keys:
            if any(SEPARATOR in lev for lev in table[k].registry):
                raise DataError(f"key {k!r} has a level containing {SEPARATOR!r}")
    qo, qs = _q_labels(orig, keys), _q_labels(syn, keys)
    ids, uniques = pd.factorize(np.concatenate([qo, qs]))
    n_o = len(qo)
    d_q = np.bincount(ids[:n_o], minlength=len(uniques))
    s_q = np.bincount(ids[n_o:], minlength=len(uniques))
    sid = ids[n_o:]
    drop = (s_q[sid] == 1) & (d_q[sid] == 1)
    return syn.take(np.flatnonzero(~drop))
