"""Flags for apparent disclosures explained by 1-way or 2-way structure.

An intruder who knows the marginal distribution of a target, or a strong
association between one key and the target, would predict many of the
"disclosive" records without the synthetic data. These checks point at such
target levels and key-target pairs so they can be examined or excluded.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError
from .tabulate import AlignedPair, Proportions


@dataclass(frozen=True)
class CheckThresholds:
    thresh_1way: tuple[int, float] = (50, 90.0)
    thresh_2way: tuple[int, float] = (5, 80.0)

    def __post_init__(self):
        for name in ("thresh_1way", "thresh_2way"):
            val = tuple(getattr(self, name))
            if len(val) != 2:
                raise ConfigError(f"{name} needs two values (count, percent), got {val!r}")
            count, pct = val
            if count <= 0:
                raise ConfigError(f"{name}: count must be positive, got {count}")
            if not 0 < pct <= 100:
                raise ConfigError(f"{name}: percent must lie in (0, 100], got {pct}")
            object.__setattr__(self, name, (int(count), float(pct)))


@dataclass(frozen=True)
class Check1Way:
    level: str
    All: int
    PctLevelAll: float
    totalDisclosive: int
    nLevelDis: int
    PctLevelDis: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Check2Way:
    target_key_levs: str
    npairs: int
    key: str
    key_target_total: int
    key_total: int
    PctTargetKeyLevel: float

    @property
    def target_level(self) -> str:
        return self.target_key_levs.split("|", 1)[0]

    @property
    def key_level(self) -> str:
        return self.target_key_levs.split("|", 1)[1]

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CheckFlags:
    check_1way: list[Check1Way] = field(default_factory=list)
    check_2way: list[Check2Way] = field(default_factory=list)

    @property
    def flagged_1way(self) -> bool:
        return bool(self.check_1way)

    @property
    def flagged_2way(self) -> bool:
        return bool(self.check_2way)

    def as_dict(self) -> dict:
        return {"check_1way": [c.as_dict() for c in self.check_1way],
                "check_2way": [c.as_dict() for c in self.check_2way]}


def _disclosive(pair: AlignedPair, props: Proportions) -> np.ndarray:
    # records counted in DiSCO: certain and correct
    return props.ps_one & (pair.d > 0)


def check_1way(pair: AlignedPair, props: Proportions,
               thresh: CheckThresholds = CheckThresholds()) -> list[Check1Way]:
    dis = _disclosive(pair, props)
    total = int(pair.d[dis].sum())
    if total == 0:
        return []
    min_count, min_pct = thresh.thresh_1way
    n_level = np.bincount(pair.cell_t[dis], pair.d[dis], minlength=pair.n_t).astype(np.int64)
    out = []
    for t in range(pair.n_t):
        pct = 100.0 * n_level[t] / total
        if n_level[t] >= min_count and pct > min_pct:
            out.append(Check1Way(
                level=str(pair.t_levels[t]), All=pair.N_d,
                PctLevelAll=100.0 * int(pair.d_t[t]) / pair.N_d,
                totalDisclosive=total, nLevelDis=int(n_level[t]), PctLevelDis=pct,
            ))
    return out


def _key_target_totals(pair: AlignedPair, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Per cell: original records sharing the cell's key-k level and target, and its key-k level."""
    level = pair.q_codes[pair.cell_q, k].astype(np.int64)
    key_total = np.bincount(level, pair.d)[level]
    combo = level * pair.n_t + pair.cell_t
    uniq, inv = np.unique(combo, return_inverse=True)
    kt = np.bincount(inv.reshape(-1), pair.d, minlength=len(uniq))[inv.reshape(-1)]
    return kt.astype(np.int64), key_total.astype(np.int64)


def check_2way(pair: AlignedPair, props: Proportions,
               thresh: CheckThresholds = CheckThresholds()) -> list[Check2Way]:
    """Disclosive cells with large synthetic denominators explained by one key.

    For each such cell, the key whose level in q best predicts the target
    level is chosen (ties go to the earlier key). Cells sharing the same
    target level, key and key level are reported together; ``npairs`` counts
    them. Only groups whose prediction rate exceeds the threshold are kept.
    """
    min_denom, min_pct = thresh.thresh_2way
    cand = np.flatnonzero(_disclosive(pair, props) & (pair.s >= min_denom))
    if cand.size == 0:
        return []
    nk = len(pair.keys)
    kt = np.empty((nk, cand.size), dtype=np.int64)
    kk = np.empty((nk, cand.size), dtype=np.int64)
    for k in range(nk):
        a, b = _key_target_totals(pair, k)
        kt[k], kk[k] = a[cand], b[cand]
    best = np.argmax(kt / kk, axis=0)

    groups: dict[tuple[int, int, int], list] = {}
    for j, c in enumerate(cand):
        k = int(best[j])
        key = (int(pair.cell_t[c]), k, int(pair.q_codes[pair.cell_q[c], k]))
        if key in groups:
            groups[key][0] += 1
        else:
            groups[key] = [1, int(kt[k, j]), int(kk[k, j])]

    out = []
    for (t, k, lev), (npairs, ktt, ktot) in groups.items():
        pct = 100.0 * ktt / ktot
        if pct > min_pct:
            out.append(Check2Way(
                target_key_levs=f"{pair.t_levels[t]}|{pair.key_levels[k][lev]}",
                npairs=npairs, key=pair.keys[k], key_target_total=ktt, key_total=ktot,
                PctTargetKeyLevel=pct,
            ))
    out.sort(key=lambda c: -c.npairs)
    return out


def run_checks(pair: AlignedPair, props: Proportions,
               thresh: CheckThresholds = CheckThresholds()) -> CheckFlags:
    return CheckFlags(check_1way(pair, props, thresh), check_2way(pair, props, thresh))
