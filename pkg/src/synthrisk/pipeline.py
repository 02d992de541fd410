"""End-to-end runs: single-target ``disclosure``, all-target ``multi_disclosure``, and size ``sweep``."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .attribute import AttribMeasures, attrib_measures, generalized_disclosure
from .binning import BinningResult, GroupingSpec, apply_grouping
from .cap import CapMeasures, cap_measures
from .checks import CheckFlags, CheckThresholds, run_checks
from .config import RunConfig
from .errors import ConfigError, DataError
from .exclusions import ExclusionSpec, apply_exclusions
from .identity import IdentMeasures, ident_measures
from .ingest import NUMERIC, ColumnSchema, ColumnTable, SyntheticSet, load_synthetic_set, load_table
from .tabulate import build_pair

logger = logging.getLogger(__name__)

SWEEP_MEASURES = ("DiSCO", "DCAP_d", "DCAP_s", "DCAP_b", "TCAP_s", "TCAP_b", "TCAP")


@dataclass
class TargetResult:
    target: str
    attrib: list[AttribMeasures]
    caps: list[CapMeasures]
    checks: list[CheckFlags]
    t_registries: list[list[str]]
    generalized: list[float] | None = None

    @property
    def flagged_1way(self) -> bool:
        return any(c.flagged_1way for c in self.checks)

    @property
    def flagged_2way(self) -> bool:
        return any(c.flagged_2way for c in self.checks)

    def mean(self, measure: str) -> float:
        return float(np.mean([getattr(a, measure) for a in self.attrib]))


@dataclass
class SummaryRow:
    variable: str
    label: str
    attrib_orig: float
    attrib_syn: float
    check1: str
    check2: str
    npairs: int


@dataclass
class DisclosureReport:
    kind: str
    keys: list[str]
    n_orig: int
    n_syn: list[int]
    ident: list[IdentMeasures]
    q_registries: list[list[str]]
    targets: list[TargetResult]
    summary: list[SummaryRow]
    thresholds: CheckThresholds
    exclusions: ExclusionSpec
    binnings: dict[str, BinningResult] = field(default_factory=dict)
    to_print: tuple[str, ...] = ("ident", "attrib")
    tau: float | None = None

    @property
    def m(self) -> int:
        return len(self.ident)

    def target(self, name: str) -> TargetResult:
        for t in self.targets:
            if t.target == name:
                return t
        raise KeyError(name)


@dataclass
class SweepResult:
    keys: list[str]
    n_orig: int
    n_syn: int
    m: int
    fractions: list[float]
    measures: tuple[str, ...]
    # one row per (target, fraction): measure means over replicates
    rows: list[dict]

    def series(self, target: str, measure: str) -> list[float]:
        return [r[measure] for r in self.rows if r["target"] == target]


def load_inputs(config: RunConfig) -> tuple[ColumnTable, SyntheticSet]:
    if not config.orig_path:
        raise ConfigError("no original data file given")
    if not config.syn_paths:
        raise ConfigError("no synthetic data file given")
    hints = [ColumnSchema(name, NUMERIC, tuple(codes), config.missing_tokens)
             for name, codes in config.na_codes.items()]
    orig = load_table(config.orig_path, hints, delimiter=config.delimiter,
                      missing_tokens=config.missing_tokens)
    syn = load_synthetic_set(config.syn_paths, orig.schema, delimiter=config.delimiter,
                             missing_tokens=config.missing_tokens)
    return orig, syn


def _as_set(syn) -> SyntheticSet:
    if isinstance(syn, SyntheticSet):
        return syn
    if isinstance(syn, ColumnTable):
        return SyntheticSet((syn,))
    return SyntheticSet(tuple(syn))


def _resolve_targets(orig: ColumnTable, syn: SyntheticSet, keys: Sequence[str],
                     targets: Sequence[str]) -> list[str]:
    for name in keys:
        if name not in orig or name not in syn[0]:
            raise ConfigError(f"key {name!r} is not a column of both data sets")
    if not targets:
        targets = [n for n in syn[0].names if n not in keys and n in orig]
    for name in targets:
        if name in keys:
            raise ConfigError(f"target {name!r} is also a key")
        if name not in orig or name not in syn[0]:
            raise ConfigError(f"target {name!r} is not a column of both data sets")
    return list(targets)


def _pmap(fn: Callable, items: Iterable, workers: int) -> list:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def identity_for(orig: ColumnTable, syn: ColumnTable, keys: Sequence[str],
                 exclusions: ExclusionSpec = ExclusionSpec()) -> tuple[IdentMeasures, list[str]]:
    spec = exclusions.for_identity()
    pair = build_pair(orig, syn, keys, None, spec.na_policy(keys, None))
    pair, _ = apply_exclusions(pair, None, spec)
    return ident_measures(pair), [q.rendered for q in pair.q_registry]


def measure_target(orig: ColumnTable, syn: ColumnTable, keys: Sequence[str], target: str,
                   exclusions: ExclusionSpec = ExclusionSpec(),
                   thresholds: CheckThresholds = CheckThresholds(),
                   tau: float | None = None):
    """All attribute-side results for one target and one synthetic replicate."""
    pair = build_pair(orig, syn, keys, target, exclusions.na_policy(keys, target))
    pair, props = apply_exclusions(pair, None, exclusions)
    gen = generalized_disclosure(pair, props, tau) if tau is not None else None
    return (attrib_measures(pair, props), cap_measures(pair, props),
            run_checks(pair, props, thresholds), pair.t_registry, gen)


def _summary(results: list[TargetResult]) -> list[SummaryRow]:
    rows = []
    for r in results:
        suffix = " ".join(s for s, f in (("1way", r.flagged_1way), ("2way", r.flagged_2way)) if f)
        label = f"{r.target} {suffix} checks" if suffix else r.target
        levels: list[str] = []
        keys: list[str] = []
        npairs = 0
        for c in r.checks:
            for c1 in c.check_1way:
                if c1.level not in levels:
                    levels.append(c1.level)
            for c2 in c.check_2way:
                if c2.key not in keys:
                    keys.append(c2.key)
            npairs = max(npairs, sum(c2.npairs for c2 in c.check_2way))
        check1 = f"Check {r.target} level {' '.join(levels)}" if levels else ""
        check2 = f"Check {r.target} with {' '.join(keys)}" if keys else ""
        rows.append(SummaryRow(r.target, label, r.mean("Dorig"), r.mean("DiSCO"), check1, check2, npairs))
    # stable: ties keep input order
    return sorted(rows, key=lambda row: row.attrib_syn)


def evaluate(orig: ColumnTable, syn, keys: Sequence[str], targets: Sequence[str] = (), *,
             grouping: GroupingSpec = GroupingSpec(),
             exclusions: ExclusionSpec = ExclusionSpec(),
             thresholds: CheckThresholds = CheckThresholds(),
             tau: float | None = None, workers: int = 1, kind: str = "multi",
             to_print: Sequence[str] = ("ident", "attrib")) -> DisclosureReport:
    """Run every measure for ``keys`` against each target and replicate."""
    syn = _as_set(syn)
    keys = list(keys)
    if not keys:
        raise ConfigError("at least one key is required")
    targets = _resolve_targets(orig, syn, keys, targets)
    if grouping.ngroups_targets and len(grouping.ngroups_targets) != len(targets):
        raise ConfigError(f"ngroups_targets has {len(grouping.ngroups_targets)} entries "
                          f"for {len(targets)} targets")
    orig_g, syn_g, binnings = apply_grouping(grouping, orig, syn, keys, targets)
    if orig_g.n_rows == 0:
        raise DataError("the original data has no records")
    logger.info("evaluating %d target(s) over %d replicate(s)", len(targets), syn_g.m)

    idents = _pmap(lambda rep: identity_for(orig_g, rep, keys, exclusions), syn_g, workers)
    tasks = [(t, rep) for t in targets for rep in syn_g]
    outs = _pmap(lambda tr: measure_target(orig_g, tr[1], keys, tr[0], exclusions, thresholds, tau),
                 tasks, workers)

    results = []
    for i, t in enumerate(targets):
        per = outs[i * syn_g.m:(i + 1) * syn_g.m]
        results.append(TargetResult(
            target=t,
            attrib=[p[0] for p in per], caps=[p[1] for p in per], checks=[p[2] for p in per],
            t_registries=[p[3] for p in per],
            generalized=[p[4] for p in per] if tau is not None else None,
        ))
    return DisclosureReport(
        kind=kind, keys=keys, n_orig=orig_g.n_rows, n_syn=[r.n_rows for r in syn_g],
        ident=[x[0] for x in idents], q_registries=[x[1] for x in idents],
        targets=results, summary=_summary(results), thresholds=thresholds,
        exclusions=exclusions, binnings=binnings, to_print=tuple(to_print), tau=tau,
    )


def _data(config: RunConfig, orig, syn):
    if orig is None or syn is None:
        return load_inputs(config)
    return orig, _as_set(syn)


def disclosure(config: RunConfig, orig: ColumnTable | None = None, syn=None) -> DisclosureReport:
    """Single-target run. Tables may be passed directly instead of file paths."""
    if len(config.targets) != 1:
        raise ConfigError(f"disclosure needs exactly one target, got {config.targets}")
    orig, syn = _data(config, orig, syn)
    return evaluate(orig, syn, config.keys, config.targets, grouping=config.grouping,
                    exclusions=config.exclusions, thresholds=config.thresholds, tau=config.tau,
                    workers=config.workers, kind="disclosure", to_print=config.to_print)


def multi_disclosure(config: RunConfig, orig: ColumnTable | None = None, syn=None) -> DisclosureReport:
    """Every target (default: all non-key columns) with a summary table."""
    orig, syn = _data(config, orig, syn)
    return evaluate(orig, syn, config.keys, config.targets, grouping=config.grouping,
                    exclusions=config.exclusions, thresholds=config.thresholds, tau=config.tau,
                    workers=config.workers, kind="multi", to_print=config.to_print)


def subsample(table: ColumnTable, fraction: float, rng: np.random.Generator) -> ColumnTable:
    """Rows drawn without replacement, keeping their original order."""
    k = int(round(fraction * table.n_rows))
    if k < 1:
        raise DataError(f"fraction {fraction} of {table.n_rows} rows leaves no records")
    if k >= table.n_rows:
        return table
    return table.take(np.sort(rng.choice(table.n_rows, size=k, replace=False)))


def sweep(config: RunConfig, fractions: Sequence[float] | None = None,
          orig: ColumnTable | None = None, syn=None) -> SweepResult:
    """Attribute measures for synthetic releases shrunk to each fraction of their size.

    For fraction ``f`` every replicate is subsampled to ``round(f * N_s)``
    rows; measures are averaged over replicates.
    """
    fractions = list(config.fractions if fractions is None else fractions)
    if not fractions:
        raise ConfigError("no sweep fractions given")
    for f in fractions:
        if not 0 < f <= 1:
            raise ConfigError(f"sweep fractions must lie in (0, 1], got {f}")
    orig, syn = _data(config, orig, syn)
    keys = config.keys
    targets = _resolve_targets(orig, syn, keys, config.targets)
    orig_g, syn_g, _ = apply_grouping(config.grouping, orig, syn, keys, targets)

    def one(task):
        fi, ri = task
        rng = np.random.default_rng([config.seed, fi, ri])
        rep = subsample(syn_g[ri], fractions[fi], rng)
        out = {}
        for t in targets:
            a, c, _, _, _ = measure_target(orig_g, rep, keys, t, config.exclusions, config.thresholds)
            out[t] = {"DiSCO": a.DiSCO, "DCAP_d": c.DCAP_d, "DCAP_s": c.DCAP_s, "DCAP_b": c.DCAP_b,
                      "TCAP_s": c.TCAP_s, "TCAP_b": c.TCAP_b, "TCAP": c.TCAP}
        return rep.n_rows, out

    tasks = [(fi, ri) for fi in range(len(fractions)) for ri in range(syn_g.m)]
    outs = _pmap(one, tasks, config.workers)
    rows = []
    for t in targets:
        for fi, f in enumerate(fractions):
            per = outs[fi * syn_g.m:(fi + 1) * syn_g.m]
            n_syn = float(np.mean([p[0] for p in per]))
            row = {"target": t, "fraction": f, "n_syn": int(n_syn) if n_syn.is_integer() else n_syn}
            for m in SWEEP_MEASURES:
                row[m] = float(np.mean([p[1][t][m] for p in per]))
            rows.append(row)
    return SweepResult(keys=list(keys), n_orig=orig_g.n_rows, n_syn=syn_g[0].n_rows, m=syn_g.m,
                       fractions=fractions, measures=SWEEP_MEASURES, rows=rows)
