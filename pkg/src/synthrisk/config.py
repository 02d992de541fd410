"""Run configuration, loadable from a flat JSON document."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .binning import GroupingSpec
from .checks import CheckThresholds
from .errors import ConfigError
from .exclusions import ExclusionSpec
from .ingest import DEFAULT_MISSING_TOKENS

FORMATS = ("text", "json", "csv", "svg")
PRINT_PARTS = ("ident", "attrib", "allCAPs", "check_1way", "check_2way")
DEFAULT_PRINT = ("ident", "attrib")
DEFAULT_FRACTIONS = (0.05, 0.1, 0.25, 0.5, 0.75, 1.0)


@dataclass
class RunConfig:
    keys: list[str]
    orig_path: str | None = None
    syn_paths: list[str] = field(default_factory=list)
    targets: list[str] = field(default_factory=list)
    grouping: GroupingSpec = field(default_factory=GroupingSpec)
    exclusions: ExclusionSpec = field(default_factory=ExclusionSpec)
    thresholds: CheckThresholds = field(default_factory=CheckThresholds)
    output_format: str = "text"
    to_print: tuple[str, ...] = DEFAULT_PRINT
    seed: int = 0
    na_codes: dict[str, list[float]] = field(default_factory=dict)
    delimiter: str = ","
    missing_tokens: tuple[str, ...] = DEFAULT_MISSING_TOKENS
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    tau: float | None = None
    workers: int = 1

    def __post_init__(self):
        self.keys = list(self.keys)
        self.targets = list(self.targets)
        self.to_print = tuple(self.to_print)
        self.validate()

    def validate(self) -> None:
        if not self.keys:
            raise ConfigError("at least one key is required")
        if len(set(self.keys)) != len(self.keys):
            raise ConfigError(f"duplicate keys: {self.keys}")
        overlap = [t for t in self.targets if t in self.keys]
        if overlap:
            raise ConfigError(f"target(s) also used as keys: {overlap}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown format {self.output_format!r}; choose from {FORMATS}")
        bad = [p for p in self.to_print if p not in PRINT_PARTS]
        if bad:
            raise ConfigError(f"unknown to_print part(s) {bad}; choose from {PRINT_PARTS}")
        if self.tau is not None and not 0 <= self.tau <= 1:
            raise ConfigError(f"tau must lie in [0, 1], got {self.tau}")
        for f in self.fractions:
            if not 0 < f <= 1:
                raise ConfigError(f"sweep fractions must lie in (0, 1], got {f}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RunConfig:
        """Build from the flat option names used by the CLI and config files."""
        data = dict(data)
        known = {
            "orig", "syn", "keys", "targets", "ngroups_keys", "ngroups_targets", "na_codes",
            "thresh_1way", "thresh_2way", "format", "to_print", "seed", "not_target",
            "use_keys_na", "use_target_na", "exclude_pairs", "denom_lim", "exclude_ov_denom_lim",
            "delimiter", "missing_tokens", "fractions", "tau", "workers",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config option(s): {unknown}")
        if "keys" not in data:
            raise ConfigError("config needs 'keys'")
        syn = data.get("syn") or []
        if isinstance(syn, str):
            syn = [syn]
        try:
            grouping = GroupingSpec(tuple(data.get("ngroups_keys") or ()),
                                    tuple(data.get("ngroups_targets") or ()))
            exclusions = ExclusionSpec(
                not_target=tuple(data.get("not_target") or ()),
                use_keys_na=data.get("use_keys_na", True),
                use_target_na=bool(data.get("use_target_na", True)),
                excluded_pairs=tuple(tuple(p) for p in data.get("exclude_pairs") or ()),
                denom_lim=data.get("denom_lim", 5),
                exclude_ov_denom_lim=bool(data.get("exclude_ov_denom_lim", False)),
            )
            thresholds = CheckThresholds(tuple(data.get("thresh_1way", (50, 90))),
                                         tuple(data.get("thresh_2way", (5, 80))))
            na_codes = {k: [float(x) for x in (v if isinstance(v, list) else [v])]
                        for k, v in (data.get("na_codes") or {}).items()}
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
        return cls(
            keys=list(data["keys"]),
            orig_path=data.get("orig"),
            syn_paths=list(syn),
            targets=list(data.get("targets") or []),
            grouping=grouping,
            exclusions=exclusions,
            thresholds=thresholds,
            output_format=data.get("format", "text"),
            to_print=tuple(data.get("to_print") or DEFAULT_PRINT),
            seed=int(data.get("seed", 0)),
            na_codes=na_codes,
            delimiter=data.get("delimiter", ","),
            missing_tokens=tuple(data.get("missing_tokens", DEFAULT_MISSING_TOKENS)),
            fractions=tuple(float(f) for f in data.get("fractions", DEFAULT_FRACTIONS)),
            tau=data.get("tau"),
            workers=int(data.get("workers", 1)),
        )


def load_config(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return data
