"""Identity and attribute disclosure risk of synthetic data for the original records."""

__version__ = "0.1.0"

from .attribute import AttribMeasures, attrib_measures, generalized_disclosure
from .binning import BinningResult, GroupingSpec, apply_grouping, group_numeric
from .cap import CapMeasures, cap_measures
from .checks import Check1Way, Check2Way, CheckFlags, CheckThresholds, check_1way, check_2way
from .config import RunConfig
from .errors import ConfigError, DataError, SynthRiskError
from .exclusions import ExclusionSpec, apply_exclusions, strip_replicated_uniques
from .identity import IdentMeasures, ident_measures
from .ingest import (Column, ColumnSchema, ColumnTable, SyntheticSet, load_synthetic_set, load_table,
                     write_table)
from .pipeline import DisclosureReport, SweepResult, disclosure, evaluate, multi_disclosure, sweep
from .synth import bootstrap_synth
from .tabulate import AlignedPair, Proportions, QLevel, build_pair, compose_q, proportions

__all__ = [
    "AlignedPair", "AttribMeasures", "BinningResult", "CapMeasures", "Check1Way", "Check2Way",
    "CheckFlags", "CheckThresholds", "Column", "ColumnSchema", "ColumnTable", "ConfigError",
    "DataError", "DisclosureReport", "ExclusionSpec", "GroupingSpec", "IdentMeasures",
    "Proportions", "QLevel", "RunConfig", "SweepResult", "SynthRiskError", "SyntheticSet",
    "apply_exclusions", "apply_grouping", "attrib_measures", "bootstrap_synth", "build_pair",
    "cap_measures", "check_1way", "check_2way", "compose_q", "disclosure", "evaluate",
    "generalized_disclosure", "group_numeric", "ident_measures", "load_synthetic_set", "load_table",
    "multi_disclosure", "proportions", "strip_replicated_uniques", "sweep", "write_table",
]
