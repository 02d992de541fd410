import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from synthrisk.binning import GroupingSpec, apply_grouping, group_numeric
from synthrisk.errors import ConfigError, DataError
from synthrisk.ingest import NUMERIC, ColumnSchema, ColumnTable, SyntheticSet


def numeric_table(values, codes=()):
    hints = [ColumnSchema("v", NUMERIC, tuple(codes))]
    return ColumnTable.from_rows(["v"], [(v,) for v in values], hints)


def test_equal_quartiles_of_1_to_100():
    col = numeric_table(range(1, 101))["v"]
    res, g, _ = group_numeric(col, [], 4)
    # direct quantile computation: 1, 25.75, 50.5, 75.25, 100
    assert res.breaks == (1.0, 25.75, 50.5, 75.25, 100.0)
    counts = {lab: int((g.labels == lab).sum()) for lab in res.labels}
    assert list(counts.values()) == [25, 25, 25, 25]
    assert res.labels == ("[1,25.75)", "[25.75,50.5)", "[50.5,75.25)", "[75.25,100]")


def test_skewed_with_code_and_missing():
    rng = np.random.default_rng(1)
    vals = np.round(rng.lognormal(5, 1.5, 2000)).tolist()
    vals[:300] = [0.0] * 300  # heavy tie at zero collapses bins
    vals += [-8] * 50 + [None] * 40
    col = numeric_table(vals, codes=(-8,))["v"]
    res, g, _ = group_numeric(col, [], 20)
    assert res.n_bins < 20
    assert res.code_labels == ("-8",)
    groups = set(g.labels.tolist())
    assert "-8" in groups and "NA" in groups
    assert len(groups) == res.n_bins + 2


def test_constant_column_single_bin():
    res, g, _ = group_numeric(numeric_table([7] * 10)["v"], [], 5)
    assert res.n_bins == 1
    assert set(g.labels.tolist()) == {"[7,7]"}


def test_ngroups_below_two():
    with pytest.raises(ConfigError):
        group_numeric(numeric_table([1, 2])["v"], [], 1)


def test_all_codes_or_missing():
    with pytest.raises(DataError):
        group_numeric(numeric_table([-8, None], codes=(-8,))["v"], [], 3)


def test_categorical_cannot_be_grouped():
    t = ColumnTable.from_rows(["k", "v"], [("a", "x"), ("b", "y")])
    with pytest.raises(ConfigError, match="categorical"):
        apply_grouping(GroupingSpec((0,), (3,)), t, SyntheticSet((t,)), ["k"], ["v"])


def test_spec_all_zero_is_identity():
    t = ColumnTable.from_rows(["k", "v"], [("a", 1), ("b", 2)])
    o, s, b = apply_grouping(GroupingSpec((0,), (0,)), t, SyntheticSet((t,)), ["k"], ["v"])
    assert o.equals(t) and s[0].equals(t) and b == {}


def test_spec_length_mismatch():
    t = ColumnTable.from_rows(["k"] + [f"t{i}" for i in range(5)], [("a", 1, 2, 3, 4, 5)])
    with pytest.raises(ConfigError, match="ngroups_targets"):
        apply_grouping(GroupingSpec((), (0, 0, 0, 0)), t, SyntheticSet((t,)), ["k"],
                       [f"t{i}" for i in range(5)])


def test_grouping_target_like_income():
    rng = np.random.default_rng(3)
    vals = rng.integers(100, 5000, 500).tolist()
    o = ColumnTable.from_rows(["k", "inc"], [("a", v) for v in vals])
    s = ColumnTable.from_rows(["k", "inc"], [("a", v + 1) for v in vals])
    og, sg, b = apply_grouping(GroupingSpec((0,), (20,)), o, SyntheticSet((s,)), ["k"], ["inc"])
    assert b["inc"].n_bins <= 20
    assert og["inc"].kind == "categorical"
    assert set(sg[0]["inc"].labels.tolist()) <= set(b["inc"].labels)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=60),
       st.lists(st.integers(-80, 80), min_size=1, max_size=60),
       st.integers(2, 12))
def test_alignment_and_monotone(o_vals, s_vals, n):
    o = numeric_table(o_vals)["v"]
    s = numeric_table(s_vals)["v"]
    res, go, (gs,) = group_numeric(o, [s], n)
    universe = set(res.labels)
    assert set(go.labels.tolist()) <= universe
    assert set(gs.labels.tolist()) <= universe
    assert res.n_bins <= n
    allv = np.array(sorted(set(o_vals) | set(s_vals)), dtype=float)
    idx = res.bin_index(allv)
    assert np.all(np.diff(idx) >= 0)
    assert idx.min() >= 0 and idx.max() < res.n_bins
    # determinism
    res2, _, _ = group_numeric(o, [s], n)
    assert res2 == res
