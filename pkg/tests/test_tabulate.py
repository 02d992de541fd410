import numpy as np
import pytest

from synthrisk.errors import ConfigError, DataError
from synthrisk.tabulate import SEPARATOR, QLevel, build_pair, compose_q, proportions

from conftest import table


def test_union_registries(toy5_pair):
    pair, _ = toy5_pair
    assert [q.rendered for q in pair.q_registry] == ["A", "B", "C", "D", "E"]
    assert pair.t_registry == ["x", "y", "z"]


def test_counts_by_hand(toy5_pair):
    pair, _ = toy5_pair
    assert pair.counts() == {
        ("A", "x"): (1, 1), ("A", "y"): (1, 0), ("B", "y"): (1, 1), ("B", "x"): (0, 1),
        ("C", "z"): (1, 0), ("D", "x"): (1, 0), ("D", "y"): (0, 1), ("E", "z"): (0, 1),
    }
    assert pair.N_d == 5 and pair.N_s == 5
    assert pair.N_d_only == 1 and pair.N_s_only == 1  # C only in orig, E only in syn


def test_marginals_sum(toy5_pair):
    pair, _ = toy5_pair
    assert pair.d_q.sum() == pair.d_t.sum() == pair.N_d
    assert pair.s_q.sum() == pair.s_t.sum() == pair.N_s


def test_proportions_by_hand(toy5_pair):
    pair, props = toy5_pair
    pd_ = props.as_dict(pair)
    assert pd_[("A", "x")] == (0.5, 1.0)
    assert pd_[("B", "y")] == (1.0, 0.5)
    assert pd_[("C", "z")] == (1.0, 0.0)  # s_q = 0 reported as 0
    assert pd_[("E", "z")] == (0.0, 1.0)


def test_q_level_roundtrip():
    q = compose_q(["M", "35", "North"])
    assert q.rendered == "M | 35 | North"
    assert QLevel.parse(q.rendered) == q


def test_separator_inside_level_rejected():
    with pytest.raises(DataError, match="separator"):
        compose_q(["a" + SEPARATOR + "b", "c"], ["k1", "k2"])


def test_target_also_key(toy5):
    with pytest.raises(ConfigError):
        build_pair(toy5[0], toy5[1], ["k"], "k")


def test_missing_column(toy5):
    with pytest.raises(ConfigError):
        build_pair(toy5[0], toy5[1], ["nope"], "t")


def test_na_policy_drops_missing():
    o = table([("A", "x"), (None, "y"), ("B", None)])
    s = table([("A", "x"), (None, "y")])
    full = build_pair(o, s, ["k"], "t")
    assert full.N_d == 3 and full.N_s == 2
    assert "NA" in [q.rendered for q in full.q_registry]
    drop = build_pair(o, s, ["k"], "t", {"k": False, "t": False})
    # cells drop, the percentage bases keep every record
    assert drop.d.sum() == 1 and drop.s.sum() == 1
    assert drop.N_d == 3 and drop.N_s == 2
    assert drop.row_cells[1] == -1 and drop.row_cells[2] == -1


def test_q_only_pair(toy5):
    pair = build_pair(toy5[0], toy5[1], ["k"], None)
    assert pair.n_t == 1
    assert pair.N_d == 5


def test_row_cells_point_at_own_cell(rng):
    from oracle import random_instance

    orig, syn, keys, t = random_instance(rng)
    pair = build_pair(orig, syn, keys, t)
    rq = pair.rendered_q()
    for i in range(0, orig.n_rows, 7):
        c = pair.row_cells[i]
        assert rq[pair.cell_q[c]] == SEPARATOR.join(orig[k].labels[i] for k in keys)
        assert pair.t_registry[pair.cell_t[c]] == orig[t].labels[i]


def test_proportion_ranges(rng):
    from oracle import random_instance

    for _ in range(20):
        orig, syn, keys, t = random_instance(rng, equal_sizes=False)
        pair = build_pair(orig, syn, keys, t)
        p = proportions(pair)
        for arr in (p.pd, p.ps, p.pd_t):
            assert np.all((arr >= 0) & (arr <= 1))
        # ps sums to 1 within each q present in the synthetic data
        sums = np.bincount(pair.cell_q, weights=p.ps, minlength=pair.n_q)
        present = pair.s_q > 0
        assert np.allclose(sums[present], 1.0)
        assert np.all(sums[~present] == 0)
