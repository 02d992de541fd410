import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from synthrisk.attribute import attrib_measures
from synthrisk.cap import CapMeasures, cap_measures
from synthrisk.tabulate import build_pair, proportions

from conftest import table
from oracle import brute_force, random_instance, records


def _caps(o, s, keys=("k",), t="t"):
    pair = build_pair(o, s, list(keys), t)
    props = proportions(pair)
    return pair, cap_measures(pair, props), attrib_measures(pair, props)


def test_toy5(toy5):
    _, c, _ = _caps(*toy5)
    # baseCAPd: t shares x .4, y .4, z .2 -> (.4+.4+.4+.2+.4)/5
    assert c.baseCAPd == pytest.approx(36)
    assert c.CAPd == pytest.approx(80)
    # CAPs: A 1, B .5, B .5, E 1, D 1 -> 4/5
    assert c.CAPs == pytest.approx(80)
    assert c.N_b == 4 and c.N_bp == 3
    assert c.DCAP_d == pytest.approx(30)
    assert c.DCAP_b == pytest.approx(37.5)
    assert c.DCAP_s == pytest.approx(30)
    assert c.TCAP_s == pytest.approx(20)
    assert c.TCAP_b == pytest.approx(25)
    assert c.TCAP == pytest.approx(100 / 3)
    assert c.undefined == ()


def test_zero_denominators_reported():
    o = table([("a", "x")])
    s = table([("b", "x")])
    _, c, _ = _caps(o, s)
    assert c.N_b == 0 and c.N_bp == 0
    assert c.DCAP_b == 0 and c.TCAP_b == 0 and c.TCAP == 0
    assert set(c.undefined) == {"DCAP_b", "TCAP_b", "TCAP"}


def test_identical_uniform_data():
    rows = [("a", "x"), ("a", "x"), ("b", "y")]
    _, c, a = _caps(table(rows), table(rows))
    assert a.DiSCO == 100 and c.TCAP == 100 and c.CAPd == 100 and c.CAPs == 100


def test_as_dict_lists_measures(toy5):
    _, c, _ = _caps(*toy5)
    d = c.as_dict()
    assert set(CapMeasures.MEASURES) <= set(d)
    assert d["undefined"] == []


def test_against_oracle(rng):
    for _ in range(40):
        orig, syn, keys, t = random_instance(rng, equal_sizes=False)
        want = brute_force(records(orig, keys, t), records(syn, keys, t))
        _, c, _ = _caps(orig, syn, keys, t)
        for name in CapMeasures.MEASURES + ("N_b", "N_bp"):
            assert getattr(c, name) == pytest.approx(want[name], abs=1e-9), name


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_equal_size_chains(seed):
    orig, syn, keys, t = random_instance(np.random.default_rng(seed), max_rows=120)
    _, c, a = _caps(orig, syn, keys, t)
    eps = 1e-9
    assert a.DiSCO <= c.TCAP_b + eps
    assert c.TCAP_b <= c.TCAP + eps
    assert c.DCAP_d <= c.DCAP_b + eps
    assert a.DiSCO <= c.DCAP_d + eps
    for name in CapMeasures.MEASURES:
        assert 0 <= getattr(c, name) <= 100 + eps
