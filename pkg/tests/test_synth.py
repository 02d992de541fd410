import pytest

from synthrisk.errors import ConfigError
from synthrisk.synth import bootstrap_synth

from conftest import table


def _orig():
    return table([(str(i), "x" if i % 2 else "y") for i in range(50)])


def test_row_bootstrap_copies_rows():
    o = _orig()
    s = bootstrap_synth(o, seed=1)
    pairs = set(zip(o["k"].labels, o["t"].labels))
    assert s.n_rows == 50
    assert set(zip(s["k"].labels, s["t"].labels)) <= pairs


def test_marginals_and_size():
    s = bootstrap_synth(_orig(), "independent_marginals", n_out=200, seed=2)
    assert s.n_rows == 200
    assert set(s["t"].labels) <= {"x", "y"}


def test_seeded():
    assert bootstrap_synth(_orig(), seed=3).equals(bootstrap_synth(_orig(), seed=3))


def test_bad_mode():
    with pytest.raises(ConfigError):
        bootstrap_synth(_orig(), "gan")
    with pytest.raises(ConfigError):
        bootstrap_synth(_orig(), n_out=0)
