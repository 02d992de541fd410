import json

import pytest

from synthrisk.config import RunConfig, load_config
from synthrisk.errors import ConfigError


def test_from_dict_full():
    cfg = RunConfig.from_dict({
        "orig": "o.csv", "syn": "s.csv", "keys": ["a", "b"], "targets": ["t"],
        "ngroups_keys": [0, 5], "ngroups_targets": [10], "thresh_1way": [10, 85],
        "not_target": ["x"], "exclude_pairs": [["a", "1", "x"]], "tau": 0.5, "na_codes": {"b": -8},
    })
    assert cfg.syn_paths == ["s.csv"]
    assert cfg.grouping.ngroups_keys == (0, 5)
    assert cfg.thresholds.thresh_1way == (10, 85.0)
    assert cfg.exclusions.excluded_pairs == (("a", "1", "x"),)
    assert cfg.na_codes == {"b": [-8.0]}


@pytest.mark.parametrize("data", [
    {},
    {"keys": []},
    {"keys": ["a", "a"]},
    {"keys": ["a"], "targets": ["a"]},
    {"keys": ["a"], "format": "xml"},
    {"keys": ["a"], "to_print": ["nope"]},
    {"keys": ["a"], "tau": 2},
    {"keys": ["a"], "fractions": [0]},
    {"keys": ["a"], "bogus": 1},
    {"keys": ["a"], "thresh_2way": [5]},
    {"keys": ["a"], "denom_lim": 0},
])
def test_invalid(data):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(data)


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"keys": ["a"]}))
    assert load_config(p) == {"keys": ["a"]}
    p.write_text("[1]")
    with pytest.raises(ConfigError):
        load_config(p)
    p.write_text("{")
    with pytest.raises(ConfigError):
        load_config(p)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
