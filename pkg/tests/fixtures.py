"""Constructed data sets reproducing the published check examples."""

from synthrisk.ingest import ColumnTable


def one_way_fixture():
    # 5000 records with distinct keys, 4432 of them NO; the synthetic data
    # copies 2482 NO and 123 YES records once each, plus unmatched filler
    names = ["id", "smoke"]
    orig = [(f"p{i}", "NO" if i < 4432 else "YES") for i in range(5000)]
    syn = [orig[i] for i in range(2482)] + [orig[4432 + i] for i in range(123)]
    syn += [(f"s{i}", "NO") for i in range(5000 - len(syn))]
    return ColumnTable.from_rows(names, orig), ColumnTable.from_rows(names, syn)


def two_way_fixture():
    # age 19 has 92 records, 91 of them SINGLE, spread over 10 regions;
    # each (19, region) group appears 5 times in the synthetic data, all SINGLE
    names = ["age", "region", "marital"]
    orig, syn = [], []
    for i in range(91):
        orig.append(("19", f"r{i % 10}", "SINGLE"))
    orig.append(("19", "r0", "MARRIED"))
    for r in range(10):
        for a in range(30, 50):
            orig.append((str(a), f"r{r}", "MARRIED" if a % 3 else "SINGLE"))
            syn.append((str(a), f"r{r}", "MARRIED" if a % 2 else "WIDOWED"))
        syn += [("19", f"r{r}", "SINGLE")] * 5
    return ColumnTable.from_rows(names, orig), ColumnTable.from_rows(names, syn)


def level_share_fixture(n_level: int, n_other: int):
    """Distinct-key records, all copied once: n_level with target A, n_other with B."""
    rows = [(f"q{i}", "A") for i in range(n_level)] + [(f"q{n_level + i}", "B") for i in range(n_other)]
    t = ColumnTable.from_rows(["k", "t"], rows)
    return t, t


def survey_table(n: int, seed: int) -> ColumnTable:
    """Survey-like data: four demographic keys and targets that depend on them."""
    import numpy as np

    rng = np.random.default_rng(seed)
    sex = rng.choice(["M", "F"], n)
    age = np.clip(rng.normal(45, 17, n).round(), 16, 90).astype(int)
    region = rng.choice([f"R{i:02d}" for i in range(16)], n, p=np.arange(16, 0, -1) / 136)
    place = rng.choice(["city", "town", "village", "rural"], n, p=[.4, .3, .2, .1])
    marital = np.where(age < 30, np.where(rng.random(n) < .85, "SINGLE", "MARRIED"),
                       rng.choice(["MARRIED", "SINGLE", "WIDOWED", "DIVORCED"], n, p=[.6, .15, .15, .1]))
    smoke = np.where(rng.random(n) < np.where(sex == "M", .3, .2), "YES", "NO")
    edu = rng.choice(["primary", "secondary", "vocational", "higher"], n, p=[.1, .4, .25, .25])
    work = np.where(age >= 65, "retired", rng.choice(["employed", "unemployed", "student"], n, p=[.75, .1, .15]))
    income = np.where(place == "city", "high", rng.choice(["low", "mid", "high"], n, p=[.4, .4, .2]))
    names = ["sex", "age", "region", "placesize", "marital", "smoke", "edu", "work", "income"]
    cols = [sex, age.astype(str), region, place, marital, smoke, edu, work, income]
    return ColumnTable.from_rows(names, list(zip(*[c.tolist() for c in cols])))


SURVEY_KEYS = ["sex", "age", "region", "placesize"]
SURVEY_TARGETS = ["marital", "smoke", "edu", "work", "income"]
