"""Toy synthesizers for demos and tests.

These are not disclosure-safe synthesis methods: ``row_bootstrap`` copies
whole original records, ``independent_marginals`` breaks every association
between columns. Between them they bracket the risk of a real synthesizer.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, DataError
from .ingest import ColumnTable

ROW_BOOTSTRAP = "row_bootstrap"
INDEPENDENT_MARGINALS = "independent_marginals"
MODES = (ROW_BOOTSTRAP, INDEPENDENT_MARGINALS)


def bootstrap_synth(orig: ColumnTable, mode: str = ROW_BOOTSTRAP, n_out: int | None = None,
                    seed: int | None = 0) -> ColumnTable:
    if mode not in MODES:
        raise ConfigError(f"unknown synthesis mode {mode!r}; choose from {MODES}")
    if orig.n_rows == 0:
        raise DataError("cannot synthesize from an empty original")
    n_out = orig.n_rows if n_out is None else int(n_out)
    if n_out < 1:
        raise ConfigError(f"n_out must be at least 1, got {n_out}")
    rng = np.random.default_rng(seed)
    if mode == ROW_BOOTSTRAP:
        return orig.take(rng.integers(0, orig.n_rows, n_out))
    cols = tuple(c.take(rng.integers(0, orig.n_rows, n_out)) for c in orig.columns)
    return ColumnTable(cols, n_out)
