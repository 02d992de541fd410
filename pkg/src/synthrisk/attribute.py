"""Attribute disclosure: the staged intruder pipeline from iS to DiSDiO."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError, DataError
from .tabulate import AlignedPair, Proportions


@dataclass(frozen=True)
class AttribMeasures:
    Dorig: float
    Dsyn: float
    iS: float
    DiS: float
    DiSCO: float
    DiSDiO: float
    DCAP_d: float
    max_denom: int
    mean_denom: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def q_uniform_in_syn(pair: AlignedPair) -> np.ndarray:
    """Per q: every synthetic record with this q has the same target level."""
    qmax = np.zeros(pair.n_q, dtype=np.int64)
    np.maximum.at(qmax, pair.cell_q, pair.s)
    return (pair.s_q > 0) & (qmax == pair.s_q)


def attrib_measures(pair: AlignedPair, props: Proportions) -> AttribMeasures:
    if pair.N_d <= 0:
        raise DataError("attribute measures need a non-empty original table")
    nd, ns = pair.N_d, pair.N_s
    d = pair.d
    in_syn = pair.s_q[pair.cell_q] > 0
    uniform = q_uniform_in_syn(pair)[pair.cell_q]
    disco = props.ps_one
    disdio = disco & props.pd_one

    # denominators of the records disclosive in both tables
    denom_d = d[disdio]
    denom_s = pair.s[disdio]
    n_den = int(denom_d.sum())
    max_denom = int(denom_s[denom_d > 0].max()) if n_den else 0
    mean_denom = float((denom_d * denom_s).sum() / n_den) if n_den else 0.0

    return AttribMeasures(
        Dorig=100.0 * int(d[props.pd_one].sum()) / nd,
        Dsyn=100.0 * int(pair.s[disco].sum()) / ns if ns else 0.0,
        iS=100.0 * int(d[in_syn].sum()) / nd,
        DiS=100.0 * int(d[in_syn & uniform].sum()) / nd,
        DiSCO=100.0 * int(d[disco].sum()) / nd,
        DiSDiO=100.0 * int(d[disdio].sum()) / nd,
        DCAP_d=100.0 * float((props.ps * d).sum()) / nd,
        max_denom=max_denom,
        mean_denom=mean_denom,
    )


def generalized_disclosure(pair: AlignedPair, props: Proportions, tau: float) -> float:
    """Percent of original records attributed correctly with probability at least ``tau``.

    Each record counts with weight equal to its attribution probability.
    ``tau=1`` gives DiSCO and ``tau=0`` gives DCAP_d.
    """
    if not 0.0 <= tau <= 1.0:
        raise ConfigError(f"tau must lie in [0, 1], got {tau}")
    if pair.N_d <= 0:
        raise DataError("attribute measures need a non-empty original table")
    ps = props.ps
    hit = props.ps_one if tau == 1.0 else (ps >= tau) & (ps > 0)
    return 100.0 * float((ps[hit] * pair.d[hit]).sum()) / pair.N_d
