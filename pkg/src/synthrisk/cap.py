"""Correct attribution probability measures (baseline CAP, DCAP and TCAP variants).

Measures share two numerators, the expected number of correct attributions
``U = sum(ps * d)`` and the number attributed with certainty and correctly
``V = sum(d | ps = 1)``, over different denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .attribute import q_uniform_in_syn
from .errors import DataError
from .tabulate import AlignedPair, Proportions


@dataclass(frozen=True)
class CapMeasures:
    baseCAPd: float
    CAPd: float
    CAPs: float
    DCAP_b: float
    DCAP_s: float
    DCAP_d: float
    TCAP_s: float
    TCAP_b: float
    TCAP: float
    N_b: int
    N_bp: int
    # measures whose denominator was zero; reported as 0
    undefined: tuple[str, ...] = field(default=())

    MEASURES = ("baseCAPd", "CAPd", "CAPs", "DCAP_b", "DCAP_s", "DCAP_d", "TCAP_s", "TCAP_b", "TCAP")

    def as_dict(self) -> dict:
        out = {m: getattr(self, m) for m in self.MEASURES}
        out.update(N_b=self.N_b, N_bp=self.N_bp, undefined=list(self.undefined))
        return out


def cap_measures(pair: AlignedPair, props: Proportions) -> CapMeasures:
    nd, ns = pair.N_d, pair.N_s
    if nd <= 0 or ns <= 0:
        raise DataError("CAP measures need non-empty original and synthetic tables")
    d, s = pair.d, pair.s
    n_b = pair.N_b
    n_bp = int(pair.d_q[q_uniform_in_syn(pair)].sum())
    u = float((props.ps * d).sum())
    v = int(d[props.ps_one].sum())

    undefined = []

    def pct(num, den, name):
        if den == 0:
            undefined.append(name)
            return 0.0
        return 100.0 * num / den

    return CapMeasures(
        baseCAPd=100.0 * float((props.pd_t ** 2).sum()),
        CAPd=100.0 * float((props.pd * d).sum()) / nd,
        CAPs=100.0 * float((props.ps * s).sum()) / ns,
        DCAP_b=pct(u, n_b, "DCAP_b"),
        DCAP_s=100.0 * u / ns,
        DCAP_d=100.0 * u / nd,
        TCAP_s=100.0 * v / ns,
        TCAP_b=pct(v, n_b, "TCAP_b"),
        TCAP=pct(v, n_bp, "TCAP"),
        N_b=n_b,
        N_bp=n_bp,
        undefined=tuple(undefined),
    )
