"""Identity disclosure: uniqueness of q in the original and synthetic tables."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import DataError
from .tabulate import AlignedPair


@dataclass(frozen=True)
class IdentMeasures:
    """Percentages; UiS is relative to the synthetic size, the rest to the original."""

    UiO: float
    UiS: float
    UiOiS: float
    repU: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def ident_measures(pair: AlignedPair) -> IdentMeasures:
    if pair.N_d <= 0:
        raise DataError("identity measures need a non-empty original table")
    if pair.N_s <= 0:
        raise DataError("identity measures need a non-empty synthetic table")
    uo = pair.d_q == 1
    us = pair.s_q == 1
    return IdentMeasures(
        UiO=100.0 * int(uo.sum()) / pair.N_d,
        UiS=100.0 * int(us.sum()) / pair.N_s,
        UiOiS=100.0 * int((uo & (pair.s_q > 0)).sum()) / pair.N_d,
        repU=100.0 * int((uo & us).sum()) / pair.N_d,
    )
