"""Shared grid helpers for the exhaustive test sweeps."""

from __future__ import annotations

from itertools import product

from coweights import Coweight, Family, GroupKind, Sector

# every (family, sector) combination the package supports
FAMILY_SECTORS = [
    (Family.A, Sector.INTEGRAL),
    (Family.B, Sector.INTEGRAL),
    (Family.D, Sector.INTEGRAL),
    (Family.D, Sector.HALF),
]


def entry_values(sector: Sector, bound: int) -> list[int]:
    if sector is Sector.HALF:
        return [v for v in range(-bound, bound + 1) if v % 2 != 0]
    return list(range(-bound, bound + 1))


def box_coweights(
    family: Family, sector: Sector, rank: int, bound: int
) -> list[Coweight]:
    """Every coweight of the kind with entries in [-bound, bound]."""
    kind = GroupKind(family, rank)
    vals = entry_values(sector, bound)
    return [
        Coweight(kind, vec, sector) for vec in product(vals, repeat=rank)
    ]


def ranks_for(family: Family, max_rank: int) -> list[int]:
    start = 2 if family is Family.D else 1
    return list(range(start, max_rank + 1))
