"""Coweight lattices of the split classical families and their dominance orders.

Three families are modeled, each with exact integer coordinates:

* family A: general linear groups of rank n; the lattice is Z^n.
* family B: odd orthogonal groups of rank n; an element is the first half
  of the symmetric vector (a_1, ..., a_n, 0, -a_n, ..., -a_1).
* family D: even orthogonal groups modulo the central sign, rank n >= 2.
  The lattice has two sectors: integer vectors, and vectors whose entries
  all lie in Z + 1/2.  The half-integral sector is stored doubled, so its
  entries are odd integers and all arithmetic stays integral.

Everything in this module is a pure function of immutable values, safe for
unrestricted parallel use.  Arithmetic is exact (`int` and
`fractions.Fraction`); the order relations below rest on integer-gap
arguments that floating point would destroy.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import accumulate
from typing import Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple[Scalar, ...]


class Family(Enum):
    """The three split classical families handled by this package."""

    A = "A"
    B = "B"
    D = "D"


class Sector(Enum):
    """Coordinate sector of a family-D coweight.

    ``HALF`` stores doubled coordinates: every entry is an odd integer and
    represents half its value.  Families A and B only have ``INTEGRAL``.
    """

    INTEGRAL = "integral"
    HALF = "half"


class MismatchError(ValueError):
    """Operands live in different lattices (family, rank, or sector)."""


class NotDominantError(ValueError):
    """An argument required to be dominant is not."""


class ShapeError(ValueError):
    """A Levi shape is malformed for its group kind."""


class PreconditionError(ValueError):
    """An operation's mathematical precondition does not hold."""


class NormalizationRequired(PreconditionError):
    """The batch-average projection is not dominant.

    Re-posing the input so that its projection is dominant (a Weyl change
    of basis, which also permutes the Levi shape) is left to the caller.
    """


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""


@dataclass(frozen=True)
class GroupKind:
    """A split classical group: a family letter plus its rank."""

    family: Family
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if self.family is Family.D and self.rank < 2:
            raise ValueError("family D requires rank >= 2")

    def __str__(self) -> str:
        return f"{self.family.value}{self.rank}"


@dataclass(frozen=True)
class Coweight:
    """An exact lattice point, tagged with its group kind and sector."""

    kind: GroupKind
    entries: tuple[int, ...]
    sector: Sector = Sector.INTEGRAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.kind.rank:
            raise MismatchError(
                f"expected {self.kind.rank} entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise TypeError("coweight entries must be integers")
        if self.sector is Sector.HALF:
            if self.kind.family is not Family.D:
                raise MismatchError("the half sector only exists for family D")
            if any(e % 2 == 0 for e in self.entries):
                raise MismatchError(
                    "half-sector entries are doubled and must all be odd"
                )

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


def coweight(
    family: Family | str,
    entries: Sequence[int],
    sector: Sector | str = Sector.INTEGRAL,
) -> Coweight:
    """Convenience constructor: ``coweight("B", (2, 1, 0))``."""
    fam = Family(family) if not isinstance(family, Family) else family
    sec = Sector(sector) if not isinstance(sector, Sector) else sector
    return Coweight(GroupKind(fam, len(entries)), tuple(entries), sec)


def prefix_sums(v: Sequence[Scalar]) -> Vector:
    """Running sums (s_1, s_1+s_2, ...) of a vector, exactly."""
    return tuple(accumulate(v))


# ---------------------------------------------------------------------------
# Dominance and Weyl normal forms
# ---------------------------------------------------------------------------

def _vec_is_dominant(family: Family, v: Sequence[Scalar]) -> bool:
    n = len(v)
    if any(v[i] < v[i + 1] for i in range(n - 1)):
        return False
    if family is Family.B:
        return v[-1] >= 0
    if family is Family.D:
        return v[-2] + v[-1] >= 0
    return True


def _vec_dominant_rep(family: Family, v: Sequence[Scalar]) -> Vector:
    """The unique dominant vector in the Weyl orbit of ``v``.

    Family A permutes coordinates; family B also flips any signs; family D
    flips signs in pairs, so when no entry vanishes the sign of the last
    coordinate remembers the parity of the flips.
    """
    if family is Family.A:
        return tuple(sorted(v, reverse=True))
    mags = sorted((abs(e) for e in v), reverse=True)
    if family is Family.B:
        return tuple(mags)
    negatives = sum(1 for e in v if e < 0)
    if negatives % 2 == 1 and all(e != 0 for e in v):
        mags[-1] = -mags[-1]
    return tuple(mags)


def is_dominant(x: Coweight) -> bool:
    """Whether ``x`` lies in the closed dominant chamber of its family."""
    return _vec_is_dominant(x.kind.family, x.entries)


def dominant_representative(x: Coweight) -> Coweight:
    """The unique dominant element of the Weyl orbit of ``x``."""
    rep = _vec_dominant_rep(x.kind.family, x.entries)
    return Coweight(x.kind, tuple(int(e) for e in rep), x.sector)


def weyl_orbit_equivalent(x: Coweight, y: Coweight) -> bool:
    """Whether ``x`` and ``y`` lie in the same Weyl orbit."""
    if x.kind != y.kind:
        raise MismatchError(f"kind mismatch: {x.kind} vs {y.kind}")
    if x.sector is not y.sector:
        return False
    family = x.kind.family
    if family is Family.A:
        return sorted(x.entries) == sorted(y.entries)
    if sorted(map(abs, x.entries)) != sorted(map(abs, y.entries)):
        return False
    if family is Family.B:
        return True
    if 0 in x.entries:  # a zero coordinate absorbs any sign-flip parity
        return True
    neg_x = sum(1 for e in x.entries if e < 0)
    neg_y = sum(1 for e in y.entries if e < 0)
    return neg_x % 2 == neg_y % 2


# ---------------------------------------------------------------------------
# The partial order and hull membership
# ---------------------------------------------------------------------------

def _vec_leq(family: Family, x: Sequence[Scalar], m: Sequence[Scalar]) -> bool:
    """Fundamental-weight inequalities of ``x <= m`` on raw vectors.

    Family A: prefix sums never exceed and total sums agree (the total-sum
    equality is the coroot-span constraint, which is vacuous for B and D).
    Family B: all prefix sums never exceed.
    Family D: prefix sums through n-2 never exceed, plus the two spin
    conditions S_{n-1}(x) - x_n <= S_{n-1}(m) - m_n and S_n(x) <= S_n(m).
    """
    n = len(m)
    sx = prefix_sums(x)
    sm = prefix_sums(m)
    if family is Family.A:
        if sx[-1] != sm[-1]:
            return False
        return all(sx[i] <= sm[i] for i in range(n - 1))
    if family is Family.B:
        return all(sx[i] <= sm[i] for i in range(n))
    if any(sx[i] > sm[i] for i in range(n - 2)):
        return False
    if sx[n - 2] - x[n - 1] > sm[n - 2] - m[n - 1]:
        return False
    return sx[n - 1] <= sm[n - 1]


def _coerce_vector(x: Coweight | Sequence[Scalar], mu: Coweight) -> Vector:
    """Validate ``x`` against ``mu``'s lattice and return its raw entries."""
    if isinstance(x, Coweight):
        if x.kind != mu.kind:
            raise MismatchError(f"kind mismatch: {x.kind} vs {mu.kind}")
        if x.sector is not mu.sector:
            raise MismatchError(
                f"sector mismatch: {x.sector.value} vs {mu.sector.value}"
            )
        return x.entries
    vec = tuple(x)
    if len(vec) != mu.kind.rank:
        raise MismatchError(
            f"expected {mu.kind.rank} entries, got {len(vec)}"
        )
    return vec


def leq(x: Coweight | Sequence[Scalar], mu: Coweight) -> bool:
    """The dominance-order inequalities ``x <= mu``.

    ``mu`` must be dominant.  ``x`` may be a coweight or a raw vector of
    exact rationals (batch averages are rational, so the order must accept
    them).  This is the real half-space condition only; the lattice-class
    condition is :func:`same_class_XG`.
    """
    if not is_dominant(mu):
        raise NotDominantError(f"mu={mu} is not dominant")
    vec = _coerce_vector(x, mu)
    return _vec_leq(mu.kind.family, vec, mu.entries)


def same_class_XG(x: Coweight, mu: Coweight) -> bool:
    """Whether ``x`` and ``mu`` agree in the quotient by the full coroot lattice.

    Family A: equal coordinate sums.  Family B and integral D: the sums
    differ by an even integer.  Half-sector D (doubled coordinates): the
    sums differ by a multiple of four.  The two sectors of D are distinct
    classes.
    """
    if x.kind != mu.kind:
        raise MismatchError(f"kind mismatch: {x.kind} vs {mu.kind}")
    if x.sector is not mu.sector:
        return False
    diff = sum(mu.entries) - sum(x.entries)
    family = x.kind.family
    if family is Family.A:
        return diff == 0
    if family is Family.B or x.sector is Sector.INTEGRAL:
        return diff % 2 == 0
    return diff % 4 == 0


def in_hull(x: Coweight | Sequence[Scalar], mu: Coweight) -> bool:
    """Whether ``x`` lies in the convex hull of the Weyl orbit of ``mu``.

    Computed by normalizing ``x`` to its dominant representative (extended
    verbatim to rational vectors) and checking ``leq`` against ``mu``.  The
    brute-force cross-check living in :mod:`coweights.oracle` certifies the
    same membership from an explicit convex combination.
    """
    if not is_dominant(mu):
        raise NotDominantError(f"mu={mu} is not dominant")
    vec = _coerce_vector(x, mu)
    family = mu.kind.family
    rep = _vec_dominant_rep(family, vec)
    return _vec_leq(family, rep, mu.entries)
