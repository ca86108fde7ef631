"""Standard Levi subgroups: batch machinery, projections, and minuscule lifts.

A standard Levi subgroup of a classical group is a product of general
linear blocks followed by an orthogonal block of the same family:

    GL_{n_1} x ... x GL_{n_r} x SO-factor of rank j,   n_1 + ... + n_r + j = n.

Coordinates split into *batches*: one batch of size n_k per GL block and a
final batch of size j for the orthogonal factor.  The quotient of the
coweight lattice by the Levi's coroot lattice is represented concretely:
every class has a unique block-dominant, block-minuscule lift, which
serves as its canonical, hashable normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (
    Coweight,
    Family,
    GroupKind,
    MismatchError,
    NotDominantError,
    PreconditionError,
    Sector,
    ShapeError,
    is_dominant,
    prefix_sums,
)


@dataclass(frozen=True)
class LeviShape:
    """Block sizes (n_1, ..., n_r) plus the rank j of the orthogonal factor.

    For family D the value j = 1 is rejected: the same subgroup is
    described by dropping the orthogonal factor and appending a trailing
    GL_1 block, and callers are redirected to that shape.
    """

    kind: GroupKind
    gl_sizes: tuple[int, ...]
    so_rank: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "gl_sizes", tuple(self.gl_sizes))
        if any(s < 1 for s in self.gl_sizes):
            raise ShapeError(f"block sizes must be positive: {self.gl_sizes}")
        if self.so_rank < 0:
            raise ShapeError(f"orthogonal rank must be >= 0: {self.so_rank}")
        if sum(self.gl_sizes) + self.so_rank != self.kind.rank:
            raise ShapeError(
                f"blocks {self.gl_sizes} plus orthogonal rank {self.so_rank} "
                f"do not fill rank {self.kind.rank}"
            )
        if self.kind.family is Family.A and self.so_rank != 0:
            raise ShapeError("family A has no orthogonal factor")
        if self.kind.family is Family.D and self.so_rank == 1:
            raise ShapeError(
                "orthogonal rank 1 describes the same subgroup as rank 0 "
                "with an extra trailing block of size 1; use "
                f"gl_sizes={self.gl_sizes + (1,)}, so_rank=0"
            )

    @property
    def num_gl_batches(self) -> int:
        return len(self.gl_sizes)

    def sigma(self, k: int) -> int:
        """n_1 + ... + n_k; with an orthogonal factor, sigma(r+1) = n."""
        r = self.num_gl_batches
        if k == r + 1 and self.so_rank > 0:
            return self.kind.rank
        if not 0 <= k <= r:
            raise IndexError(f"batch index {k} out of range for {self}")
        return sum(self.gl_sizes[:k])

    @property
    def gl_slices(self) -> tuple[slice, ...]:
        out = []
        start = 0
        for size in self.gl_sizes:
            out.append(slice(start, start + size))
            start += size
        return tuple(out)

    @property
    def so_slice(self) -> slice:
        n = self.kind.rank
        return slice(n - self.so_rank, n)

    def __str__(self) -> str:
        gl = ",".join(str(s) for s in self.gl_sizes)
        if self.so_rank:
            return f"{gl};{self.so_rank}"
        return gl


@dataclass(frozen=True)
class LeviPoint:
    """A vector constant on each batch and zero on the orthogonal batch.

    Stores one exact rational per GL batch (in doubled units for the half
    sector).  This is the image of a coweight under batch averaging, i.e.
    its projection to the subspace fixed by the Levi's Weyl group.
    """

    shape: LeviShape
    averages: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "averages", tuple(Fraction(a) for a in self.averages)
        )
        if len(self.averages) != self.shape.num_gl_batches:
            raise MismatchError(
                f"expected {self.shape.num_gl_batches} averages, "
                f"got {len(self.averages)}"
            )

    def expand(self) -> tuple[Fraction, ...]:
        """The full rational vector: averages repeated, zeros on the SO batch."""
        out: list[Fraction] = []
        for avg, size in zip(self.averages, self.shape.gl_sizes):
            out.extend([avg] * size)
        out.extend([Fraction(0)] * self.shape.so_rank)
        return tuple(out)


@dataclass(frozen=True)
class XMClass:
    """A class modulo the Levi's coroot lattice, held by its canonical lift.

    Two classes are equal exactly when their canonical lifts agree
    entrywise, so the dataclass equality/hash is the class equality.
    """

    shape: LeviShape
    canonical_lift: Coweight

    @property
    def batch_sums(self) -> tuple[int, ...]:
        e = self.canonical_lift.entries
        return tuple(sum(e[sl]) for sl in self.shape.gl_slices)

    @property
    def so_class(self) -> int | None:
        if self.shape.so_rank == 0:
            return None
        total = sum(self.canonical_lift.entries[self.shape.so_slice])
        modulus = 4 if self.canonical_lift.sector is Sector.HALF else 2
        return total % modulus

    def sort_key(self) -> tuple[int, ...]:
        return self.canonical_lift.entries


def _check_compatible(shape: LeviShape, x: Coweight) -> None:
    if shape.kind != x.kind:
        raise MismatchError(f"kind mismatch: shape {shape.kind} vs {x.kind}")
    if x.sector is Sector.HALF and shape.kind.family is not Family.D:
        raise MismatchError("half sector requires family D")


def project(shape: LeviShape, x: Coweight) -> LeviPoint:
    """Batch averages of ``x``; the orthogonal batch contributes zero.

    This equals the average of ``x`` over the Levi's Weyl group orbit: the
    symmetric group of each GL batch averages the batch, and the sign
    flips of the orthogonal factor cancel its batch entirely.
    """
    _check_compatible(shape, x)
    averages = tuple(
        Fraction(sum(x.entries[sl]), size)
        for sl, size in zip(shape.gl_slices, shape.gl_sizes)
    )
    return LeviPoint(shape, averages)


def is_M_dominant(shape: LeviShape, x: Coweight) -> bool:
    """Dominance for the Levi: each GL batch nonincreasing, and the
    orthogonal batch dominant for its own factor."""
    _check_compatible(shape, x)
    e = x.entries
    for sl in shape.gl_slices:
        batch = e[sl]
        if any(batch[i] < batch[i + 1] for i in range(len(batch) - 1)):
            return False
    j = shape.so_rank
    if j == 0:
        return True
    so = e[shape.so_slice]
    if any(so[i] < so[i + 1] for i in range(j - 1)):
        return False
    if shape.kind.family is Family.B:
        return so[-1] >= 0
    return so[-2] + so[-1] >= 0  # family D has j != 1, so j >= 2 here


def is_M_minuscule(shape: LeviShape, x: Coweight) -> bool:
    """Whether every Levi root pairs with ``x`` in {-1, 0, 1}.

    In the doubled half sector the admissible pairings are {-2, 0, 2}.
    Concretely: entries within a GL batch spread by at most 1 (2 when
    doubled); the orthogonal batch has at most one nonzero entry, of
    absolute value 1 (all entries +-1 in the doubled sector).
    """
    _check_compatible(shape, x)
    e = x.entries
    spread = 2 if x.sector is Sector.HALF else 1
    for sl in shape.gl_slices:
        batch = e[sl]
        if batch and max(batch) - min(batch) > spread:
            return False
    j = shape.so_rank
    if j == 0:
        return True
    so = e[shape.so_slice]
    if x.sector is Sector.HALF:
        return all(v in (-1, 1) for v in so)
    return sum(1 for v in so if v != 0) <= 1 and all(abs(v) <= 1 for v in so)


def _so_class_reps(
    family: Family, j: int, sector: Sector
) -> dict[int, tuple[int, ...]]:
    """Canonical dominant minuscule orthogonal batches, keyed by class."""
    if sector is Sector.HALF:
        plus = (1,) * j
        minus = (1,) * (j - 1) + (-1,)
        return {sum(plus) % 4: plus, sum(minus) % 4: minus}
    return {0: (0,) * j, 1: (1,) + (0,) * (j - 1)}


def minuscule_lift(
    shape: LeviShape,
    sums: Sequence[int],
    so_class: int | None = None,
    sector: Sector = Sector.INTEGRAL,
) -> Coweight:
    """The unique block-dominant, block-minuscule coweight with the given
    batch sums and orthogonal class.

    Each GL batch spreads its sum as evenly as possible in nonincreasing
    order (floor values with the remainder distributed as +1 steps); in the
    doubled sector the same recipe runs in steps of two over odd entries.
    The orthogonal batch is the canonical representative of ``so_class``.
    """
    sums = tuple(sums)
    if len(sums) != shape.num_gl_batches:
        raise MismatchError(
            f"expected {shape.num_gl_batches} batch sums, got {len(sums)}"
        )
    if not all(isinstance(s, int) for s in sums):
        raise TypeError("batch sums must be integers")
    if sector is Sector.HALF and shape.kind.family is not Family.D:
        raise MismatchError("half sector requires family D")

    entries: list[int] = []
    for s, size in zip(sums, shape.gl_sizes):
        if sector is Sector.HALF:
            if (s - size) % 2 != 0:
                raise PreconditionError(
                    f"half-sector batch sum {s} must have the parity of the "
                    f"batch size {size} (all entries are odd)"
                )
            q, t = divmod((s - size) // 2, size)
            ys = [q + 1] * t + [q] * (size - t)
            entries.extend(2 * y + 1 for y in ys)
        else:
            q, t = divmod(s, size)
            entries.extend([q + 1] * t + [q] * (size - t))

    j = shape.so_rank
    if j == 0:
        if so_class is not None:
            raise PreconditionError(
                "so_class given but the shape has no orthogonal factor"
            )
    else:
        reps = _so_class_reps(shape.kind.family, j, sector)
        if so_class is None:
            raise PreconditionError("so_class required: shape has an "
                                    "orthogonal factor")
        key = so_class % 4 if sector is Sector.HALF else so_class
        if key not in reps:
            raise PreconditionError(
                f"invalid so_class {so_class} for {shape} "
                f"(valid: {sorted(reps)})"
            )
        entries.extend(reps[key])

    return Coweight(shape.kind, tuple(entries), sector)


def class_of(shape: LeviShape, x: Coweight) -> XMClass:
    """The class of ``x`` modulo the Levi's coroot lattice.

    GL batches contribute their sums (differences there are zero-sum
    vectors); the orthogonal factor contributes its sum mod 2, or mod 4 in
    the doubled sector, because its coroot lattice is the even-sum
    sublattice.
    """
    _check_compatible(shape, x)
    sums = tuple(sum(x.entries[sl]) for sl in shape.gl_slices)
    so_class: int | None = None
    if shape.so_rank:
        total = sum(x.entries[shape.so_slice])
        so_class = total % (4 if x.sector is Sector.HALF else 2)
    return XMClass(shape, minuscule_lift(shape, sums, so_class, x.sector))


def leq_batch_ends(shape: LeviShape, beta: LeviPoint, mu: Coweight) -> bool:
    """The dominance inequalities restricted to batch-end positions.

    For a vector constant on batches (zero on the orthogonal batch) whose
    difference from ``mu`` lies in the coroot span, checking the order
    relation only at the end of each batch is equivalent to the full check:
    the remaining inequalities pair against weights fixed by the Levi.

    Family A checks prefix sums at batch ends k < r plus total-sum
    equality.  Family B checks batch ends k <= r.  Family D checks batch
    ends through position n-2, the total sum, and, when the shape is all
    GL blocks with a trailing size-1 block, the spin inequality at n-1.
    """
    if shape.kind != mu.kind:
        raise MismatchError(f"kind mismatch: shape {shape.kind} vs {mu.kind}")
    if beta.shape != shape:
        raise MismatchError("point was built over a different shape")
    if not is_dominant(mu):
        raise NotDominantError(f"mu={mu} is not dominant")

    expanded = beta.expand()
    sb = prefix_sums(expanded)
    sm = prefix_sums(mu.entries)
    family = shape.kind.family
    n = shape.kind.rank
    r = shape.num_gl_batches

    if family is Family.A:
        if sb[-1] != sm[-1]:
            raise PreconditionError(
                "family A requires equal total sums (coroot span): "
                f"{sb[-1]} vs {sm[-1]}"
            )
        return all(
            sb[shape.sigma(k) - 1] <= sm[shape.sigma(k) - 1]
            for k in range(1, r)
        )

    if family is Family.B:
        return all(
            sb[shape.sigma(k) - 1] <= sm[shape.sigma(k) - 1]
            for k in range(1, r + 1)
        )

    for k in range(1, r + 1):
        end = shape.sigma(k)
        if end <= n - 2 and sb[end - 1] > sm[end - 1]:
            return False
    if sb[-1] > sm[-1]:
        return False
    if shape.so_rank == 0 and shape.gl_sizes[-1] == 1:
        if sb[n - 2] - expanded[n - 1] > sm[n - 2] - mu.entries[n - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Shape enumeration
# ---------------------------------------------------------------------------

def compositions(total: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def all_shapes(kind: GroupKind) -> list[LeviShape]:
    """Every standard Levi shape for the group, deterministically ordered."""
    n = kind.rank
    if kind.family is Family.A:
        so_ranks: list[int] = [0]
    elif kind.family is Family.B:
        so_ranks = list(range(n + 1))
    else:
        so_ranks = [0] + list(range(2, n + 1))
    shapes = [
        LeviShape(kind, gl, j)
        for j in so_ranks
        for gl in compositions(n - j)
    ]
    shapes.sort(key=lambda s: (s.so_rank, s.gl_sizes))
    return shapes
