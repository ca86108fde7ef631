"""Brute-force ground truth for the hull/class set equality.

This module is the verification layer.  It enumerates everything the rest
of the package computes cleverly:

* explicit Weyl orbits (permutations, signed permutations, evenly signed
  permutations);
* convex-hull membership certified by an exact convex combination over the
  orbit, independent of the prefix-sum order relation;
* the set of lattice points of the orbit hull sharing the central class;
* both sides of the projected set equality (hull classes vs. classes whose
  canonical lift projects into the hull), compared instance by instance;
* grid sweeps bundling the per-instance checks with the batch-end order
  equivalence and the reordering property suite.

Everything is exact and deterministic: grids iterate in lexicographic
order and reports carry their witnesses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, lcm
from typing import Iterator, Sequence

from .core import (
    CapExceeded,
    Coweight,
    Family,
    GroupKind,
    MismatchError,
    NotDominantError,
    PreconditionError,
    Scalar,
    Sector,
    Vector,
    in_hull,
    is_dominant,
    leq,
    same_class_XG,
    weyl_orbit_equivalent,
)
from .levi import (
    LeviPoint,
    LeviShape,
    XMClass,
    all_shapes,
    class_of,
    is_M_dominant,
    is_M_minuscule,
    leq_batch_ends,
    minuscule_lift,
    project,
)
from .reorder import check_batch_order, dominant_reordering

DEFAULT_WEYL_CAP = 384
DEFAULT_RANK_CAP = 6


# ---------------------------------------------------------------------------
# Explicit Weyl orbits
# ---------------------------------------------------------------------------

def weyl_group_order(family: Family, rank: int) -> int:
    if family is Family.A:
        return factorial(rank)
    if family is Family.B:
        return 2**rank * factorial(rank)
    return 2 ** (rank - 1) * factorial(rank)


def weyl_orbit(family: Family, entries: Sequence[Scalar]) -> list[Vector]:
    """The full Weyl orbit of a vector, sorted lexicographically.

    Family A: coordinate permutations.  Family B: signed permutations.
    Family D: signed permutations with an even number of sign changes
    (when a coordinate vanishes this automatically covers both parities).
    """
    perms = set(permutations(entries))
    if family is Family.A:
        return sorted(perms)
    n = len(tuple(entries))
    out: set[Vector] = set()
    for p in perms:
        for signs in product((1, -1), repeat=n):
            if family is Family.D and signs.count(-1) % 2 == 1:
                continue
            out.add(tuple(s * e for s, e in zip(signs, p)))
    return sorted(out)


def orbit_of(x: Coweight) -> list[Vector]:
    return weyl_orbit(x.kind.family, x.entries)


# ---------------------------------------------------------------------------
# Exact convex-combination search
# ---------------------------------------------------------------------------

def _scale_to_integers(
    points: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> tuple[list[list[int]], list[int]]:
    den = 1
    for vec in list(points) + [list(target)]:
        for e in vec:
            den = lcm(den, Fraction(e).denominator)
    cols = [[int(Fraction(e) * den) for e in p] for p in points]
    rhs = [int(Fraction(e) * den) for e in target]
    return cols, rhs


def _solve_convex_combination(
    points: Sequence[Vector], target: Sequence[Scalar]
) -> dict[int, Fraction] | None:
    """Search bases of size <= dim+1 for an exact convex combination.

    Phase-one simplex with Bland's rule and fraction-free integer pivoting:
    every candidate support is a column basis of the system
    (sum of weights = 1, weighted sum of points = target), solved exactly.
    Returns the weights of a combination supported on at most dim+1 points,
    or ``None`` when no convex combination exists.
    """
    m = len(points)
    if m == 0:
        return None
    dim = len(tuple(target))
    cols, rhs_scaled = _scale_to_integers(points, target)

    nrows = dim + 1
    width = m + nrows + 1
    RHS = width - 1
    tab: list[list[int]] = []
    for i in range(nrows):
        if i < dim:
            row = [cols[jcol][i] for jcol in range(m)]
            b = rhs_scaled[i]
        else:
            row = [1] * m
            b = 1
        if b < 0:
            row = [-e for e in row]
            b = -b
        full = row + [0] * nrows + [b]
        full[m + i] = 1
        tab.append(full)
    obj = [0] * width
    for i in range(nrows):
        for jcol in range(m):
            obj[jcol] -= tab[i][jcol]
        obj[RHS] -= tab[i][RHS]
    tab.append(obj)

    basis = list(range(m, m + nrows))
    denom = 1
    while True:
        q = -1
        for jcol in range(m):  # artificial columns never re-enter
            if tab[nrows][jcol] < 0:
                q = jcol
                break
        if q < 0:
            break
        p = -1
        for i in range(nrows):
            if tab[i][q] <= 0:
                continue
            if p < 0:
                p = i
                continue
            left = tab[i][RHS] * tab[p][q]
            right = tab[p][RHS] * tab[i][q]
            if left < right or (left == right and basis[i] < basis[p]):
                p = i
        if p < 0:
            return None
        pivot = tab[p][q]
        prow = tab[p]
        for i in range(nrows + 1):
            if i == p:
                continue
            row = tab[i]
            coeff = row[q]
            for jcol in range(width):
                row[jcol] = (row[jcol] * pivot - coeff * prow[jcol]) // denom
        basis[p] = q
        denom = pivot

    if tab[nrows][RHS] != 0:
        return None
    weights: dict[int, Fraction] = {}
    for i in range(nrows):
        if basis[i] < m:
            w = Fraction(tab[i][RHS], denom)
            if w:
                weights[basis[i]] = w
    # paranoia: re-derive the combination exactly before trusting it
    assert sum(weights.values()) == 1
    for coord in range(dim):
        total = sum(w * Fraction(points[idx][coord]) for idx, w in weights.items())
        assert total == Fraction(tuple(target)[coord])
    return weights


def _solve_support_weights(
    chosen: Sequence[Vector], target: Sequence[Scalar]
) -> list[Fraction] | None:
    """Solve (weights sum to 1, weighted point sum = target) by elimination.

    Only full-column-rank systems are solved; rank-deficient supports are
    skipped because a smaller support then realizes the same point.
    """
    k = len(chosen)
    dim = len(tuple(target))
    rows = [
        [Fraction(chosen[jcol][i]) for jcol in range(k)] + [Fraction(tuple(target)[i])]
        for i in range(dim)
    ]
    rows.append([Fraction(1)] * k + [Fraction(1)])
    pivot_row = 0
    where: list[int] = []
    for col in range(k):
        sel = next(
            (i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None
        )
        if sel is None:
            return None
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [e * inv for e in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        where.append(pivot_row)
        pivot_row += 1
    if any(rows[i][k] != 0 for i in range(pivot_row, len(rows))):
        return None
    return [rows[where[col]][k] for col in range(k)]


def convex_combination_bruteforce(
    x: Coweight | Sequence[Scalar],
    mu: Coweight,
    *,
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> dict[Vector, Fraction] | None:
    """Literal support search: try every orbit subset of size <= rank+1.

    Exponentially slower than :func:`caratheodory_in_hull` but a direct
    transcription of the definition; used to cross-check the simplex path.
    """
    pts, target = _hull_problem(x, mu, weyl_cap)
    dim = len(target)
    for size in range(1, dim + 2):
        for chosen in combinations(pts, size):
            weights = _solve_support_weights(chosen, target)
            if weights is not None and all(w >= 0 for w in weights):
                return {c: w for c, w in zip(chosen, weights) if w}
    return None


def _hull_problem(
    x: Coweight | Sequence[Scalar], mu: Coweight, weyl_cap: int
) -> tuple[list[Vector], Vector]:
    if not is_dominant(mu):
        raise NotDominantError(f"mu={mu} is not dominant")
    family = mu.kind.family
    order = weyl_group_order(family, mu.kind.rank)
    if order > weyl_cap:
        raise CapExceeded(
            f"Weyl group order {order} exceeds the cap {weyl_cap}"
        )
    if isinstance(x, Coweight):
        if x.kind != mu.kind:
            raise MismatchError(f"kind mismatch: {x.kind} vs {mu.kind}")
        target: Vector = x.entries
    else:
        target = tuple(x)
        if len(target) != mu.kind.rank:
            raise MismatchError(
                f"expected {mu.kind.rank} entries, got {len(target)}"
            )
    return weyl_orbit(family, mu.entries), target


def caratheodory_in_hull(
    x: Coweight | Sequence[Scalar],
    mu: Coweight,
    *,
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> bool:
    """Hull membership by exhibiting an exact convex combination.

    Enumerates the orbit explicitly and searches supports of size at most
    rank+1 via exact simplex.  Completely independent of the prefix-sum
    order relation, which is the point: this is the anti-bug oracle for
    :func:`coweights.core.in_hull`.
    """
    pts, target = _hull_problem(x, mu, weyl_cap)
    # cheap necessary conditions read off the explicit orbit
    for coord in range(len(target)):
        values = [p[coord] for p in pts]
        if not min(values) <= target[coord] <= max(values):
            return False
    return _solve_convex_combination(pts, target) is not None


# ---------------------------------------------------------------------------
# Lattice-point enumeration of the hull
# ---------------------------------------------------------------------------

def _box_values(mu: Coweight) -> list[int]:
    radius = max((abs(e) for e in mu.entries), default=0)
    if mu.sector is Sector.HALF:
        return [v for v in range(-radius, radius + 1) if v % 2 != 0]
    return list(range(-radius, radius + 1))


def enumerate_Pmu(
    mu: Coweight, *, rank_cap: int = DEFAULT_RANK_CAP
) -> frozenset[Coweight]:
    """All lattice points of the orbit hull sharing the class of ``mu``.

    The search box |v_i| <= max|mu_i| suffices: the hull's vertices are
    signed permutations of ``mu``, so the hull lies in that sup-norm ball
    (the test suite probes the shell just outside to confirm).
    """
    if not is_dominant(mu):
        raise NotDominantError(f"mu={mu} is not dominant")
    n = mu.kind.rank
    if n > rank_cap:
        raise CapExceeded(f"rank {n} exceeds the enumeration cap {rank_cap}")
    vals = _box_values(mu)
    out = []
    for vec in product(vals, repeat=n):
        candidate = Coweight(mu.kind, vec, mu.sector)
        if same_class_XG(candidate, mu) and in_hull(vec, mu):
            out.append(candidate)
    return frozenset(out)


# ---------------------------------------------------------------------------
# The projected set equality, instance by instance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    """Both sides of one instance of the set equality, with witnesses."""

    shape: LeviShape
    mu: Coweight
    lhs_classes: frozenset[XMClass]
    rhs_classes: frozenset[XMClass]
    equal: bool
    missing_from_lhs: tuple[XMClass, ...]
    missing_from_rhs: tuple[XMClass, ...]
    witnesses: tuple[tuple[XMClass, Coweight], ...]
    millis: float
    property_failures: tuple[str, ...] = ()

    @property
    def kind(self) -> GroupKind:
        return self.mu.kind

    @property
    def ok(self) -> bool:
        return self.equal and not self.property_failures


def _batch_sum_range(size: int, bound: int, sector: Sector) -> range:
    if sector is not Sector.HALF:
        return range(-bound, bound + 1)
    # odd entries force the batch sum to carry the batch-size parity
    start = -bound if (bound - size) % 2 == 0 else -bound + 1
    return range(start, bound + 1, 2)


def _rhs_sum_ranges(shape: LeviShape, mu: Coweight) -> list[range]:
    radius = max((abs(e) for e in mu.entries), default=0)
    return [
        _batch_sum_range(size, size * radius, mu.sector)
        for size in shape.gl_sizes
    ]


def _so_classes(shape: LeviShape, sector: Sector) -> list[int | None]:
    if shape.so_rank == 0:
        return [None]
    if sector is Sector.HALF:
        j = shape.so_rank
        return sorted({j % 4, (j - 2) % 4})
    return [0, 1]


def verify_main_theorem(
    shape: LeviShape, mu: Coweight, *, rank_cap: int = DEFAULT_RANK_CAP
) -> VerificationReport:
    """Compare both descriptions of the projected hull classes.

    Left side: the classes of the hull's lattice points with the central
    class of ``mu``.  Right side: every class (batch sums bounded by
    batch size times max|mu_i|, every orthogonal class) whose canonical
    lift matches ``mu`` centrally and whose batch-average projection lies
    in the hull.  The report records the set difference in each direction
    and one hull point witnessing each left-side class.
    """
    if shape.kind != mu.kind:
        raise MismatchError(f"kind mismatch: shape {shape.kind} vs {mu.kind}")
    start = time.perf_counter()

    points = sorted(enumerate_Pmu(mu, rank_cap=rank_cap), key=lambda c: c.entries)
    witness: dict[XMClass, Coweight] = {}
    for nu in points:
        witness.setdefault(class_of(shape, nu), nu)
    lhs = frozenset(witness)

    rhs_set: set[XMClass] = set()
    for sums in product(*_rhs_sum_ranges(shape, mu)):
        for so_class in _so_classes(shape, mu.sector):
            lift = minuscule_lift(shape, sums, so_class, mu.sector)
            if not same_class_XG(lift, mu):
                continue
            if in_hull(project(shape, lift).expand(), mu):
                rhs_set.add(XMClass(shape, lift))
    rhs = frozenset(rhs_set)

    missing_from_lhs = tuple(sorted(rhs - lhs, key=XMClass.sort_key))
    missing_from_rhs = tuple(sorted(lhs - rhs, key=XMClass.sort_key))
    millis = (time.perf_counter() - start) * 1000.0
    return VerificationReport(
        shape=shape,
        mu=mu,
        lhs_classes=lhs,
        rhs_classes=rhs,
        equal=not missing_from_lhs and not missing_from_rhs,
        missing_from_lhs=missing_from_lhs,
        missing_from_rhs=missing_from_rhs,
        witnesses=tuple(
            sorted(witness.items(), key=lambda kv: kv[0].sort_key())
        ),
        millis=millis,
    )


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def dominant_coweights(
    kind: GroupKind, sector: Sector, max_entry: int
) -> list[Coweight]:
    """The dominant grid used by sweeps.

    Families A and B: nonincreasing entries in [0, max_entry].  Family D:
    nonincreasing entries in [0, max_entry] with the last coordinate
    allowed any sign of magnitude at most its neighbor; the half sector
    uses odd (doubled) values up to the odd bound.
    """
    n = kind.rank
    if sector is Sector.HALF:
        if kind.family is not Family.D:
            raise MismatchError("half sector requires family D")
        odd = [v for v in range(1, max_entry + 1) if v % 2 == 1]
        out = []
        for head in product(*([odd] * (n - 1))):
            if any(head[i] < head[i + 1] for i in range(n - 2)):
                continue
            cap = head[-1]
            for last in range(-cap, cap + 1, 2):
                out.append(Coweight(kind, head + (last,), sector))
        return sorted(out, key=lambda c: c.entries)
    vals = range(0, max_entry + 1)
    out = []
    if kind.family in (Family.A, Family.B):
        for vec in product(*([vals] * n)):
            if all(vec[i] >= vec[i + 1] for i in range(n - 1)):
                out.append(Coweight(kind, vec))
        return sorted(out, key=lambda c: c.entries)
    for head in product(*([vals] * (n - 1))):
        if any(head[i] < head[i + 1] for i in range(n - 2)):
            continue
        cap = head[-1]
        for last in range(-cap, cap + 1):
            out.append(Coweight(kind, head + (last,)))
    return sorted(out, key=lambda c: c.entries)


def valid_lifts(
    shape: LeviShape, sector: Sector, entry_bound: int
) -> Iterator[Coweight]:
    """Every block-dominant, block-minuscule coweight whose GL entries stay
    within [-entry_bound, entry_bound], enumerated via its class data."""
    ranges = [
        _batch_sum_range(size, size * entry_bound, sector)
        for size in shape.gl_sizes
    ]
    for sums in product(*ranges):
        for so_class in _so_classes(shape, sector):
            yield minuscule_lift(shape, sums, so_class, sector)


# ---------------------------------------------------------------------------
# Property checks bundled into sweeps
# ---------------------------------------------------------------------------

_BETA_VALUES_SMALL = tuple(sorted({
    Fraction(num, den) for den in (1, 2, 3, 4) for num in range(-4, 5)
}))
_BETA_VALUES_TINY = (
    Fraction(-2), Fraction(-3, 2), Fraction(-1), Fraction(-1, 2),
    Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2),
)


def _beta_grid(shape: LeviShape, mu: Coweight) -> Iterator[LeviPoint]:
    """Batch-constant points for the batch-end order check.

    Family A fills the last batch average from the others so that the
    total-sum (coroot span) precondition holds exactly.
    """
    r = shape.num_gl_batches
    values = _BETA_VALUES_SMALL if r <= 2 else _BETA_VALUES_TINY
    if shape.kind.family is Family.A:
        total = Fraction(sum(mu.entries))
        for head in product(values, repeat=r - 1):
            used = sum(a * s for a, s in zip(head, shape.gl_sizes[:-1]))
            last = (total - used) / shape.gl_sizes[-1]
            yield LeviPoint(shape, head + (last,))
        return
    for avgs in product(values, repeat=r):
        yield LeviPoint(shape, avgs)


def batch_end_agreement(
    shape: LeviShape, mu: Coweight
) -> tuple[int, list[str]]:
    """Check batch-end order == full order over the beta grid.

    Returns (number of points checked, failure descriptions).
    """
    checked = 0
    failures = []
    for beta in _beta_grid(shape, mu):
        restricted = leq_batch_ends(shape, beta, mu)
        full = leq(beta.expand(), mu)
        checked += 1
        if restricted != full:
            failures.append(
                f"batch-end order disagrees with full order at shape={shape} "
                f"mu={mu} averages={beta.averages}"
            )
    return checked, failures


def positivity_failures(shape: LeviShape, nu: Coweight) -> list[str]:
    """Entry lower bounds forced by the preconditions, per family.

    Family B: all entries nonnegative.  Integral D: all nonnegative except
    possibly the last when the shape is all-GL with a trailing size-1
    block.  Half D: the same statement with bound -1.
    """
    family = shape.kind.family
    out = []
    if family is Family.A:
        return out
    exempt_last = (
        family is Family.D and shape.so_rank == 0 and shape.gl_sizes[-1] == 1
    )
    bound = -1 if nu.sector is Sector.HALF else 0
    limit = len(nu.entries) - 1 if exempt_last else len(nu.entries)
    for i in range(limit):
        if nu.entries[i] < bound:
            out.append(
                f"entry {i} of {nu} under {shape} is below {bound}"
            )
    return out


def reordering_failures(
    shape: LeviShape, nu: Coweight, mus: Sequence[Coweight]
) -> list[str]:
    """Postconditions of the reordering on one precondition-satisfying input.

    Checks: batch order; positivity bounds; the result dominant, coarse
    block-dominant/minuscule, and orbit-equivalent; half-sector -1s of the
    merged vector confined to the last GL batch or the orthogonal batch;
    and the order transfer (projection of the result stays below every
    grid weight the input's projection was below, in the same class).
    """
    failures = []
    if not check_batch_order(shape, nu):
        failures.append(f"batch first-entry order fails for {nu} under {shape}")
    failures.extend(positivity_failures(shape, nu))

    res = dominant_reordering(shape, nu)
    eta, coarse = res.result, res.coarse_shape
    if not is_dominant(eta):
        failures.append(f"reordering of {nu} under {shape} is not dominant: {eta}")
    if not is_M_dominant(coarse, eta):
        failures.append(f"reordering of {nu} is not block-dominant for {coarse}")
    if not is_M_minuscule(coarse, eta):
        failures.append(f"reordering of {nu} is not block-minuscule for {coarse}")
    if not weyl_orbit_equivalent(eta, nu):
        failures.append(f"reordering left the orbit: {nu} -> {eta}")

    if nu.sector is Sector.HALF:
        s = coarse.num_gl_batches
        lo = coarse.sigma(s - 1) if s >= 1 else 0
        for i, e in enumerate(res.merged.entries):
            if e == -1 and i < lo:
                failures.append(
                    f"merged vector of {nu} has a -1 before the last GL batch"
                )
                break

    nu_avg = project(shape, nu).expand()
    eta_avg = project(coarse, eta).expand()
    for mu in mus:
        if not same_class_XG(nu, mu):
            continue
        if leq(nu_avg, mu) and not leq(eta_avg, mu):
            failures.append(
                f"order transfer fails: nu={nu} shape={shape} mu={mu}"
            )
    return failures


def has_dominant_projection(shape: LeviShape, nu: Coweight) -> bool:
    """The property-sweep filter: batch averages in the dominant chamber."""
    from .core import _vec_is_dominant

    return _vec_is_dominant(shape.kind.family, project(shape, nu).expand())


def instance_property_failures(
    shape: LeviShape, mu: Coweight
) -> tuple[str, ...]:
    """The per-instance property bundle run by sweeps."""
    failures: list[str] = []
    failures.extend(batch_end_agreement(shape, mu)[1])
    radius = max((abs(e) for e in mu.entries), default=0)
    mus = [mu]
    for nu in valid_lifts(shape, mu.sector, radius + 1):
        if not has_dominant_projection(shape, nu):
            continue
        try:
            failures.extend(reordering_failures(shape, nu, mus))
        except PreconditionError as exc:  # lifts always satisfy block conditions
            failures.append(f"unexpected precondition failure: {exc}")
    return tuple(failures)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    """Grid description for :func:`sweep`; shapes may be "all"."""

    families: tuple[Family, ...]
    ranks: tuple[int, ...]
    max_entry: int
    sectors: tuple[Sector, ...] = (Sector.INTEGRAL,)
    shapes: tuple[LeviShape, ...] | str = "all"
    check_properties: bool = True
    rank_cap: int = DEFAULT_RANK_CAP


def sweep_instances(
    config: SweepConfig,
) -> Iterator[tuple[LeviShape, Coweight]]:
    """The instance grid of a sweep, in deterministic lexicographic order."""
    for family in sorted(config.families, key=lambda f: f.value):
        for rank in sorted(config.ranks):
            if family is Family.D and rank < 2:
                continue
            kind = GroupKind(family, rank)
            for sector in sorted(config.sectors, key=lambda s: s.value):
                if sector is Sector.HALF and family is not Family.D:
                    continue
                if config.shapes == "all":
                    shapes = all_shapes(kind)
                else:
                    shapes = [s for s in config.shapes if s.kind == kind]
                mus = dominant_coweights(kind, sector, config.max_entry)
                for shape in shapes:
                    for mu in mus:
                        yield shape, mu


def sweep(config: SweepConfig) -> list[VerificationReport]:
    """Run the set-equality verifier over the whole grid.

    Each report also carries the per-instance property bundle (batch-end
    order equivalence plus the reordering postconditions) unless
    ``check_properties`` is off.  Cap violations surface as reports would;
    the grids used here stay within the default caps.
    """
    reports = []
    for shape, mu in sweep_instances(config):
        report = verify_main_theorem(shape, mu, rank_cap=config.rank_cap)
        if config.check_properties:
            extra = instance_property_failures(shape, mu)
            if extra:
                report = VerificationReport(
                    shape=report.shape,
                    mu=report.mu,
                    lhs_classes=report.lhs_classes,
                    rhs_classes=report.rhs_classes,
                    equal=report.equal,
                    missing_from_lhs=report.missing_from_lhs,
                    missing_from_rhs=report.missing_from_rhs,
                    witnesses=report.witnesses,
                    millis=report.millis,
                    property_failures=extra,
                )
        reports.append(report)
    return reports
