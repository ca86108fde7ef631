"""Command-line front end: single queries, reordering walkthroughs, sweeps.

Subcommands
-----------
check    order, class, and hull membership of one point against one weight
class    canonical lift of a point modulo a Levi's coroot lattice
project  batch averages of a point for a Levi shape
lift     canonical lift from batch sums plus an orthogonal class
eta      the merge-and-repair reordering, stage by stage
pmu      lattice points of the orbit hull sharing the central class
verify   the projected set equality, one instance or a shape/weight grid
sweep    verify plus the per-instance property bundle over a family grid

Reports stream as newline-delimited JSON (``--format json`` for the small
commands, always for ``verify``/``sweep``).  Output is byte-identical for
identical inputs: records are emitted in grid order and timing is opt-in
via ``--timing``.

Exit codes: 0 all requested relations hold; 1 a mathematical verdict is
false (or a reordering precondition fails); 2 usage or validation error;
3 internal error or enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

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
    in_hull,
    is_dominant,
    leq,
    prefix_sums,
    same_class_XG,
    weyl_orbit_equivalent,
    ShapeError,
)
from .levi import LeviShape, all_shapes, class_of, minuscule_lift, project
from .oracle import (
    DEFAULT_RANK_CAP,
    SweepConfig,
    VerificationReport,
    dominant_coweights,
    enumerate_Pmu,
    instance_property_failures,
    sweep_instances,
    verify_main_theorem,
)
from .reorder import dominant_reordering

SCHEMA = 1

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _parse_family(text: str) -> Family:
    try:
        return Family(text.upper())
    except ValueError:
        raise ValueError(f"unknown family {text!r} (expected A, B, or D)")


def _parse_sector(text: str) -> Sector:
    aliases = {"int": Sector.INTEGRAL, "integral": Sector.INTEGRAL,
               "half": Sector.HALF}
    try:
        return aliases[text.lower()]
    except KeyError:
        raise ValueError(f"unknown sector {text!r} (expected integral or half)")


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _parse_rationals(text: str) -> tuple[Scalar, ...]:
    out: list[Scalar] = []
    for part in text.split(","):
        try:
            out.append(int(part))
        except ValueError:
            try:
                out.append(Fraction(part))
            except ValueError:
                raise ValueError(f"expected an integer or fraction, got {part!r}")
    return tuple(out)


def _parse_shape(text: str, kind: GroupKind) -> LeviShape:
    gl_text, _, so_text = text.partition(";")
    gl = tuple(int(p) for p in gl_text.split(",") if p != "")
    so = int(so_text) if so_text else 0
    return LeviShape(kind, gl, so)


def _coweight(family: Family, entries: tuple[int, ...], sector: Sector) -> Coweight:
    return Coweight(GroupKind(family, len(entries)), entries, sector)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _scalar_json(value: Scalar) -> Any:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return value


def _class_json(cls) -> dict[str, Any]:
    return {
        "sums": list(cls.batch_sums),
        "so_class": cls.so_class,
        "lift": list(cls.canonical_lift.entries),
    }


def report_json(report: VerificationReport, timing: bool) -> dict[str, Any]:
    record: dict[str, Any] = {
        "schema": SCHEMA,
        "family": report.kind.family.value,
        "rank": report.kind.rank,
        "sector": report.mu.sector.value,
        "shape": str(report.shape),
        "mu": list(report.mu.entries),
        "lhs": [_class_json(c) for c in sorted(report.lhs_classes, key=lambda c: c.sort_key())],
        "rhs": [_class_json(c) for c in sorted(report.rhs_classes, key=lambda c: c.sort_key())],
        "equal": report.equal,
        "missing_from_lhs": [_class_json(c) for c in report.missing_from_lhs],
        "missing_from_rhs": [_class_json(c) for c in report.missing_from_rhs],
        "witnesses": [
            {"class": _class_json(c), "nu": list(w.entries)}
            for c, w in report.witnesses
        ],
    }
    if report.property_failures:
        record["property_failures"] = list(report.property_failures)
    if timing:
        record["millis"] = report.millis
    return record


class _Writer:
    def __init__(self, path: str | None):
        self._file = open(path, "w", encoding="utf-8") if path else sys.stdout
        self._owned = path is not None

    def record(self, payload: dict[str, Any]) -> None:
        self._file.write(json.dumps(payload, separators=(", ", ": ")) + "\n")

    def line(self, text: str) -> None:
        self._file.write(text + "\n")

    def close(self) -> None:
        if self._owned:
            self._file.close()
        else:
            self._file.flush()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _order_members(
    family: Family, x: Sequence[Scalar], mu: Sequence[Scalar]
) -> list[dict[str, Any]]:
    """The individual inequalities of the order relation, with both sides."""
    n = len(mu)
    sx, sm = prefix_sums(x), prefix_sums(mu)
    members = []

    def add(label: str, lhs: Scalar, rhs: Scalar, equality: bool = False) -> None:
        ok = lhs == rhs if equality else lhs <= rhs
        members.append({
            "label": label,
            "lhs": _scalar_json(lhs),
            "rhs": _scalar_json(rhs),
            "relation": "==" if equality else "<=",
            "ok": ok,
        })

    if family is Family.A:
        for i in range(n - 1):
            add(f"S_{i + 1}", sx[i], sm[i])
        add(f"S_{n}", sx[-1], sm[-1], equality=True)
    elif family is Family.B:
        for i in range(n):
            add(f"S_{i + 1}", sx[i], sm[i])
    else:
        for i in range(n - 2):
            add(f"S_{i + 1}", sx[i], sm[i])
        add(f"S_{n - 1}-x_{n}", sx[n - 2] - x[n - 1], sm[n - 2] - mu[n - 1])
        add(f"S_{n}", sx[-1], sm[-1])
    return members


def cmd_check(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    mu = _coweight(family, _parse_ints(args.mu), sector)
    if not is_dominant(mu):
        raise ValueError(f"--mu {args.mu} is not dominant")
    x_vec = _parse_rationals(args.x)
    if len(x_vec) != mu.kind.rank:
        raise ValueError("--x and --mu must have the same length")

    integral = all(isinstance(e, int) for e in x_vec)
    class_match: bool | None = None
    if integral:
        x_cw = _coweight(family, tuple(int(e) for e in x_vec), sector)
        class_match = same_class_XG(x_cw, mu)
    members = _order_members(family, x_vec, mu.entries)
    order_ok = leq(x_vec, mu)
    hull_ok = in_hull(x_vec, mu)
    ok = order_ok and hull_ok and class_match is not False

    writer = _Writer(args.out)
    if args.format == "json":
        writer.record({
            "schema": SCHEMA,
            "command": "check",
            "family": family.value,
            "sector": sector.value,
            "mu": list(mu.entries),
            "x": [_scalar_json(e) for e in x_vec],
            "inequalities": members,
            "leq": order_ok,
            "class_match": class_match,
            "in_hull": hull_ok,
            "ok": ok,
        })
    else:
        for m in members:
            status = "ok" if m["ok"] else "FAIL"
            writer.line(
                f"ineq {m['label']}: {m['lhs']} {m['relation']} {m['rhs']}  {status}"
            )
        writer.line(f"leq: {'ok' if order_ok else 'FAIL'}")
        if class_match is None:
            writer.line("class: n/a (x is not a lattice point)")
        else:
            writer.line(f"class: {'match' if class_match else 'MISMATCH'}")
        writer.line(f"hull: {'member' if hull_ok else 'OUTSIDE'}")
        writer.line(f"verdict: {'ok' if ok else 'false'}")
    writer.close()
    return EXIT_OK if ok else EXIT_FALSE


def cmd_class(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    x = _coweight(family, _parse_ints(args.x), sector)
    shape = _parse_shape(args.shape, x.kind)
    cls = class_of(shape, x)

    writer = _Writer(args.out)
    if args.format == "json":
        writer.record({
            "schema": SCHEMA,
            "command": "class",
            "family": family.value,
            "sector": sector.value,
            "shape": str(shape),
            "x": list(x.entries),
            **_class_json(cls),
        })
    else:
        writer.line(f"sums: {','.join(str(s) for s in cls.batch_sums)}")
        writer.line(f"so_class: {cls.so_class}")
        writer.line(f"lift: {cls.canonical_lift}")
    writer.close()
    return EXIT_OK


def cmd_project(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    x = _coweight(family, _parse_ints(args.x), sector)
    shape = _parse_shape(args.shape, x.kind)
    point = project(shape, x)

    writer = _Writer(args.out)
    if args.format == "json":
        writer.record({
            "schema": SCHEMA,
            "command": "project",
            "family": family.value,
            "sector": sector.value,
            "shape": str(shape),
            "x": list(x.entries),
            "averages": [str(a) for a in point.averages],
            "expanded": [str(e) for e in point.expand()],
        })
    else:
        writer.line(f"averages: {','.join(str(a) for a in point.averages)}")
        writer.line(f"expanded: {','.join(str(e) for e in point.expand())}")
    writer.close()
    return EXIT_OK


def cmd_lift(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    kind = GroupKind(family, args.rank)
    shape = _parse_shape(args.shape, kind)
    sums = _parse_ints(args.sums) if args.sums else ()
    lift = minuscule_lift(shape, sums, args.so_class, sector)

    writer = _Writer(args.out)
    if args.format == "json":
        writer.record({
            "schema": SCHEMA,
            "command": "lift",
            "family": family.value,
            "sector": sector.value,
            "shape": str(shape),
            "sums": list(sums),
            "so_class": args.so_class,
            "lift": list(lift.entries),
        })
    else:
        writer.line(f"lift: {lift}")
    writer.close()
    return EXIT_OK


def cmd_eta(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    nu = _coweight(family, _parse_ints(args.nu), sector)
    shape = _parse_shape(args.shape, nu.kind)

    writer = _Writer(args.out)
    try:
        res = dominant_reordering(shape, nu)
    except PreconditionError as exc:
        writer.line(f"precondition failed: {exc}")
        writer.close()
        return EXIT_FALSE

    checks = {
        "dominant": is_dominant(res.result),
        "orbit": weyl_orbit_equivalent(res.result, nu),
    }
    ok = all(checks.values())
    if args.format == "json":
        record: dict[str, Any] = {
            "schema": SCHEMA,
            "command": "eta",
            "family": family.value,
            "sector": sector.value,
            "shape": str(shape),
            "nu": list(nu.entries),
            "merged": list(res.merged.entries),
            "coarse_shape": str(res.coarse_shape),
            "result": list(res.result.entries),
            "checks": checks,
            "ok": ok,
        }
        if sector is Sector.HALF:
            record["sign_fixed"] = list(res.sign_fixed.entries)
            record["flip_count"] = res.flip_count
        writer.record(record)
    else:
        writer.line(f"nu:     {nu}")
        writer.line(f"merged: {res.merged}")
        if sector is Sector.HALF:
            writer.line(f"signs:  {res.sign_fixed} ({res.flip_count} flips)")
        writer.line(f"coarse: {res.coarse_shape}")
        writer.line(f"result: {res.result}")
        status = " ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in checks.items())
        writer.line(f"checks: {status}")
    writer.close()
    return EXIT_OK if ok else EXIT_FALSE


def cmd_pmu(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    mu = _coweight(family, _parse_ints(args.mu), sector)
    points = sorted(
        enumerate_Pmu(mu, rank_cap=args.max_rank_cap), key=lambda c: c.entries
    )

    writer = _Writer(args.out)
    if args.format == "json":
        writer.record({
            "schema": SCHEMA,
            "command": "pmu",
            "family": family.value,
            "sector": sector.value,
            "mu": list(mu.entries),
            "count": len(points),
            "points": [list(p.entries) for p in points],
        })
    else:
        for p in points:
            writer.line(str(p))
        writer.line(f"count: {len(points)}")
    writer.close()
    return EXIT_OK


def _verify_worker(
    task: tuple[LeviShape, Coweight, int, bool]
) -> tuple[VerificationReport | None, str | None]:
    shape, mu, rank_cap, with_properties = task
    try:
        report = verify_main_theorem(shape, mu, rank_cap=rank_cap)
        if with_properties:
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
        return report, None
    except (CapExceeded, MismatchError, NotDominantError, ShapeError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _run_instances(
    args: argparse.Namespace,
    tasks: list[tuple[LeviShape, Coweight, int, bool]],
) -> int:
    writer = _Writer(args.out)
    unequal = errors = 0
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_worker, tasks))
    else:
        results = [_verify_worker(t) for t in tasks]
    for (shape, mu, _, _), (report, error) in zip(tasks, results):
        if error is not None:
            errors += 1
            writer.record({
                "schema": SCHEMA,
                "family": shape.kind.family.value,
                "rank": shape.kind.rank,
                "sector": mu.sector.value,
                "shape": str(shape),
                "mu": list(mu.entries),
                "error": error,
            })
            continue
        assert report is not None
        if not report.ok:
            unequal += 1
        writer.record(report_json(report, args.timing))
    writer.record({
        "schema": SCHEMA,
        "summary": True,
        "instances": len(tasks),
        "ok": len(tasks) - unequal - errors,
        "failed": unequal,
        "errors": errors,
    })
    writer.close()
    if errors:
        return EXIT_INTERNAL
    return EXIT_FALSE if unequal else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    family = _parse_family(args.family)
    sector = _parse_sector(args.sector)
    if args.shape and args.mu:
        mu_entries = _parse_ints(args.mu)
        mu = _coweight(family, mu_entries, sector)
        shape = _parse_shape(args.shape, mu.kind)
        if not is_dominant(mu):
            raise ValueError(f"--mu {args.mu} is not dominant")
        tasks = [(shape, mu, args.max_rank_cap, False)]
    elif args.all_shapes:
        if args.rank is None:
            raise ValueError("--all-shapes needs --rank")
        kind = GroupKind(family, args.rank)
        shapes = all_shapes(kind)
        mus = dominant_coweights(kind, sector, args.max_entry)
        tasks = [
            (shape, mu, args.max_rank_cap, False)
            for shape in shapes
            for mu in mus
        ]
    else:
        raise ValueError("give either --shape and --mu, or --all-shapes")
    return _run_instances(args, tasks)


def cmd_sweep(args: argparse.Namespace) -> int:
    families = tuple(_parse_family(f) for f in args.families.split(","))
    sectors = tuple(_parse_sector(s) for s in args.sectors.split(","))
    ranks = _parse_ints(args.ranks)
    config = SweepConfig(
        families=families,
        ranks=ranks,
        max_entry=args.max_entry,
        sectors=sectors,
        check_properties=not args.skip_properties,
        rank_cap=args.max_rank_cap,
    )
    tasks = [
        (shape, mu, config.rank_cap, config.check_properties)
        for shape, mu in sweep_instances(config)
    ]
    return _run_instances(args, tasks)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True, help="A, B, or D")
    sub.add_argument("--sector", default="integral",
                     help="integral (default) or half (doubled odd entries)")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--out", default=None, help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coweights",
        description="Exact coweight-order and Levi-class computations "
                    "for the split classical families",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="order/class/hull of x against mu")
    _add_common(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--x", required=True,
                   help="comma-separated integers or fractions like 3/2")
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("class", help="canonical lift of x for a Levi shape")
    _add_common(p)
    p.add_argument("--shape", required=True, help="e.g. 2,1,1;2")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_class)

    p = subs.add_parser("project", help="batch averages of x for a Levi shape")
    _add_common(p)
    p.add_argument("--shape", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_project)

    p = subs.add_parser("lift", help="canonical lift from class data")
    _add_common(p)
    p.add_argument("--shape", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--sums", default="", help="comma-separated batch sums")
    p.add_argument("--so-class", dest="so_class", type=int, default=None)
    p.set_defaults(func=cmd_lift)

    p = subs.add_parser("eta", help="dominant reordering of a block-minuscule point")
    _add_common(p)
    p.add_argument("--shape", required=True)
    p.add_argument("--nu", required=True)
    p.set_defaults(func=cmd_eta)

    p = subs.add_parser("pmu", help="hull lattice points sharing mu's class")
    _add_common(p)
    p.add_argument("--mu", required=True)
    p.add_argument("--max-rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.set_defaults(func=cmd_pmu)

    p = subs.add_parser("verify", help="projected set equality (NDJSON)")
    _add_common(p)
    p.add_argument("--shape", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--all-shapes", action="store_true")
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--max-rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="include per-instance milliseconds (non-deterministic)")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("sweep", help="verify plus property bundle over a grid")
    _add_common(p)
    p.add_argument("--families", default=None,
                   help="comma list, defaults to --family")
    p.add_argument("--ranks", required=True, help="comma list, e.g. 2,3")
    p.add_argument("--sectors", default=None,
                   help="comma list, defaults to --sector")
    p.add_argument("--max-entry", type=int, default=2)
    p.add_argument("--max-rank-cap", type=int, default=DEFAULT_RANK_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--skip-properties", action="store_true")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep":
        if args.families is None:
            args.families = args.family
        if args.sectors is None:
            args.sectors = args.sector
    try:
        return args.func(args)
    except (ShapeError, MismatchError, NotDominantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
