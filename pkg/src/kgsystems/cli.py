"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 malformed input or usage,
3 the size guard was exceeded.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import oracle, serialize
from .kg import (
    KConditionError,
    KGSystem,
    check_classical,
    check_dual_orthogonality,
    check_orthogonality,
    check_recurrences,
    classical_system,
    is_classical,
    krawtchouk,
    verify_k_condition,
)
from .matrix import ExactMatrix
from .multiindex import DEFAULT_GUARD, CapacityError, enumerate_indices
from .reflection import ReflectionError, ReflectionSystem, kg_from_reflection, verify_reflection_properties
from .report import Check, Report, compare
from .serialize import MalformedInputError
from .sympow import bar, gamma

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

ALL_CHECKS = ("kcondition", "orthogonality", "dual", "recurrence", "reflection", "classical")


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _degree(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("degree must be >= 0")
    return value


def _scalar_list(text: str) -> list:
    try:
        return [serialize.scalar_from_json(t.strip()) for t in text.split(",")]
    except MalformedInputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _checks(text: str) -> List[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if names == ["all"]:
        return list(ALL_CHECKS)
    unknown = [n for n in names if n not in ALL_CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks {unknown}; choose from {ALL_CHECKS}")
    return names


def _fault(text: str) -> tuple:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected ROW,COL")
    return i, j


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgsys",
        description="Exact symmetric powers, gamma maps and Krawtchouk-Griffiths systems.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--guard", type=_positive_int, default=DEFAULT_GUARD,
                        help="largest induced dimension allowed (default %(default)s)")
    common.add_argument("--out", help="write output here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("sympow", "symmetric power of a matrix"),
                            ("gamma", "gamma map of a matrix")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--matrix", required=True, help="matrix JSON file")
        p.add_argument("--degree", type=_degree, required=True)
        p.add_argument("--engine", choices=("main", "oracle"), default="main")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    for name, help_text in (("verify", "check K-condition and Krawtchouk identities"),
                            ("build", "emit a degree bundle for a system")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--system", help="system JSON (or a bundle written by build)")
        src.add_argument("--reflect", type=_scalar_list, help='reflection vector, e.g. "1,2i"')
        src.add_argument("--classical", type=_degree, metavar="N",
                         help="symmetric binomial system in degree N")
        p.add_argument("--scale", type=_scalar_list,
                       help='square roots of D for --reflect, e.g. "1,6"')
        p.add_argument("--degree", type=_degree)
        if name == "verify":
            p.add_argument("--checks", type=_checks, default=list(ALL_CHECKS),
                           help=f"comma list from {','.join(ALL_CHECKS)} (default all)")
            p.add_argument("--inject-fault", type=_fault, metavar="ROW,COL",
                           help="test mode: add 1 to Phi[ROW,COL] before checking")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_command(args) -> int:
    M = serialize.matrix_from_json(serialize.load_json_file(args.matrix))
    if not M.is_square():
        raise MalformedInputError(f"matrix must be square, got {M.shape}")
    table = enumerate_indices(M.nrows - 1, args.degree, args.guard)
    if args.command == "sympow":
        R = oracle.bar_via_oracle(M, args.degree) if args.engine == "oracle" else bar(M, args.degree, args.guard)
    else:
        R = oracle.gamma_via_vector_field(M, args.degree) if args.engine == "oracle" else gamma(M, args.degree, args.guard)
    R = R.with_table(table)
    if args.format == "csv":
        _emit(serialize.matrix_to_csv(R), args.out)
    else:
        _emit(serialize.dumps(serialize.matrix_to_json(R)), args.out)
    return EXIT_OK


class _Source:
    """Resolved input for verify/build."""

    def __init__(self, system: KGSystem, degree: Optional[int],
                 reflection: Optional[ReflectionSystem] = None, bundle: Optional[dict] = None):
        self.system = system
        self.degree = degree
        self.reflection = reflection
        self.bundle = bundle

    def reflect_json(self) -> Optional[dict]:
        if self.reflection is None:
            return None
        return serialize.reflect_to_json(self.reflection.v, self.reflection.s.diagonal())


def _resolve_source(args) -> _Source:
    if args.classical is not None:
        return _Source(classical_system(), args.classical if args.degree is None else args.degree)
    if args.reflect is not None:
        rs = kg_from_reflection(args.reflect, args.scale)
        return _Source(rs.sys, args.degree, rs)
    if args.scale is not None:
        raise MalformedInputError("--scale only applies with --reflect")
    obj = serialize.load_json_file(args.system)
    bundle = None
    degree = args.degree
    if isinstance(obj, dict) and "system" in obj:
        bundle = obj
        obj = obj["system"]
        if degree is None and isinstance(bundle.get("degree"), int):
            degree = bundle["degree"]
    system = serialize.system_from_json(obj)
    rs = None
    if isinstance(obj, dict) and "reflect" in obj:
        ref = obj["reflect"]
        if not isinstance(ref, dict) or "v" not in ref:
            raise MalformedInputError("'reflect' needs a 'v' list")
        v = serialize.vector_from_json(ref["v"], "reflect.v")
        s = serialize.vector_from_json(ref["s"], "reflect.s") if "s" in ref else None
        rs = kg_from_reflection(v, s)
        if rs.sys != system:
            raise MalformedInputError("'reflect' data does not reproduce the stored A, p, D")
    return _Source(system, degree, rs, bundle)


def _bundle_check(bundle: dict, expected: dict) -> Check:
    for key in ("Phi", "B", "pbar", "Dbar", "Rec", "Spec"):
        if key not in bundle:
            return Check("bundle", False, f"bundle lacks '{key}'")
        stored, fresh = bundle[key], expected[key]
        pairs = list(zip(stored, fresh)) if key in ("Rec", "Spec") else [(stored, fresh)]
        if key in ("Rec", "Spec") and len(stored) != len(fresh):
            return Check("bundle", False, f"'{key}' has {len(stored)} matrices, expected {len(fresh)}")
        for idx, (s, f) in enumerate(pairs):
            c = compare(key, serialize.matrix_from_json(s), serialize.matrix_from_json(f))
            if not c.passed:
                where = f"{key}[{idx}]" if key in ("Rec", "Spec") else key
                return Check("bundle", False, f"{where}: {c.detail}")
    return Check("bundle", True, "stored matrices match recomputation")


def _verify(args) -> int:
    src = _resolve_source(args)
    if src.degree is None:
        raise MalformedInputError("--degree is required")
    selected = args.checks
    report = Report()
    kc = verify_k_condition(src.system.A, src.system.p, src.system.D)
    if "kcondition" in selected:
        report.extend(kc.checks)
    if not kc.ok:
        for name in selected:
            if name != "kcondition":
                report.add(name, None, "skipped: system fails the K-condition")
        _emit(serialize.dumps(report.to_json()), args.out)
        return EXIT_FAILED

    kd = krawtchouk(src.system, src.degree, args.guard)
    if src.bundle is not None and src.bundle.get("degree") == src.degree:
        report.checks.append(_bundle_check(src.bundle, serialize.bundle_to_json(kd)))
    if args.inject_fault is not None:
        i, j = args.inject_fault
        if not (0 <= i < kd.Phi.nrows and 0 <= j < kd.Phi.ncols):
            raise MalformedInputError(f"fault position {(i, j)} outside Phi of shape {kd.Phi.shape}")
        kd = kd.with_phi(kd.Phi.with_entry(i, j, kd.Phi[i, j] + 1))

    if "orthogonality" in selected:
        report.checks.append(check_orthogonality(kd))
    if "dual" in selected:
        report.checks.append(check_dual_orthogonality(kd))
    if "recurrence" in selected:
        report.extend(check_recurrences(kd).checks)
    if "reflection" in selected:
        if src.reflection is None:
            report.add("reflection", None, "not applicable: no reflection data for this system")
        else:
            report.extend(verify_reflection_properties(src.reflection, src.degree, kd, args.guard).checks)
    if "classical" in selected:
        if is_classical(src.system):
            report.extend(check_classical(kd).checks)
        else:
            report.add("classical", None, "not applicable: not the symmetric binomial system")
    _emit(serialize.dumps(report.to_json()), args.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def _build(args) -> int:
    src = _resolve_source(args)
    if src.degree is None:
        raise MalformedInputError("--degree is required")
    kc = src.system.report()
    if not kc.ok:
        _emit(serialize.dumps(kc.to_json()), args.out)
        return EXIT_FAILED
    kd = krawtchouk(src.system, src.degree, args.guard)
    _emit(serialize.dumps(serialize.bundle_to_json(kd, src.reflect_json())), args.out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("sympow", "gamma"):
            return _matrix_command(args)
        if args.command == "verify":
            return _verify(args)
        return _build(args)
    except CapacityError as exc:
        print(f"kgsys: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (MalformedInputError, ReflectionError, KConditionError) as exc:
        print(f"kgsys: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
