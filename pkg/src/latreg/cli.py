"""``latreg`` command-line front end.

Exit status: 0 when every check passes (or a query was answered), 1 when a
verification run finds a mathematical failure, 2 for usage and I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from latreg.catalog import all_entries
from latreg.polytope import Polytope, is_elementary
from latreg.symmetry import are_congruent, is_lattice_regular, symmetry_group
from latreg.verify import run_classify_2d, run_verify_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("latreg")


class UsageError(Exception):
    pass


def _load(path: str) -> Polytope:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return Polytope.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a polytope: {exc}") from exc


def _dump(obj, stream=None):
    stream = stream or sys.stdout
    json.dump(obj, stream, indent=2, sort_keys=False)
    stream.write("\n")


def _write_report(path, obj):
    try:
        with open(path, "w") as fh:
            _dump(obj, fh)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_catalog(args) -> int:
    entries = all_entries(args.max_dim)
    if args.format == "json":
        _dump([e.to_json() for e in entries])
    else:
        for e in entries:
            print(f"{e.name:28s} {e.schlafli:16s} vol={e.expected['lattice_volume']:<6d}"
                  f" flags={e.expected['flag_count']}")
    return EXIT_OK


def cmd_volume(args) -> int:
    print(_load(args.file).lattice_volume)
    return EXIT_OK


def cmd_regular(args) -> int:
    ok, witness = is_lattice_regular(_load(args.file))
    print("true" if ok else "false")
    if witness is not None:
        base, other = witness
        print(f"no lattice symmetry maps flag {list(base)} to flag {list(other)}", file=sys.stderr)
    return EXIT_OK


def cmd_elementary(args) -> int:
    print("true" if is_elementary(_load(args.file)) else "false")
    return EXIT_OK


def cmd_congruent(args) -> int:
    f = are_congruent(_load(args.a), _load(args.b))
    if args.emit_map:
        _dump(None if f is None else f.to_json())
    else:
        print("true" if f is not None else "false")
    return EXIT_OK


def cmd_symmetries(args) -> int:
    p = _load(args.file)
    group = symmetry_group(p)
    n_flags = len(group.polytope.flags)
    if args.emit_matrices:
        _dump({"order": group.order, "flags": n_flags,
               "elements": [g.to_json() for g in group.elements]})
    else:
        print(f"order {group.order}, {n_flags} flags, "
              f"{'lattice-regular' if group.order == n_flags else 'not lattice-regular'}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = run_verify_theorem(args.max_dim, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for e in report.entries:
        status = "ok  " if e.passed else "FAIL"
        print(f"{status} {e.name:28s} volume {e.lattice_volume:<6d} group {e.group_order}")
    for c in report.controls:
        print(f"{'ok  ' if c.passed else 'FAIL'} control {c.name}: {c.observed}")
    print(f"{len(report.entries)} entries, {report.pair_checks} same-dimension pairs, "
          f"{'PASS' if report.passed else 'FAIL'}")
    for stage, secs in report.timings.items():
        print(f"  {stage}: {secs:.2f}s", file=sys.stderr)
    if args.report:
        _write_report(args.report, report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_classify(args) -> int:
    try:
        report = run_classify_2d(args.radius)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{report.examined} polygons examined, {report.passing} elementary lattice-regular, "
          f"{report.n_classes} classes")
    for rep, match in zip(report.representatives, report.catalog_matches):
        print(f"  {list(map(list, rep.vertices))} ~ {match}")
    for stage, secs in report.timings.items():
        print(f"  {stage}: {secs:.2f}s", file=sys.stderr)
    if args.report:
        _write_report(args.report, report.to_json())
    ok = (report.n_classes == 6 and report.pentagons == 0
          and None not in report.catalog_matches
          and len(set(report.catalog_matches)) == report.n_classes)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latreg", description="Lattice-regular lattice polytopes.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the catalog up to a dimension")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_catalog)

    for name, func, text in (("volume", cmd_volume, "normalised lattice volume"),
                             ("regular", cmd_regular, "lattice-regularity test"),
                             ("elementary", cmd_elementary, "is the polytope not a multiple")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("congruent", help="lattice congruence of two polytopes")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--emit-map", action="store_true", help="print the witness map as JSON")
    p.set_defaults(func=cmd_congruent)

    p = sub.add_parser("symmetries", help="lattice symmetry group")
    p.add_argument("file")
    p.add_argument("--emit-matrices", action="store_true")
    p.set_defaults(func=cmd_symmetries)

    p = sub.add_parser("verify-theorem", help="check the catalog up to a dimension")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", metavar="OUT.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify-2d", help="exhaustive classification of lattice-regular polygons")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--report", metavar="OUT.json")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)   # exits with status 2 on bad usage
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"latreg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"latreg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
