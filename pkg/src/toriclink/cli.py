"""Command line interface.

Exit codes: 0 success, 1 parse or validation error, 2 a mathematical check failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bundle import project_boundary_fan
from .errors import ConsistencyError, SignAssignmentError, ToricLinkError
from .fan import Cone, Fan
from .formats import (
    betti_table_text,
    corpus_names,
    dumps,
    link_report_text,
    parse_fan_file,
    projection_text,
)
from .fuzz import run_fuzz
from .homology import betti, build_link_complex, build_variety_complex
from .invariants import verify_link_formulas

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(Exception):
    pass


def _parse_ray(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load(path: str, want: type):
    obj = parse_fan_file(path)
    if not isinstance(obj, want):
        kind = "fan (with max_cones)" if want is Fan else "single cone (without max_cones)"
        raise InputError(f"{path}: expected a {kind} file")
    return obj


def _name(path: str) -> str:
    return Path(path).stem


def cmd_homology(args) -> tuple[int, object, str]:
    fan = _load(args.input, Fan)
    b = betti(build_variety_complex(fan))
    data = {"input": _name(args.input), "kind": "variety", **b.to_dict()}
    return EXIT_OK, data, betti_table_text(b, _name(args.input))


def cmd_link(args) -> tuple[int, object, str]:
    cone = _load(args.input, Cone)
    b = betti(build_link_complex(cone))
    data = {"input": _name(args.input), "kind": "link", **b.to_dict()}
    return EXIT_OK, data, betti_table_text(b, f"{_name(args.input)} link")


def cmd_project(args) -> tuple[int, object, str]:
    cone = _load(args.input, Cone)
    if cone.dim != cone.ambient_rank:
        raise InputError("projection needs a full-dimensional cone")
    if args.ray is not None and len(args.ray) != cone.ambient_rank:
        raise InputError(f"--ray must have {cone.ambient_rank} entries")
    result = project_boundary_fan(cone, args.ray)
    b = betti(build_variety_complex(result.base_fan))
    data = {"input": _name(args.input), **result.to_dict(), "base_betti": b.to_dict()}
    return EXIT_OK, data, projection_text(result.to_dict(), b)


def cmd_verify(args) -> tuple[int, object, str]:
    cone = _load(args.input, Cone)
    if cone.ambient_rank != 4 or cone.dim != 4:
        raise InputError("verify needs a full-dimensional cone in Z^4")
    if args.ray is not None and len(args.ray) != 4:
        raise InputError("--ray must have 4 entries")
    report = verify_link_formulas(cone, _name(args.input), args.ray)
    data = report.to_dict()
    return (EXIT_OK if report.passed else EXIT_CHECK), data, link_report_text(data)


def cmd_fuzz(args) -> tuple[int, object, str]:
    summary = run_fuzz(args.count, args.seed, args.workers)
    data = summary.to_dict()
    lines = [f"fuzz: {summary.count} cones, seed {summary.seed}, {len(summary.failed)} failed"]
    for case in data["cases"]:
        flag = "ok  " if case["passed"] else "FAIL"
        lines.append(f"  {flag} #{case['index']:<4} f1={case['f1']:<3} f2={case['f2']:<3} "
                     f"b2={case['b2']} m={case['m']} betti={' '.join(map(str, case['link_betti']))}")
        for ch in case["failed_checks"]:
            lines.append(f"         {ch['name']}: expected {ch['expected']}, got {ch['actual']}")
    return (EXIT_CHECK if summary.failed else EXIT_OK), data, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(
        prog="toriclink",
        description="Exact rational homology of toric varieties and links of toric orbits.",
        epilog="Bundled inputs (usable by name): " + ", ".join(corpus_names()),
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("homology", parents=[common], help="Betti numbers of the toric variety of a complete fan")
    s.add_argument("input")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("link", parents=[common], help="Betti numbers of the link of a cone's orbit")
    s.add_argument("input")
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("project", parents=[common], help="project a cone's boundary along an interior ray")
    s.add_argument("input")
    s.add_argument("--ray", type=_parse_ray, help="interior ray, e.g. 1,1,1,1")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("verify", parents=[common], help="full report for a 4-cone")
    s.add_argument("input")
    s.add_argument("--ray", type=_parse_ray, help="interior ray used for the projection")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fuzz", parents=[common], help="verify seeded random 4-cones")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, data, text = args.func(args)
    except (ConsistencyError, SignAssignmentError, ArithmeticError) as exc:
        print(f"error: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ToricLinkError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = dumps(data) if args.format == "json" else text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
