"""Command-line interface: JSON fan/divisor files and report commands.

Fan files are JSON objects with keys ``dim`` (int), ``rays`` (list of integer
vectors), ``max_cones`` (list of ray-index lists), and optional ``labels``
(list of strings, one per maximal cone).  Ray order in the file is semantic:
divisor files align to it by index.  Divisor files are JSON objects with a
single key ``coefficients`` (list of integers, one per ray).

Exit codes: 0 the command ran and the queried property holds (or data was
produced); 1 the command ran and the property fails; 2 input error; 3
internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import divisor as divisor_ops
from .egyptian import PyramidalKind, egyptian_report, small_modification, verify_modification
from .errors import InvariantError
from .exactlin import primitive
from .fan import Fan
from .families import yu_fan

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


class InputError(Exception):
    """Malformed file, missing argument, or a value the library rejects."""


class FanInvalidError(InputError):
    """The file is well-formed JSON but describes something that is not a fan."""


def parse_fan_file(text: str) -> tuple[Fan, Optional[list[str]], list[str]]:
    """Parse a fan file; returns (fan, labels, warnings).

    Rays are primitivized with a warning rather than rejected; duplicate rays
    (after primitivization) and anything the fan validator rejects raise
    ``InputError``.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError("fan file must be a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise InputError(f"fan file is missing the key {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InputError("dim must be a positive integer")
    rays_in = data["rays"]
    if not isinstance(rays_in, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rays_in
    ):
        raise InputError("rays must be a list of integer vectors")
    warnings: list[str] = []
    rays: list[tuple[int, ...]] = []
    for i, r in enumerate(rays_in):
        if len(r) != dim:
            raise InputError(f"ray {i} has length {len(r)}, expected {dim}")
        if all(x == 0 for x in r):
            raise InputError(f"ray {i} is zero")
        p = primitive(r)
        if p != tuple(r):
            warnings.append(f"ray {i} = {r} primitivized to {list(p)}")
        rays.append(p)
    if len(set(rays)) != len(rays):
        raise InputError("duplicate rays after primitivization")
    max_cones = data["max_cones"]
    if not isinstance(max_cones, list) or not all(
        isinstance(mc, list) and all(isinstance(i, int) for i in mc) for mc in max_cones
    ):
        raise InputError("max_cones must be a list of ray-index lists")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise InputError("labels must be a list of strings")
        if len(labels) != len(max_cones):
            raise InputError("labels must match max_cones in length")
    try:
        fan = Fan.from_cones(dim, rays, max_cones)
    except ValueError as exc:
        raise FanInvalidError(str(exc)) from exc
    return fan, labels, warnings


def parse_divisor_file(text: str, fan: Fan) -> tuple[int, ...]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict) or "coefficients" not in data:
        raise InputError("divisor file must be a JSON object with a 'coefficients' key")
    coeffs = data["coefficients"]
    if not isinstance(coeffs, list) or not all(isinstance(x, int) for x in coeffs):
        raise InputError("coefficients must be a list of integers")
    if len(coeffs) != len(fan.rays):
        raise InputError(
            f"divisor has {len(coeffs)} coefficients but the fan has {len(fan.rays)} rays"
        )
    return tuple(coeffs)


def fan_to_json(fan: Fan, labels: Optional[Sequence[str]] = None) -> str:
    data = {
        "dim": fan.ambient_rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(mc) for mc in fan.max_cones],
    }
    if labels is not None:
        data["labels"] = list(labels)
    return json.dumps(data, indent=2) + "\n"


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _print_report(report: dict, as_json: bool) -> None:
    report = _jsonable(report)
    if as_json:
        print(json.dumps(report, indent=2))
        return

    def emit_line(key, value):
        if isinstance(value, dict):
            for k, v in value.items():
                emit_line(f"{key}.{k}", v)
        else:
            print(f"{key}: {value}")

    for k, v in report.items():
        emit_line(k, v)


def _group_dict(group) -> dict:
    return {
        "rank": group.rank,
        "invariant_factors": list(group.invariant_factors),
        "trivial": group.is_trivial,
        "group": str(group),
    }


def _load_fan(args) -> tuple[Fan, Optional[list[str]], list[str]]:
    if not args.fan:
        raise InputError("this command needs --fan PATH")
    try:
        text = open(args.fan).read()
    except OSError as exc:
        raise InputError(f"cannot read {args.fan}: {exc}") from exc
    return parse_fan_file(text)


def _load_divisor(args, fan: Fan) -> tuple[int, ...]:
    if not args.divisor:
        raise InputError("this command needs --divisor PATH")
    try:
        text = open(args.divisor).read()
    except OSError as exc:
        raise InputError(f"cannot read {args.divisor}: {exc}") from exc
    return parse_divisor_file(text, fan)


def _need_ray(args, fan: Fan) -> int:
    if args.ray is None:
        raise InputError("this command needs --ray INDEX")
    if not 0 <= args.ray < len(fan.rays):
        raise InputError(f"ray index {args.ray} out of range 0..{len(fan.rays) - 1}")
    return args.ray


def _cmd_validate(args, report):
    # A well-formed file describing an invalid fan is the property failing;
    # an unreadable or unparseable file is an input error.
    try:
        fan, labels, warnings = _load_fan(args)
    except FanInvalidError as exc:
        report["valid"] = False
        report["error"] = str(exc)
        return EXIT_PROPERTY_FAILS
    report["valid"] = True
    report["warnings"] = warnings
    report["rays"] = len(fan.rays)
    report["max_cones"] = len(fan.max_cones)
    report["complete"] = fan.is_complete()
    return EXIT_OK


def _cmd_complete(args, report):
    fan, _, warnings = _load_fan(args)
    report["warnings"] = warnings
    verdict = fan.is_complete()
    report["complete"] = verdict
    return EXIT_OK if verdict else EXIT_PROPERTY_FAILS


def _cmd_cartier(args, report):
    fan, _, _ = _load_fan(args)
    coeffs = _load_divisor(args, fan)
    integral = divisor_ops.cartier_data(fan, coeffs, mode="integral")
    rational = divisor_ops.cartier_data(fan, coeffs, mode="rational")
    report["cartier"] = integral is not None
    report["q_cartier"] = rational is not None
    if integral is not None:
        report["characters"] = [list(m) for m in integral.characters]
    elif rational is not None:
        report["rational_characters"] = [[str(Fraction(x)) for x in m] for m in rational.characters]
    return EXIT_OK if integral is not None else EXIT_PROPERTY_FAILS


def _cmd_index(args, report):
    fan, _, _ = _load_fan(args)
    coeffs = _load_divisor(args, fan)
    index = divisor_ops.cartier_index(fan, coeffs)
    report["q_cartier"] = index is not None
    report["cartier_index"] = index
    return EXIT_OK if index is not None else EXIT_PROPERTY_FAILS


def _cmd_picard(args, report):
    fan, _, _ = _load_fan(args)
    try:
        group = divisor_ops.picard_group(fan)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["picard"] = _group_dict(group)
    return EXIT_OK


def _cmd_classgroup(args, report):
    fan, _, _ = _load_fan(args)
    try:
        group = divisor_ops.class_group(fan)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["class_group"] = _group_dict(group)
    return EXIT_OK


def _cmd_projective(args, report):
    fan, _, _ = _load_fan(args)
    try:
        result = divisor_ops.is_projective(fan)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["projective"] = result.feasible
    if result.feasible:
        report["ample_divisor"] = list(result.witness_divisor)
        report["characters"] = [list(m) for m in result.witness_data.characters]
    else:
        report["verdict"] = "Infeasible"
    return EXIT_OK if result.feasible else EXIT_PROPERTY_FAILS


def _cmd_egyptian(args, report):
    fan, _, _ = _load_fan(args)
    ray = _need_ray(args, fan)
    try:
        result = egyptian_report(fan, ray, allow_incomplete=args.allow_incomplete)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["ray"] = ray
    report["per_cone"] = {
        str(ci): cls.kind.value for ci, cls in result.per_cone
    }
    report["egyptian"] = result.verdict
    return EXIT_OK if result.verdict else EXIT_PROPERTY_FAILS


def _cmd_modify(args, report):
    fan, _, _ = _load_fan(args)
    ray = _need_ray(args, fan)
    try:
        probe = egyptian_report(fan, ray, allow_incomplete=args.allow_incomplete)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not probe.verdict:
        report["egyptian"] = False
        report["error"] = "ray not in Egyptian position"
        return EXIT_PROPERTY_FAILS
    result = small_modification(fan, ray, allow_incomplete=args.allow_incomplete)
    checks = verify_modification(result)
    report["egyptian"] = True
    report["max_cones"] = len(result.fan.max_cones)
    report["splits"] = {str(orig): list(pair) for orig, pair in result.split_cones}
    report["exceptional_walls"] = [list(w.ray_indices) for w in result.exceptional_walls]
    report["verification"] = {
        "passed": checks.passed,
        "failures": list(checks.failures),
    }
    if args.emit:
        open(args.emit, "w").write(fan_to_json(result.fan))
        report["emitted"] = args.emit
    if not checks.passed:
        raise InvariantError("; ".join(checks.failures))
    return EXIT_OK


def _cmd_degree(args, report):
    fan, _, _ = _load_fan(args)
    coeffs = _load_divisor(args, fan)
    try:
        polytope = divisor_ops.divisor_polytope(fan, coeffs)
        ehrhart, degree = divisor_ops.polytope_degree(polytope, fan.ambient_rank)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["vertices"] = [[str(Fraction(x)) for x in v] for v in polytope.vertices]
    report["counting_polynomial"] = [str(c) for c in ehrhart]
    report["degree"] = degree
    return EXIT_OK


def _cmd_family(args, report):
    if args.which != "yu":
        raise InputError(f"unknown family {args.which!r} (available: yu)")
    if args.n is None or args.u is None:
        raise InputError("family yu needs --n and --u")
    try:
        yu = yu_fan(args.n, args.u)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["family"] = "yu"
    report["n"], report["u"] = args.n, args.u
    report["rays"] = len(yu.fan.rays)
    report["max_cones"] = len(yu.fan.max_cones)
    report["complete"] = yu.fan.is_complete()
    if args.emit:
        open(args.emit, "w").write(fan_to_json(yu.fan, yu.labels))
        report["emitted"] = args.emit
    else:
        report["fan"] = json.loads(fan_to_json(yu.fan, yu.labels))
    return EXIT_OK


def _cmd_report(args, report):
    """Hypothesis check: ray in Egyptian position with projective divisor.

    When both hypotheses hold the fan admits rank-n locally free sheaves
    with top Chern number growing like degree * t^(n-1); the modification,
    its verification, and the growth statement are appended.
    """
    fan, _, _ = _load_fan(args)
    ray = _need_ray(args, fan)
    if not fan.is_complete():
        raise InputError("report requires a complete fan")
    n = fan.ambient_rank
    result = egyptian_report(fan, ray)
    report["egyptian"] = result.verdict
    if not result.verdict:
        report["verdict"] = "hypothesis fails: ray not in Egyptian position"
        return EXIT_PROPERTY_FAILS
    quotient = fan.quotient(ray)
    divisor_projective = divisor_ops.is_projective(quotient)
    report["divisor_projective"] = divisor_projective.feasible
    if not divisor_projective.feasible:
        report["verdict"] = "hypothesis fails: the divisor of the ray is not projective"
        return EXIT_PROPERTY_FAILS

    modification = small_modification(fan, ray)
    checks = verify_modification(modification)
    report["modification"] = {
        "max_cones": len(modification.fan.max_cones),
        "exceptional_walls": [list(w.ray_indices) for w in modification.exceptional_walls],
        "verified": checks.passed,
    }
    if not checks.passed:
        raise InvariantError("; ".join(checks.failures))
    ample = divisor_projective.witness_divisor
    polytope = divisor_ops.divisor_polytope(quotient, ample)
    _, degree = divisor_ops.polytope_degree(polytope, n - 1)
    growth = divisor_ops.chern_growth(n, degree)
    report["ample_divisor_on_divisor_fan"] = list(ample)
    report["degree"] = degree
    report["growth"] = growth.statement
    report["growth_note"] = growth.note
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "complete": _cmd_complete,
    "cartier": _cmd_cartier,
    "index": _cmd_index,
    "picard": _cmd_picard,
    "classgroup": _cmd_classgroup,
    "projective": _cmd_projective,
    "egyptian": _cmd_egyptian,
    "modify": _cmd_modify,
    "degree": _cmd_degree,
    "family": _cmd_family,
    "report": _cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricfan",
        description="Exact computations on rational polyhedral fans and toric divisors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, fan=False, div=False, ray=False, family=False, emit=False):
        p = sub.add_parser(name, help=help_text)
        if family:
            p.add_argument("which", help="family name (yu)")
            p.add_argument("--n", type=int, help="ambient dimension (>= 3)")
            p.add_argument("--u", type=int, help="family parameter (>= 1)")
        if fan:
            p.add_argument("--fan", help="path to a fan file (JSON)")
        if div:
            p.add_argument("--divisor", help="path to a divisor file (JSON)")
        if ray:
            p.add_argument("--ray", type=int, help="ray index into the fan file's ray list")
            p.add_argument("--allow-incomplete", action="store_true",
                           help="classify stars in a non-complete fan")
        if emit:
            p.add_argument("--emit", help="write the resulting fan file here")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        return p

    add("validate", "parse a fan file and run full fan validation", fan=True)
    add("complete", "decide completeness by the wall criterion", fan=True)
    add("cartier", "decide whether a divisor is Cartier (and Q-Cartier)", fan=True, div=True)
    add("index", "compute the Cartier index of a divisor", fan=True, div=True)
    add("picard", "compute the Picard group of a complete fan", fan=True)
    add("classgroup", "compute the divisor class group", fan=True)
    add("projective", "search for an ample divisor (strictly convex support function)", fan=True)
    add("egyptian", "classify the star of a ray as pyramidal extensions", fan=True, ray=True)
    add("modify", "apply the small modification at a ray in Egyptian position",
        fan=True, ray=True, emit=True)
    add("degree", "divisor polytope, counting polynomial, and degree", fan=True, div=True)
    add("family", "generate a named fan family (yu: --n, --u)", family=True, emit=True)
    add("report", "full hypothesis check plus growth statement for a fan and ray",
        fan=True, ray=True)
    return parser


def run(argv: Sequence[str]) -> int:
    """Run one command; prints a report and returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else EXIT_OK
    report: dict = {"command": " ".join(argv)}
    started = time.perf_counter()
    try:
        code = _COMMANDS[args.command](args, report)
    except InputError as exc:
        report["error"] = str(exc)
        code = EXIT_INPUT_ERROR
    except InvariantError as exc:
        report["internal_error"] = str(exc)
        code = EXIT_INTERNAL_ERROR
    except Exception as exc:  # unexpected: also an internal failure
        report["internal_error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_INTERNAL_ERROR
    report["exit_code"] = code
    report["timings"] = {"total_s": round(time.perf_counter() - started, 6)}
    _print_report(report, getattr(args, "json", False))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
