"""Command-line front end.

Exit status is 0 on success, 2 when a verdict is inconclusive and 1 on any
error.  Errors are reported as ``{"error": {"code": ..., ...}}`` in JSON mode.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import OrderedDict
from pathlib import Path
from typing import List, Optional

from .annulus import AnnulusDiagram, resolve
from .errors import BadParameters, ParseError, SkeinError
from .heegaard import H0, H1, GluingMatrix, SplittingSpec, preset
from .hochschild import HochschildChain, boundary, specialized_hh0, torsion_verdict
from .parsing import parse_element
from .polyring import tor1_module_auto
from .surface import TorusCurve, check_primitive, torus_relation, trace_poly

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


def _split(args) -> SplittingSpec:
    if getattr(args, "gluing", None) and getattr(args, "manifold", None):
        raise BadParameters("give either --gluing or --manifold, not both")
    if getattr(args, "gluing", None):
        return SplittingSpec(GluingMatrix.parse(args.gluing), "custom")
    if getattr(args, "manifold", None):
        return preset(args.manifold)
    raise BadParameters("one of --gluing or --manifold is required")


def _curve(text: str) -> TorusCurve:
    e = parse_element(text)
    items = list(e.items())
    if len(items) != 1 or len(items[0][0]) != 1 or items[0][1] != 1:
        raise BadParameters(f"{text!r} is not a single curve")
    return check_primitive(items[0][0][0])


# ---------------------------------------------------------------------------
# commands; each returns (report, exit status)


def cmd_resolve(args):
    path = Path(args.diagram)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise BadParameters(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.pos, ["JSON"]) from None
    d = AnnulusDiagram.from_json(data)
    value = resolve(d)
    return OrderedDict([("crossings", len(d.crossings)), ("value", str(value)),
                        ("coefficients", value.to_json())]), EXIT_OK


def cmd_trace(args):
    c = _curve(args.curve)
    return OrderedDict([("curve", str(c)), ("trace", str(trace_poly(c)))]), EXIT_OK


def cmd_ideals(args):
    s = _split(args)
    out = OrderedDict([("manifold", s.name), ("gluing", str(s.gluing))])
    for side, ideal in ((H0, s.J), (H1, s.K)):
        out[side] = OrderedDict([
            ("killed", str(s.killed(side))),
            ("core", str(s.core(side))),
            ("generators", [str(g) for g in ideal.generators]),
            ("groebner", [str(g) for g in ideal.groebner()]),
        ])
    return out, EXIT_OK


def cmd_tor1(args):
    s = _split(args)
    r = tor1_module_auto(s.J, s.K, torus_relation(), start=args.degree_bound,
                         limit=max(32, args.degree_bound))
    return OrderedDict([
        ("manifold", s.name),
        ("gluing", str(s.gluing)),
        ("stabilized", r.stabilized),
        ("degree_bound", r.degree_bound),
        ("dimension", r.dimension if r.stabilized else None),
        ("generators", [str(g) for g in r.generators]),
        ("basis", [str(b) for b in r.vector_space_basis]),
        ("relations", [str(g) for g in r.relations]),
    ]), EXIT_OK


def cmd_delta1(args):
    s = _split(args)
    chain = HochschildChain.simple(parse_element(args.cycle))
    bd = boundary(chain, s)
    val = bd.valuation()
    return OrderedDict([
        ("manifold", s.name),
        ("gluing", str(s.gluing)),
        ("cycle", str(chain)),
        ("boundary", str(bd)),
        ("valuation", "INFINITY" if val == float("inf") else val),
    ]), EXIT_OK


def cmd_verdict(args):
    s = _split(args)
    report = torsion_verdict(s, args.lift, degree_bound=args.degree_bound)
    code = EXIT_INCONCLUSIVE if report.verdict.startswith("INCONCLUSIVE") else EXIT_OK
    return report.to_json(), code


def cmd_hh0(args):
    s = _split(args)
    q = specialized_hh0(s, args.degree_bound)
    return OrderedDict([
        ("manifold", s.name),
        ("gluing", str(s.gluing)),
        ("finite", q.finite),
        ("dimension", q.dimension),
        ("basis", [str(p) for p in q.as_polys()]),
    ]), EXIT_OK


COMMANDS = {
    "resolve": cmd_resolve,
    "trace": cmd_trace,
    "ideals": cmd_ideals,
    "tor1": cmd_tor1,
    "delta1": cmd_delta1,
    "verdict": cmd_verdict,
    "hh0": cmd_hh0,
}


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeinhh", description="Skein modules of genus one splittings at t = -1.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def with_split(sp):
        sp.add_argument("--gluing", help='gluing matrix "p,q;r,s"')
        sp.add_argument("--manifold", help="lens:p,q | s1xs2 | s3 | identity_double")
        return sp

    def with_bound(sp, default=8):
        sp.add_argument("--degree-bound", type=int, default=default, dest="degree_bound")
        return sp

    r = sub.add_parser("resolve", help="evaluate an annulus diagram file")
    r.add_argument("diagram")
    t = sub.add_parser("trace", help="trace polynomial of a torus curve")
    t.add_argument("--curve", required=True)
    with_split(sub.add_parser("ideals", help="handlebody ideals"))
    with_bound(with_split(sub.add_parser("tor1", help="Tor_1 of the handlebody quotients")))
    d = with_split(sub.add_parser("delta1", help="boundary of a degree one chain"))
    d.add_argument("--cycle", required=True)
    v = with_bound(with_split(sub.add_parser("verdict", help="(1+t)-torsion test")))
    v.add_argument("--lift", choices=("library", "solver"), default="library")
    with_bound(with_split(sub.add_parser("hh0", help="specialized HH_0 presentation")))

    # allow --format after the subcommand as well
    for sp in sub.choices.values():
        sp.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    return p


def _text(report, indent=0) -> List[str]:
    pad = " " * indent
    lines = []
    if isinstance(report, dict):
        width = max((len(str(k)) for k in report), default=0)
        for k, v in report.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                sub = _text(item, indent + 2)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(report))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(report, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(_text(report)) + "\n")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        report, code = COMMANDS[args.command](args)
    except SkeinError as exc:
        err = {"error": exc.to_dict()}
        if args.format == "json":
            emit(err, "json", stdout)
        else:
            stderr.write(f"error [{exc.code}]: {exc}\n")
        return EXIT_ERROR
    emit(report, args.format, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
