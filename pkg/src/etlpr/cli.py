"""Command-line front end.

Subcommands::

    check     decide recall/relation properties of a frame file
    mc        model-check a formula (fixed valuation or all valuations)
    verify    sweep one of the registered claims over enumerated frames
    dot       render a frame file as graphviz
    fixtures  list or emit the bundled example frames

Exit codes: 0 success / property holds / claim clean; 1 a requested
property or validity check failed, or a sweep found violations; 2 bad
input (parse errors, unknown names, guard refusals).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from . import __version__
from .claims import CLAIMS, verify_claim
from .dotexport import frame_to_dot
from .enumeration import EnumBounds
from .errors import EtlError, FormulaSyntaxError, SearchSpaceTooLarge
from .fixtures import FIXTURE_NAMES, MORPHISM_NAME, all_fixtures, fig4_morphism, fixture
from .formulas import Formula, parse_formula, spr_axiom, star_axiom, formula_to_text
from .framedoc import parse_frame_document, serialize_frame
from .frames import Frame
from .semantics import valid_on_frame, valid_on_model, truth_set
from .verdicts import PROPERTY_NAMES, property_table

OK, FAILED, BAD_INPUT = 0, 1, 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return BAD_INPUT


def _load_frame(path: str) -> Frame:
    return parse_frame_document(Path(path).read_text())


def _cmd_check(args) -> int:
    try:
        frame = _load_frame(args.frame)
    except (EtlError, OSError) as exc:
        return _fail(str(exc))
    requested = tuple(p.strip() for p in args.prop.split(",")) if args.prop else ()
    for name in requested:
        if name not in PROPERTY_NAMES:
            return _fail(f"unknown property {name!r}; known: {', '.join(PROPERTY_NAMES)}")
    names = requested or PROPERTY_NAMES
    verdicts = property_table(frame, names)
    width = max(len(v.name) for v in verdicts)
    for v in verdicts:
        status = "holds" if v.holds else "FAILS"
        line = f"{v.name:<{width}}  {status}"
        if v.witness:
            line += f"  {v.witness}"
        print(line)
    if requested and not all(v.holds for v in verdicts):
        return FAILED
    return OK


def _axiom_instances(frame: Frame, spec: str) -> list[tuple[str, Formula]]:
    alphabet = [e.name for e in frame.events]
    if spec == "spr":
        return [("spr", spr_axiom(alphabet))]
    if spec == "star":
        return [(f"star:{e}", star_axiom(e, alphabet)) for e in alphabet]
    if spec.startswith("star:"):
        event = spec.split(":", 1)[1]
        return [(spec, star_axiom(event, alphabet))]
    raise ValueError(f"unknown axiom {spec!r}; use star, star:<event> or spr")


def _load_valuation(frame: Frame, path: str) -> dict[str, frozenset[int]]:
    data = yaml.safe_load(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError("valuation file must map atoms to lists of history references")
    out = {}
    for atom, refs in data.items():
        if not isinstance(refs, list):
            raise ValueError(f"valuation of {atom!r} must be a list of history references")
        out[str(atom)] = frozenset(frame.resolve(r) for r in refs)
    return out


def _cmd_mc(args) -> int:
    try:
        frame = _load_frame(args.frame)
        if args.axiom:
            instances = _axiom_instances(frame, args.axiom)
        elif args.formula is not None:
            alphabet = [e.name for e in frame.events]
            instances = [(args.formula, parse_formula(args.formula, alphabet))]
        else:
            return _fail("give a formula or --axiom")
        valuation = _load_valuation(frame, args.valuation) if args.valuation else {}
    except (EtlError, OSError, ValueError) as exc:
        return _fail(str(exc))

    if args.all_valuations:
        exit_code = OK
        for name, formula in instances:
            try:
                ok, counter = valid_on_frame(frame, formula, ceiling=args.ceiling)
            except SearchSpaceTooLarge as exc:
                return _fail(str(exc))
            if ok:
                print(f"{name}: valid on the frame")
            else:
                exit_code = FAILED
                valuation, h = counter
                pretty = {
                    atom: sorted(frame.label(x) for x in hs)
                    for atom, hs in valuation.items()
                }
                print(f"{name}: invalid; countermodel V={pretty} fails at {frame.label(h)}")
        return exit_code

    for name, formula in instances:
        print(f"formula: {formula_to_text(formula) if args.axiom else name}")
        t = truth_set(frame, valuation, formula)
        for h in range(frame.n_histories):
            value = "true " if (t >> h) & 1 else "false"
            print(f"  {frame.label(h):<12} {value}")
        ok, failing = valid_on_model(frame, valuation, formula)
        if ok:
            print("  valid on this model")
        else:
            print(f"  fails on this model, first at {frame.label(failing)}")
    return OK


def _cmd_verify(args) -> int:
    flags = (args.max_events, args.max_depth, args.max_hist, args.trees)
    bounds = None
    if any(v is not None for v in flags) or args.s5 or args.introspective or args.ceiling:
        base = EnumBounds()
        bounds = EnumBounds(
            max_events=args.max_events or base.max_events,
            max_depth=args.max_depth or base.max_depth,
            max_histories=args.max_hist or base.max_histories,
            max_trees=args.trees or base.max_trees,
            relation_filter="s5" if args.s5 else ("introspective" if args.introspective else "all"),
            ceiling=args.ceiling,
        )
    try:
        report = verify_claim(args.claim, bounds, engine=args.engine, workers=args.workers)
    except EtlError as exc:
        return _fail(str(exc))
    for line in report.to_lines():
        print(line)
    return OK if report.ok else FAILED


def _cmd_dot(args) -> int:
    try:
        frame = _load_frame(args.frame)
    except (EtlError, OSError) as exc:
        return _fail(str(exc))
    sys.stdout.write(frame_to_dot(frame))
    return OK


def _morphism_document() -> str:
    m = fig4_morphism()
    lines = ["source: fig4b", "target: fig4a", "map:"]
    for a, b in m.describe():
        lines.append(f'- ["{a}", "{b}"]')
    return "\n".join(lines) + "\n"


def _cmd_fixtures(args) -> int:
    if args.action == "list":
        for info in all_fixtures():
            print(f"{info.name:14s} frame     {info.description}")
        print(f"{MORPHISM_NAME:14s} morphism  bounded morphism from fig4b onto fig4a")
        return OK
    name = args.name
    if name is None:
        return _fail("emit needs a fixture name")
    if name == MORPHISM_NAME:
        sys.stdout.write(_morphism_document())
        return OK
    if name not in FIXTURE_NAMES:
        return _fail(f"unknown fixture {name!r}; try 'fixtures list'")
    sys.stdout.write(serialize_frame(fixture(name)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etlpr",
        description="perfect-recall checking and claim sweeps on event-tree frames",
    )
    parser.add_argument("--version", action="version", version=f"etlpr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide properties of a frame file")
    p.add_argument("frame", help="frame document (YAML)")
    p.add_argument("--prop", help="comma-separated properties to require", default=None)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("mc", help="model-check a formula on a frame")
    p.add_argument("frame", help="frame document (YAML)")
    p.add_argument("formula", nargs="?", help="formula text")
    p.add_argument("--axiom", help="star | star:<event> | spr", default=None)
    p.add_argument("--valuation", help="YAML file mapping atoms to history refs")
    p.add_argument("--all-valuations", action="store_true",
                   help="decide frame validity by exhausting valuations")
    p.add_argument("--ceiling", type=int, default=None,
                   help="valuation sweep guard (default 2^24 or ETL_CEILING)")
    p.set_defaults(fn=_cmd_mc)

    p = sub.add_parser("verify", help="sweep a claim over enumerated frames")
    p.add_argument("claim", help=f"one of: {', '.join(sorted(CLAIMS))}")
    p.add_argument("--max-events", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--max-hist", type=int, default=None)
    p.add_argument("--trees", type=int, default=None, help="maximum number of trees")
    p.add_argument("--s5", action="store_true", help="restrict to equivalence relations")
    p.add_argument("--introspective", action="store_true",
                   help="restrict to transitive+Euclidean relations")
    p.add_argument("--engine", choices=("auto", "pure", "vector"), default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--ceiling", type=int, default=None,
                   help="enumeration guard (default 2^30 or ETL_CEILING)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("dot", help="render a frame file as graphviz")
    p.add_argument("frame", help="frame document (YAML)")
    p.set_defaults(fn=_cmd_dot)

    p = sub.add_parser("fixtures", help="list or emit the bundled frames")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?", help="fixture name (for emit)")
    p.set_defaults(fn=_cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
