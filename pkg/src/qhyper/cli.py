"""Command-line front end.

Exit codes: 0 when every check passes (or a value was computed), 1 when a law
fails or a countermodel is found, 2 for usage, input and capacity errors.
Reports go to stdout; logs and error messages go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

from . import commands
from .commands import Outcome
from .config import DEFAULT_BOUNDS, DEFAULT_SEED, LOG_FORMAT, LOG_LEVEL, Bounds
from .errors import InputError, WorkbenchError
from .hyperdoctrine import Model
from .logic import baseline_rules, classical_schemas, load_ruleset
from .serialization import dump_json, load_model, load_signature, read_json, resolve_omega

logger = logging.getLogger(__name__)

DEFAULT_POOL = ("2", "boolean:2", "mo2", "o6")


# =============================================================================
# ARGUMENT PARSING
# =============================================================================


def _sizes(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {text!r}") from None


def _bound(text: str) -> tuple:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip().replace("-", "_"), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound {key!r} needs an integer") from None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="json")
    common.add_argument("--log-level", type=str.upper, default=LOG_LEVEL,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    common.add_argument("--bound", type=_bound, action="append", default=[], metavar="KEY=VALUE",
                        help="override an enumeration bound, e.g. fibre=20000")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return common


def _model_source(parser: argparse.ArgumentParser, sizes: Optional[str] = None) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--model", type=Path, help="model JSON file")
    source.add_argument("--omega", help="algebra file or builtin: 2, mo2, o6, boolean:K, chain:N")
    parser.add_argument("--sizes", type=_sizes, default=_sizes(sizes) if sizes else None,
                        help="carrier sizes of X, Y, Z (finite-set objects when --omega is used)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="qhyper", description="Finite-model workbench for quantum hyperdoctrines.",
    )
    areas = parser.add_subparsers(dest="area", required=True)

    algebra = areas.add_parser("algebra", help="value algebras").add_subparsers(dest="action", required=True)
    check = algebra.add_parser("check", parents=[common], help="check the laws of an algebra class")
    check.add_argument("--file", help="algebra JSON file or builtin name")
    check.add_argument("--omega", dest="file", help=argparse.SUPPRESS)
    check.add_argument("--class", dest="algebra_class",
                       help="poset, bounded-lattice, distributive, heyting, frame, boolean, ortholattice or orthomodular")
    gen = algebra.add_parser("gen", parents=[common], help="print a generated algebra")
    gen.add_argument("name", nargs="?", help="2, mo2, o6, boolean:K or chain:N")
    gen.add_argument("--file", type=Path, help="subspace spec JSON: {dim, generators, size_cap?}")

    model = areas.add_parser("model", help="models and predicates").add_subparsers(dest="action", required=True)
    validate = model.add_parser("validate", parents=[common], help="check omega laws and fibre closure")
    validate.add_argument("--model", type=Path, required=True)
    fibre = model.add_parser("fibre", parents=[common], help="enumerate the fibre over an object")
    fibre.add_argument("--model", type=Path, required=True)
    fibre.add_argument("--object", required=True)
    fibre.add_argument("--limit", type=int)
    evaluate = model.add_parser("eval", parents=[common], help="interpret a formula")
    evaluate.add_argument("--model", type=Path, required=True)
    evaluate.add_argument("--sig", type=Path, required=True)
    evaluate.add_argument("formula")

    laws = areas.add_parser("laws", help="hyperdoctrine laws").add_subparsers(dest="action", required=True)
    for law in commands.LAWS:
        sub = laws.add_parser(law, parents=[common])
        _model_source(sub)
        sub.add_argument("--objects", type=lambda s: [p for p in s.split(",") if p],
                         help="comma-separated model object names")
        if law in ("adjunction", "bc", "lifting"):
            sub.add_argument("--which", choices=commands.QUANTIFIERS)

    topos = areas.add_parser("topos", help="tripos-to-topos category").add_subparsers(dest="action", required=True)
    build = topos.add_parser("build", parents=[common])
    _model_source(build)
    build.add_argument("--cap", type=int, help="largest base carrier")

    vset = areas.add_parser("vset", help="omega-valued universe").add_subparsers(dest="action", required=True)
    for action in ("count", "build"):
        sub = vset.add_parser(action, parents=[common])
        sub.add_argument("--omega", required=True)
        sub.add_argument("--rank", type=int, required=True)
        if action == "build":
            sub.add_argument("--cap", type=int)
            sub.add_argument("--counts-only", action="store_true")

    logic = areas.add_parser("logic", help="typed quantum logic").add_subparsers(dest="action", required=True)
    lcheck = logic.add_parser("check", parents=[common], help="validity of a sequent in one model")
    lcheck.add_argument("--model", type=Path, required=True)
    lcheck.add_argument("--sig", type=Path)
    lcheck.add_argument("sequent")
    sound = logic.add_parser("soundness", parents=[common], help="soundness of inference rules")
    _model_source(sound, "2,2")
    sound.add_argument("--sig", type=Path)
    rules = sound.add_mutually_exclusive_group()
    rules.add_argument("--rules", type=Path, help="rule file (default: the baseline rules)")
    rules.add_argument("--schemas", action="store_true", help="use the classical schemas")
    sound.add_argument("--rule", action="append", default=[], help="only this rule (repeatable)")
    sound.add_argument("--samples", type=int)
    sound.add_argument("--exhaustive", action="store_true")
    counter = logic.add_parser("countermodel", parents=[common], help="search a model pool")
    counter.add_argument("sequent")
    counter.add_argument("--omega", action="append", default=[],
                         help=f"pool algebra (repeatable; default {', '.join(DEFAULT_POOL)})")
    counter.add_argument("--sizes", type=_sizes, default=[1, 2])

    serve = areas.add_parser("serve", parents=[common], help="run the MCP tool server on stdio")
    serve.set_defaults(action=None)
    return parser


# =============================================================================
# LOADING
# =============================================================================


def _bounds(args: argparse.Namespace) -> Bounds:
    try:
        return DEFAULT_BOUNDS.override(**dict(args.bound))
    except ValueError as e:
        raise InputError(str(e)) from None


def _load_model(args: argparse.Namespace, bounds: Bounds, sort_names: Sequence[str] = ()) -> Model:
    if getattr(args, "model", None) is not None:
        return load_model(args.model, bounds)
    omega = resolve_omega(args.omega, Path.cwd(), bounds)
    return commands.finset_model(omega, args.sizes or [], bounds, sort_names, str(args.omega))


def _run(args: argparse.Namespace) -> Outcome:
    bounds = _bounds(args)
    area, action = args.area, args.action

    if area == "algebra" and action == "check":
        if not args.file:
            raise InputError("algebra check needs --file")
        return commands.algebra_check(resolve_omega(args.file, Path.cwd(), bounds), args.algebra_class)
    if area == "algebra":
        subspaces = read_json(args.file) if args.file else None
        return commands.algebra_generate(args.name, subspaces, bounds)

    if area == "model":
        model = load_model(args.model, bounds)
        if action == "validate":
            return commands.model_validate(model)
        if action == "fibre":
            return commands.model_fibre(model, model.object(args.object), args.limit)
        return commands.model_eval(model, load_signature(model, args.sig), args.formula)

    if area == "laws":
        model = _load_model(args, bounds)
        objects = commands.pick_objects(model, args.sizes if args.model else None, args.objects)
        return commands.law_check(model, action, objects, getattr(args, "which", None))

    if area == "topos":
        return commands.topos_build(_load_model(args, bounds), args.cap, args.seed, bounds)

    if area == "vset":
        omega = resolve_omega(args.omega, Path.cwd(), bounds)
        if action == "count":
            return commands.vset_count(omega, args.rank, bounds)
        return commands.vset_build(omega, args.rank, args.cap, bounds, not args.counts_only)

    if action == "check":
        model = load_model(args.model, bounds)
        signature = load_signature(model, args.sig) if args.sig else None
        return commands.logic_check(model, signature, args.sequent)
    if action == "soundness":
        model = _load_model(args, bounds, ("S", "T"))
        signature = load_signature(model, args.sig) if args.sig else None
        if args.schemas:
            ruleset = classical_schemas()
        else:
            ruleset = load_ruleset(args.rules) if args.rules else baseline_rules()
        return commands.logic_soundness(
            model, signature, ruleset, args.rule, args.samples, args.seed, args.exhaustive
        )
    omegas = [(name, resolve_omega(name, Path.cwd(), bounds)) for name in args.omega or DEFAULT_POOL]
    return commands.logic_countermodel(args.sequent, omegas, args.sizes, bounds)


# =============================================================================
# OUTPUT
# =============================================================================


def render_text(data: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return lines
    if isinstance(data, list):
        lines = []
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
        return lines
    return [f"{pad}{data}"]


def emit(outcome: Outcome, fmt: str) -> None:
    if fmt == "json":
        print(dump_json(outcome.report))
    else:
        print("\n".join(render_text(outcome.report)))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr, force=True)

    if args.area == "serve":
        from .server import run_server

        run_server()
        return 0

    try:
        outcome = _run(args)
    except WorkbenchError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 2
    emit(outcome, args.format)
    return 0 if outcome.ok else 1


if __name__ == "__main__":
    sys.exit(main())
