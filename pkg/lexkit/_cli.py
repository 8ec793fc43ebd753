import argparse
import builtins
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import exactness, postulate
from ._logger import set_verbosity
from ._serialize import SCHEMA_VERSION, dumps
from .carrier import PRESHEAF_PREFIX, carrier_for
from .carrier.base import Carrier
from .completions import (
    famf_build,
    phi_closure,
    render_term,
    weight_class,
    weighted_colimit,
)
from .config import Cutoffs
from .document import Document, load_document
from .exactness import PROPERTIES, Status
from .exception import LexkitError, ReplayError
from .fincat import FinCategory, standard_shape

EXIT_CODES = {Status.HOLDS: 0, Status.FAILS: 1, Status.UNKNOWN: 2}
EXIT_USAGE = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    verbose: bool = False
    format: str = "text"
    carrier: str = "finset"
    max_size: int = 3
    samples: int = 200
    seed: int = 1
    probe_bound: int = 3
    budget: int = 2
    hom_cap: int = 4096
    property: str | None = None
    shape: str | None = None
    replay: str | None = None
    document: str | None = None
    cocone: str | None = None
    diagram: str | None = None
    cls: str | None = None
    cross_check: bool = False
    base: str | None = None
    classes: str | None = None
    max_length: int = 2
    kind: str | None = None

    @builtins.property
    def cutoffs(self) -> Cutoffs:
        return Cutoffs(
            max_size=self.max_size,
            samples=self.samples,
            probe_bound=self.probe_bound,
            budget=self.budget,
            seed=self.seed,
            hom_cap=self.hom_cap,
        )


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_cutoffs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-size", type=int, default=3, help="Largest object size.")
    parser.add_argument(
        "--samples", type=int, default=200, help="Random instances after the sweep."
    )
    parser.add_argument("--seed", type=int, default=1, help="Seed of the sampler.")
    parser.add_argument(
        "--probe-bound", type=int, default=3, help="Largest probe domain."
    )
    parser.add_argument("--budget", type=int, default=2, help="Closure rounds.")
    parser.add_argument(
        "--hom-cap", type=int, default=4096, help="Largest hom-set enumerated."
    )


def parse_args(argv: list[str] | None = None) -> RunConfig:
    if argv is None:
        argv = sys.argv[1:]

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--verbose", "-v", action="store_true", help="Log at DEBUG level."
    )
    common.add_argument(
        "--format", choices=["text", "json"], default="text", help="Report format."
    )
    _add_cutoffs(common)

    parser = _Parser(prog="lexkit")
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    check = commands.add_parser("check", parents=[common], help="Check a property.")
    check.add_argument("--property", "-p", choices=PROPERTIES)
    check.add_argument(
        "--carrier",
        "-c",
        default="finset",
        help="finset, finposet, finposet-strict or presheaf:<shape-or-file>.",
    )
    check.add_argument("--shape", help="Index shape of the filtered check.")
    check.add_argument("--replay", help="Re-run a stored counterexample.")

    post = commands.add_parser(
        "postulate", parents=[common], help="Check a cocone presentation."
    )
    post.add_argument("document", help="Document with diagram and cocone blocks.")
    post.add_argument("--cocone", help="Cocone block to use.")
    post.add_argument("--diagram", help="Diagram block to use.")
    post.add_argument(
        "--class", dest="cls", help="Use the canonical presentation of a class."
    )
    post.add_argument(
        "--cross-check", action="store_true", help="Also check via finality."
    )

    complete = commands.add_parser(
        "complete", parents=[common], help="Close the representables."
    )
    complete.add_argument("--base", required=True, help="Shape name or document.")
    complete.add_argument(
        "--classes", required=True, help="Comma-separated weight classes."
    )

    famf = commands.add_parser(
        "famf", parents=[common], help="Summarize the finite coproduct completion."
    )
    famf.add_argument("--base", required=True, help="Shape name or document.")
    famf.add_argument("--max-length", type=int, default=2, help="Largest family.")

    evaluate = commands.add_parser(
        "eval", parents=[common], help="Compute a limit or colimit."
    )
    evaluate.add_argument("kind", choices=["colimit", "limit"])
    evaluate.add_argument("--document", required=True, help="Document file.")
    evaluate.add_argument("--diagram", help="Diagram block to use.")
    evaluate.add_argument("--class", dest="cls", help="Weight class of the colimit.")

    args = parser.parse_args(argv)
    return RunConfig(**vars(args))


def _base(name: str) -> FinCategory:
    """A standard shape, or the only category of a document file."""
    if Path(name).is_file():
        return load_document(name).only("categories")
    return standard_shape(name)


def _carrier(selector: str) -> Carrier:
    if selector.startswith(PRESHEAF_PREFIX):
        return carrier_for(selector, _base(selector[len(PRESHEAF_PREFIX) :]))
    return carrier_for(selector)


def _emit(config: RunConfig, document: dict, lines: list[str]) -> None:
    if config.format == "json":
        print(dumps(document))
    else:
        print("\n".join(lines))


def cmd_check(config: RunConfig) -> int:
    carrier = _carrier(config.carrier)
    if config.replay is not None:
        return _replay(config, carrier)
    if config.property is None:
        raise LexkitError("check needs --property or --replay")
    shape = standard_shape(config.shape) if config.shape else None
    verdict = exactness.check(config.property, carrier, config.cutoffs, shape)
    lines = [f"{verdict.property} on {verdict.carrier}: {verdict.status.value}"]
    if verdict.counterexample is not None:
        lines.append(f"  reason: {verdict.counterexample['violation']['reason']}")
        lines.append(dumps(verdict.counterexample))
    else:
        lines.append(f"  instances checked: {verdict.instances}")
    _emit(config, verdict.to_json(), lines)
    return EXIT_CODES[verdict.status]


def _replay(config: RunConfig, carrier: Carrier) -> int:
    try:
        stored = json.loads(Path(config.replay).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ReplayError(f"cannot read {config.replay}: {e}")
    counterexample = stored.get("counterexample", stored)
    reproduced = exactness.replay(carrier, counterexample)
    document = {
        "schema_version": SCHEMA_VERSION,
        "replay": config.replay,
        "reproduced": reproduced is not None,
    }
    if reproduced is not None:
        document["counterexample"] = reproduced
        lines = [f"violation reproduces: {reproduced['violation']['reason']}"]
    else:
        lines = ["violation no longer reproduces"]
    _emit(config, document, lines)
    return 1 if reproduced is not None else 0


def _postulate_inputs(config: RunConfig, document: Document):
    block = document.only("diagrams", config.diagram)
    if config.cls is not None:
        presentation, diagram = postulate.presentation_of(
            weight_class(config.cls), block.diagram, block.carrier
        )
        return presentation, diagram, block
    presentation = document.only("cocones", config.cocone)
    if presentation.base != block.diagram.shape:
        raise LexkitError("the diagram does not instantiate the cocone's category")
    return presentation, block.diagram, block


def cmd_postulate(config: RunConfig) -> int:
    document = load_document(config.document)
    presentation, diagram, block = _postulate_inputs(config, document)
    report = postulate.is_postulated(
        presentation, diagram, block.carrier, config.cutoffs, config.cross_check
    )
    output = report.to_json()
    output["schema_version"] = SCHEMA_VERSION
    lines = [
        f"{report.presentation or 'presentation'} on {report.carrier}: "
        f"{report.status.value}",
        f"  P1: {report.p1.status.value}",
        f"  P2: {report.p2.status.value}",
    ]
    for key in ("reason", "probe"):
        for part in (report.p1, report.p2):
            if key in part.detail:
                value = json.dumps(part.detail[key], sort_keys=True)
                lines.append(f"    {key}: {value}")
    for pair in report.p2.detail.get("pairs", []):
        lines.append(
            f"    sieve {pair['pair'][0]},{pair['pair'][1]}: "
            f"{pair['legs']} legs, stable after length {pair['stabilized_at']}"
        )
    if config.cls == "adh":
        items = postulate.adhesive_items(
            block.carrier, block.diagram.map("m"), block.diagram.map("f")
        )
        output["items"] = items
        for name, item in items.items():
            lines.append(f"  {name}: {item}")
    _emit(config, output, lines)
    return EXIT_CODES[report.status]


def cmd_complete(config: RunConfig) -> int:
    base = _base(config.base)
    classes = [weight_class(name) for name in config.classes.split(",") if name]
    closure = phi_closure(base, classes, config.budget, config.cutoffs)
    lines = [
        f"closure of {base.describe()} under {', '.join(closure.classes)}: "
        f"{closure.status} after {closure.rounds} rounds, "
        f"{len(closure.elements)} objects"
    ]
    if closure.oversized or closure.truncated:
        lines.append(
            f"  cut off: {closure.oversized} oversized candidates, "
            f"{closure.truncated} truncated hom-sets"
        )
    for element in closure.elements:
        sizes = ",".join(str(len(element.presheaf.at(o))) for o in base.objects)
        lines.append(f"  [{element.round}] ({sizes}) {render_term(element.term)}")
    _emit(config, closure.to_json(), lines)
    return 0


def cmd_famf(config: RunConfig) -> int:
    fam = famf_build(_base(config.base))
    summary = fam.summary(config.max_length)
    preservation = fam.check_preservation(config.max_length)
    document = {
        "schema_version": SCHEMA_VERSION,
        **summary,
        "preservation": preservation,
    }
    lines = [
        f"Fam({summary['base']}) up to length {summary['max_length']}: "
        f"{summary['objects']} objects, {summary['morphisms']} morphisms",
        "  checked: "
        + ", ".join(
            f"{preservation[k]} {k}"
            for k in ("coproducts", "products", "terminal", "equalizers")
        ),
        f"  failures: {len(preservation['failures'])}",
    ]
    _emit(config, document, lines)
    return 1 if preservation["failures"] else 0


def cmd_eval(config: RunConfig) -> int:
    block = load_document(config.document).only("diagrams", config.diagram)
    carrier, diagram = block.carrier, block.diagram
    if config.kind == "limit":
        apex = carrier.limit(diagram).apex
    elif config.cls is not None:
        apex = weighted_colimit(weight_class(config.cls), diagram, carrier).apex
    else:
        apex = carrier.colimit(diagram).apex
    encoded = carrier.encode_object(apex)
    document = {
        "schema_version": SCHEMA_VERSION,
        "kind": config.kind,
        "carrier": carrier.name,
        "size": carrier.size(apex),
        "object": encoded,
    }
    lines = [
        f"{config.kind} in {carrier.name}: size {carrier.size(apex)}",
        dumps(encoded),
    ]
    _emit(config, document, lines)
    return 0


COMMANDS = {
    "check": cmd_check,
    "postulate": cmd_postulate,
    "complete": cmd_complete,
    "famf": cmd_famf,
    "eval": cmd_eval,
}


def main(argv: list[str] | None = None):
    config = parse_args(argv)
    set_verbosity(config.verbose)
    try:
        code = COMMANDS[config.command](config)
    except (LexkitError, ValueError, OSError) as e:
        print(e, file=sys.stderr)
        sys.exit(EXIT_USAGE)
    sys.exit(code)
