"""Command-line front end.

Subcommands: analyze one declared instance, census a family's composition
behavior, run a network on an input, reduce a chain, or verify the whole
invariant suite against every family in a file.  Reports go to stdout
(``--json`` for machine-readable form), diagnostics to stderr.

Exit codes: 0 success / all checks hold, 1 verification failure,
2 parse error, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    ASSOCIATIVE,
    NotInvertible,
    classify_column,
    emergence_census,
    find_reducer,
    invert,
    is_linear,
    pushforward_entropy,
)
from .core import FunctionRep, ParamFamily, contains_information, is_knowledge, param_column, pushforward, uniform
from .dsl import Model, build_network, parse_text, serialize
from .topology import Network, Priority, Sequential, compose_table, reduce_chain, run

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_USAGE = 3

ENTROPY_FLOOR = 1e-12
CENSUS_DEFAULT_CAP = 64


class _UsageError(Exception):
    pass


class _ParseFailure(Exception):
    def __init__(self, lines: list[str]):
        self.lines = lines
        super().__init__("\n".join(lines))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # route argparse failures to exit code 3
        raise _UsageError(message)


# -- report rendering ----------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, tuple):
        return "(" + ", ".join(str(x) for x in value) + ")"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, body: dict, text_lines: list[str] | None = None) -> None:
    """Print a report: key-value text by default, one JSON document with --json."""
    if args.json:
        document = {"command": args.command, "subject": args.subject, "body": body}
        print(json.dumps(document, indent=2))
        return
    if text_lines is not None:
        for line in text_lines:
            print(line)
        return
    for key, value in body.items():
        print(f"{key}: {_fmt(value)}")


# -- model access ----------------------------------------------------------------

def _load_model(path: str) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _ParseFailure([f"{path}: {exc}"])
    model, diagnostics = parse_text(text)
    if model is None:
        raise _ParseFailure([f"{path}:{diag.render()}" for diag in diagnostics])
    return model


def _lookup(kind: str, table: dict, name: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none declared"
        raise _UsageError(f"no {kind} named {name!r} in file ({kind}s: {known})")
    return table[name]


# -- invariant suite -------------------------------------------------------------

def _invertible(fr: FunctionRep) -> bool:
    try:
        invert(fr)
        return True
    except NotInvertible:
        return False


def family_checks(family: ParamFamily) -> list[tuple[str, bool]]:
    """Evaluate every structural invariant for one family, exhaustively.

    Member-level equivalences are checked for every parameter value, and
    composition-level ones for every parameter pair.
    """
    n = family.domain.size
    columns = [param_column(family, v) for v in range(n)]
    reports = [classify_column(col, n) for col in columns]
    members = [FunctionRep(family, v) for v in range(n)]
    census = emergence_census(family)
    column_set = set(columns)

    knowledge_ok = all(
        is_knowledge(fr) == (not rep.constant) for fr, rep in zip(members, reports)
    )
    information_ok = all(
        (pushforward_entropy(fr) > ENTROPY_FLOOR) == (rep.image_size > 1)
        for fr, rep in zip(members, reports)
    )
    reversible_ok = all(
        (rep.kind == ASSOCIATIVE)
        == rep.bijective
        == _invertible(fr)
        == (rep.information_loss == 0)
        for fr, rep in zip(members, reports)
    )
    linear_ok = is_linear(family) != "yes" or census.pairs_emergent == 0

    reducers_ok = True
    monotone_ok = True
    bijective_ok = True
    for v1 in range(n):
        col1 = columns[v1]
        for v2 in range(n):
            composed = tuple(columns[v2][x] for x in col1)
            reducer = find_reducer(family, v1, v2)
            if reducer is not None and composed != columns[reducer]:
                reducers_ok = False
            composed_image = len(set(composed))
            if composed_image > min(reports[v1].image_size, reports[v2].image_size):
                monotone_ok = False
            if (composed_image == n) != (reports[v1].bijective and reports[v2].bijective):
                bijective_ok = False

    collapse_ok = True
    if census.self_similar and n <= 12:
        for v1 in range(n):
            col1 = columns[v1]
            for v2 in range(n):
                col12 = tuple(columns[v2][x] for x in col1)
                for v3 in range(n):
                    col3 = columns[v3]
                    if tuple(col3[x] for x in col12) not in column_set:
                        collapse_ok = False

    return [
        ("knowledge_iff_nonconstant", knowledge_ok),
        ("information_iff_multivalued", information_ok),
        ("reversible_iff_bijective_iff_lossless", reversible_ok),
        ("linear_family_fully_reducible", linear_ok),
        ("reducers_reproduce_composition", reducers_ok),
        ("reducible_family_collapses_chains", collapse_ok),
        ("composition_never_gains_image", monotone_ok),
        ("composition_bijective_iff_parts", bijective_ok),
    ]


# -- subcommands -----------------------------------------------------------------

def _cmd_analyze(args) -> int:
    model = _load_model(args.file)
    fr = _lookup("fr", model.frs, args.fr)
    args.subject = args.fr
    report = classify_column(param_column(fr.family, fr.param), fr.domain.size)
    output_dist = pushforward(fr, uniform(fr.domain))
    body = {
        "fr": args.fr,
        "family": fr.family.name,
        "variant": fr.family.variant,
        "domain": fr.domain.name,
        "domain_size": fr.domain.size,
        "param": fr.param,
        "constant": report.constant,
        "injective": report.injective,
        "surjective": report.surjective,
        "bijective": report.bijective,
        "kind": report.kind,
        "image_size": report.image_size,
        "information_loss": report.information_loss,
        "is_knowledge": is_knowledge(fr),
        "contains_information": contains_information(output_dist),
        "output_entropy_bits": pushforward_entropy(fr),
    }
    _emit(args, body)
    return EXIT_OK


def _cmd_census(args) -> int:
    model = _load_model(args.file)
    family = _lookup("family", model.families, args.family)
    args.subject = args.family
    if family.domain.size > args.max_n and not args.force:
        raise _UsageError(
            f"family {args.family!r} has domain size {family.domain.size}, above the "
            f"census cap {args.max_n} (the sweep is quartic in size); pass --force to run anyway"
        )
    census = emergence_census(family)
    body = {
        "family": args.family,
        "variant": family.variant,
        "domain_size": census.domain_size,
        "pairs_total": census.pairs_total,
        "pairs_reducible": census.pairs_reducible,
        "pairs_emergent": census.pairs_emergent,
        "self_similar": census.self_similar,
        "example_emergent_pair": census.example_emergent_pair,
    }
    _emit(args, body)
    return EXIT_OK


def _parse_input(raw: str, net: Network) -> int:
    if raw.upper() == "NULL":
        if net.domain.null_index is None:
            raise _UsageError(f"domain {net.domain.name!r} has no NULL element")
        return net.domain.null_index
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"--input must be an integer or NULL, got {raw!r}")
    if not 0 <= value < net.domain.size:
        raise _UsageError(f"input {value} outside domain {net.domain.name!r} (size {net.domain.size})")
    return value


def _cmd_run(args) -> int:
    model = _load_model(args.file)
    net = _lookup("net", model.nets, args.net)
    args.subject = args.net
    value = _parse_input(args.input, net)
    out = run(net, value)
    null = net.domain.is_null(out)
    body = {"net": args.net, "input": value, "output": out, "null": null}
    _emit(args, body, text_lines=["NULL" if null else str(out)])
    return EXIT_OK


def _reduced_model(model: Model, name: str, net: Network, reduced: Network) -> Model:
    """A minimal model declaring the reduced network, inventing fr names for
    merged stages so the emission parses back."""
    taken = set(model.frs)
    fresh = 0
    out = Model()
    out.domains[net.domain.name] = net.domain
    specs = []
    for stage in reduced.stages:
        nodes = [stage.node] if isinstance(stage, Sequential) else list(stage.nodes)
        assigned: dict[str, str] = {}
        for node in nodes:
            base = node.id.split("#", 1)[0]
            if model.frs.get(base) == node.fr:
                fr_name = base
            else:
                while f"{name}_r{fresh}" in taken:
                    fresh += 1
                fr_name = f"{name}_r{fresh}"
                taken.add(fr_name)
            assigned[node.id] = fr_name
            out.frs[fr_name] = node.fr
            out.families[node.fr.family.name] = node.fr.family
        if isinstance(stage, Sequential):
            specs.append((False, [assigned[stage.node.id]], None))
        else:
            policy = stage.policy
            if isinstance(policy, Priority):
                policy = Priority(tuple(assigned[node_id] for node_id in policy.order))
            specs.append((True, [assigned[node.id] for node in stage.nodes], policy))
    out.nets[name] = build_network(net.domain, specs, out.frs)
    return out


def _cmd_reduce(args) -> int:
    model = _load_model(args.file)
    net = _lookup("net", model.nets, args.net)
    args.subject = args.net
    reduced = reduce_chain(net)
    equivalent = compose_table(reduced) == compose_table(net)
    emission = _reduced_model(model, args.net, net, reduced)
    text = serialize(emission)
    body = {
        "net": args.net,
        "stages_before": len(net.stages),
        "stages_after": len(reduced.stages),
        "equivalent": equivalent,
        "model": text,
    }
    lines = text.splitlines()
    lines.append(f"stages_before: {len(net.stages)}")
    lines.append(f"stages_after: {len(reduced.stages)}")
    lines.append(f"equivalent: {_fmt(equivalent)}")
    _emit(args, body, text_lines=lines)
    return EXIT_OK if equivalent else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    model = _load_model(args.file)
    args.subject = args.file
    checks = []
    all_hold = True
    for name in sorted(model.families):
        for check_name, passed in family_checks(model.families[name]):
            checks.append({"family": name, "name": check_name, "passed": passed})
            all_hold = all_hold and passed
    body = {"checks": checks, "all_hold": all_hold}
    lines = [
        f"check {entry['family']}.{entry['name']}: {'pass' if entry['passed'] else 'fail'}"
        for entry in checks
    ]
    lines.append(f"all_hold: {_fmt(all_hold)}")
    _emit(args, body, text_lines=lines)
    return EXIT_OK if all_hold else EXIT_CHECK_FAILED


# -- entry points ------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="frnet", description="Analyze finite parametrized function families and their networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="classify one declared fr")
    p.add_argument("file")
    p.add_argument("--fr", required=True, help="name of the fr to analyze")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("census", help="sweep all parameter pairs of a family")
    p.add_argument("file")
    p.add_argument("--family", required=True, help="name of the family to census")
    p.add_argument("--max-n", type=int, default=CENSUS_DEFAULT_CAP, dest="max_n",
                   help=f"refuse domains larger than this without --force (default {CENSUS_DEFAULT_CAP})")
    p.add_argument("--force", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("run", help="run a network on one input")
    p.add_argument("file")
    p.add_argument("--net", required=True)
    p.add_argument("--input", required=True, help="input index, or NULL")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("reduce", help="collapse reducible sequential stages of a network")
    p.add_argument("file")
    p.add_argument("--net", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("verify", help="run the invariant suite over every family in a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    return parser


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args.subject = getattr(args, "file", "")
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _ParseFailure as exc:
        for line in exc.lines:
            print(line, file=sys.stderr)
        return EXIT_PARSE_ERROR


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
