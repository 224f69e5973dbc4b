"""A small line-oriented language for domains, families, instances, and nets.

One statement per line, ``#`` starts a comment, integers only::

    domain Z8 size 8             # 8 values; 'null' appends a NULL element
    domain M8 size 8 null        # 8 values plus NULL at index 8
    family add over Z8 = affine_mod(a=1)
    family swap over Z2 = table [0 1; 1 0]
    fr m = add(3)
    net chain = m -> m
    net recall = [s2 | s6] @first -> m
    # parallel policies: @first, @best, @priority(s6, s2)

Parsing is two passes: per-line syntax first, then reference resolution over
the whole document, so every error is reported with its line and column and
statements may refer to names declared later in the file.  Serialization is
canonical (namespaces in a fixed order, names alphabetical, single spaces),
so parse and serialize round-trip models exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import FiniteDomain, FunctionRep, ParamFamily
from .families import PARAM_ORDER, FamilySpec, make_family, validate_table
from .topology import (
    BestScore,
    FirstNonNull,
    Network,
    Node,
    Parallel,
    Policy,
    Priority,
    Sequential,
    Stage,
)

_TOKEN_RE = re.compile(r"->|[A-Za-z_][A-Za-z0-9_]*|\d+|[()\[\];|,@=]|\S")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

FILE_EXTENSION = ".frd"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    line: int
    column: int
    message: str

    def render(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass
class Model:
    """Everything one document declares, with all references resolved."""

    domains: dict[str, FiniteDomain] = field(default_factory=dict)
    families: dict[str, ParamFamily] = field(default_factory=dict)
    frs: dict[str, FunctionRep] = field(default_factory=dict)
    nets: dict[str, Network] = field(default_factory=dict)


# -- tokenizing ----------------------------------------------------------------

class _SyntaxError(Exception):
    def __init__(self, column: int, message: str):
        self.column = column
        self.message = message
        super().__init__(message)


class _Cursor:
    def __init__(self, tokens: list[tuple[str, int]]):
        self.tokens = tokens
        self.k = 0

    def at_end(self) -> bool:
        return self.k >= len(self.tokens)

    def peek(self) -> str | None:
        return None if self.at_end() else self.tokens[self.k][0]

    def column(self) -> int:
        if self.at_end():
            if self.tokens:
                text, col = self.tokens[-1]
                return col + len(text)
            return 1
        return self.tokens[self.k][1]

    def take(self) -> tuple[str, int]:
        if self.at_end():
            raise _SyntaxError(self.column(), "unexpected end of statement")
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, text: str) -> int:
        col = self.column()
        if self.peek() != text:
            found = self.peek() or "end of statement"
            raise _SyntaxError(col, f"expected {text!r}, found {found!r}")
        self.take()
        return col

    def ident(self, what: str) -> tuple[str, int]:
        col = self.column()
        if self.at_end() or not _IDENT_RE.match(self.tokens[self.k][0]):
            found = self.peek() or "end of statement"
            raise _SyntaxError(col, f"expected {what}, found {found!r}")
        return self.take()

    def integer(self, what: str) -> tuple[int, int]:
        col = self.column()
        if self.at_end() or not self.tokens[self.k][0].isdigit():
            found = self.peek() or "end of statement"
            raise _SyntaxError(col, f"expected {what}, found {found!r}")
        text, col = self.take()
        return int(text), col

    def finish(self) -> None:
        if not self.at_end():
            raise _SyntaxError(self.column(), f"trailing tokens after statement: {self.peek()!r}")


def _tokenize(line: str) -> list[tuple[str, int]]:
    code = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(code)]


# -- raw statements (pass 1) ---------------------------------------------------

@dataclass
class _RawDomain:
    line: int
    name: tuple[str, int]
    count: tuple[int, int]
    null: bool


@dataclass
class _RawFamily:
    line: int
    name: tuple[str, int]
    domain: tuple[str, int]
    variant: tuple[str, int]
    params: list[tuple[tuple[str, int], tuple[int, int]]]
    matrix: list[list[tuple[int, int]]] | None  # set for the table variant


@dataclass
class _RawFr:
    line: int
    name: tuple[str, int]
    family: tuple[str, int]
    param: tuple[int, int]


@dataclass
class _RawStage:
    parallel: bool
    frs: list[tuple[str, int]]
    policy: tuple[str, int] | None  # first | best | priority
    order: list[tuple[str, int]]


@dataclass
class _RawNet:
    line: int
    name: tuple[str, int]
    stages: list[_RawStage]


def _parse_params(cur: _Cursor) -> list[tuple[tuple[str, int], tuple[int, int]]]:
    cur.expect("(")
    params: list[tuple[tuple[str, int], tuple[int, int]]] = []
    if cur.peek() != ")":
        while True:
            key = cur.ident("parameter name")
            cur.expect("=")
            value = cur.integer("parameter value")
            params.append((key, value))
            if cur.peek() != ",":
                break
            cur.take()
    cur.expect(")")
    return params


def _parse_matrix(cur: _Cursor) -> list[list[tuple[int, int]]]:
    cur.expect("[")
    rows: list[list[tuple[int, int]]] = [[]]
    while cur.peek() != "]":
        if cur.peek() == ";":
            cur.take()
            rows.append([])
        else:
            rows[-1].append(cur.integer("table entry"))
    cur.expect("]")
    if rows == [[]]:
        raise _SyntaxError(cur.column(), "table must have at least one entry")
    return rows


def _parse_stage(cur: _Cursor) -> _RawStage:
    if cur.peek() != "[":
        return _RawStage(False, [cur.ident("fr name")], None, [])
    cur.take()
    frs = [cur.ident("fr name")]
    while cur.peek() == "|":
        cur.take()
        frs.append(cur.ident("fr name"))
    cur.expect("]")
    cur.expect("@")
    policy = cur.ident("arbitration policy (first, best, or priority)")
    order: list[tuple[str, int]] = []
    if policy[0] == "priority":
        cur.expect("(")
        order.append(cur.ident("fr name"))
        while cur.peek() == ",":
            cur.take()
            order.append(cur.ident("fr name"))
        cur.expect(")")
    elif policy[0] not in ("first", "best"):
        raise _SyntaxError(policy[1], f"unknown arbitration policy {policy[0]!r}")
    return _RawStage(True, frs, policy, order)


def _parse_statement(cur: _Cursor, line_no: int):
    keyword, col = cur.take()
    if keyword == "domain":
        name = cur.ident("domain name")
        cur.expect("size")
        count = cur.integer("domain size")
        null = False
        if cur.peek() == "null":
            cur.take()
            null = True
        cur.finish()
        return _RawDomain(line_no, name, count, null)
    if keyword == "family":
        name = cur.ident("family name")
        cur.expect("over")
        domain = cur.ident("domain name")
        cur.expect("=")
        variant = cur.ident("family variant")
        if variant[0] == "table":
            matrix = _parse_matrix(cur)
            cur.finish()
            return _RawFamily(line_no, name, domain, variant, [], matrix)
        params = _parse_params(cur)
        cur.finish()
        return _RawFamily(line_no, name, domain, variant, params, None)
    if keyword == "fr":
        name = cur.ident("fr name")
        cur.expect("=")
        family = cur.ident("family name")
        cur.expect("(")
        param = cur.integer("parameter value")
        cur.expect(")")
        cur.finish()
        return _RawFr(line_no, name, family, param)
    if keyword == "net":
        name = cur.ident("net name")
        cur.expect("=")
        stages = [_parse_stage(cur)]
        while cur.peek() == "->":
            cur.take()
            stages.append(_parse_stage(cur))
        cur.finish()
        return _RawNet(line_no, name, stages)
    raise _SyntaxError(col, f"unknown keyword {keyword!r}")


# -- resolution (pass 2) -------------------------------------------------------

def build_network(
    domain: FiniteDomain,
    raw_stages: list[tuple[bool, list[str], Policy | None]],
    frs: dict[str, FunctionRep],
) -> Network:
    """Assemble a network from (parallel?, fr names, policy) stage specs.

    Node ids are the fr names, deduplicated with ``#2``, ``#3`` suffixes when
    the same fr is used more than once, so identical specs always produce
    structurally identical networks.  Priority policies are given in fr names
    and rewritten to the assigned node ids.
    """
    used: dict[str, int] = {}
    stages: list[Stage] = []
    for parallel, names, policy in raw_stages:
        assigned: dict[str, str] = {}
        nodes = []
        for fr_name in names:
            used[fr_name] = used.get(fr_name, 0) + 1
            node_id = fr_name if used[fr_name] == 1 else f"{fr_name}#{used[fr_name]}"
            assigned[fr_name] = node_id
            nodes.append(Node(node_id, frs[fr_name]))
        if not parallel:
            stages.append(Sequential(nodes[0]))
            continue
        if isinstance(policy, Priority):
            policy = Priority(tuple(assigned[name] for name in policy.order))
        stages.append(Parallel(tuple(nodes), policy))
    return Network(domain, tuple(stages))


class _Resolver:
    def __init__(self) -> None:
        self.model = Model()
        self.diagnostics: list[Diagnostic] = []

    def error(self, line: int, column: int, message: str) -> None:
        self.diagnostics.append(Diagnostic("error", line, column, message))

    def _declare(self, kind: str, names: dict, tok: tuple[str, int], line: int) -> bool:
        name, col = tok
        if name in names:
            self.error(line, col, f"duplicate {kind} name {name!r}")
            return False
        return True

    def add_domain(self, raw: _RawDomain) -> None:
        if not self._declare("domain", self.model.domains, raw.name, raw.line):
            return
        count, col = raw.count
        if count < 1:
            self.error(raw.line, col, f"domain size must be >= 1, got {count}")
            return
        size = count + 1 if raw.null else count
        null_index = count if raw.null else None
        self.model.domains[raw.name[0]] = FiniteDomain(raw.name[0], size, null_index)

    def add_family(self, raw: _RawFamily) -> None:
        if not self._declare("family", self.model.families, raw.name, raw.line):
            return
        domain = self.model.domains.get(raw.domain[0])
        if domain is None:
            self.error(raw.line, raw.domain[1], f"unresolved domain {raw.domain[0]!r}")
            return
        if raw.matrix is not None:
            self._add_table_family(raw, domain)
            return
        params = {}
        for (key, key_col), (value, _) in raw.params:
            if key in params:
                self.error(raw.line, key_col, f"duplicate parameter {key!r}")
                return
            params[key] = value
        try:
            family = make_family(FamilySpec(raw.name[0], raw.variant[0], domain, params))
        except ValueError as exc:
            self.error(raw.line, raw.variant[1], str(exc))
            return
        self.model.families[raw.name[0]] = family

    def _add_table_family(self, raw: _RawFamily, domain: FiniteDomain) -> None:
        matrix = [[value for value, _ in row] for row in raw.matrix]
        faults = validate_table(matrix, domain)
        if faults:
            for fault in faults:
                col = raw.variant[1]
                if fault.row is not None and fault.row < len(raw.matrix):
                    row_toks = raw.matrix[fault.row]
                    if fault.col is not None and fault.col < len(row_toks):
                        col = row_toks[fault.col][1]
                    elif row_toks:
                        col = row_toks[0][1]
                self.error(raw.line, col, fault.message)
            return
        family = make_family(FamilySpec(raw.name[0], "table", domain, {}), matrix=matrix)
        self.model.families[raw.name[0]] = family

    def add_fr(self, raw: _RawFr) -> None:
        if not self._declare("fr", self.model.frs, raw.name, raw.line):
            return
        family = self.model.families.get(raw.family[0])
        if family is None:
            self.error(raw.line, raw.family[1], f"unresolved family {raw.family[0]!r}")
            return
        value, col = raw.param
        if value >= family.domain.size:
            self.error(
                raw.line, col,
                f"parameter {value} out of range for family {raw.family[0]!r} "
                f"(domain size {family.domain.size})",
            )
            return
        self.model.frs[raw.name[0]] = FunctionRep(family, value)

    def add_net(self, raw: _RawNet) -> None:
        if not self._declare("net", self.model.nets, raw.name, raw.line):
            return
        domain: FiniteDomain | None = None
        specs: list[tuple[bool, list[str], Policy | None]] = []
        ok = True
        for stage in raw.stages:
            names: list[str] = []
            seen_in_stage: set[str] = set()
            for fr_name, col in stage.frs:
                fr = self.model.frs.get(fr_name)
                if fr is None:
                    self.error(raw.line, col, f"unresolved fr {fr_name!r}")
                    ok = False
                    continue
                if stage.parallel and fr_name in seen_in_stage:
                    self.error(raw.line, col, f"fr {fr_name!r} listed twice in one parallel stage")
                    ok = False
                    continue
                seen_in_stage.add(fr_name)
                if domain is None:
                    domain = fr.domain
                elif fr.domain != domain:
                    self.error(
                        raw.line, col,
                        f"fr {fr_name!r} is over domain {fr.domain.name!r}, "
                        f"expected {domain.name!r}",
                    )
                    ok = False
                    continue
                names.append(fr_name)
            policy = self._resolve_policy(raw, stage, names, domain)
            if policy is Ellipsis:
                ok = False
                policy = None
            specs.append((stage.parallel, names, policy))
        if not ok or domain is None:
            if domain is None:
                self.error(raw.line, raw.name[1], f"net {raw.name[0]!r} has no resolvable stages")
            return
        try:
            net = build_network(domain, specs, self.model.frs)
        except ValueError as exc:
            self.error(raw.line, raw.name[1], str(exc))
            return
        self.model.nets[raw.name[0]] = net

    def _resolve_policy(self, raw: _RawNet, stage: _RawStage, names: list[str],
                        domain: FiniteDomain | None):
        """Returns a Policy, None for sequential stages, or Ellipsis on error."""
        if not stage.parallel:
            return None
        kind, col = stage.policy
        if kind == "first":
            return FirstNonNull()
        if kind == "best":
            if domain is not None and domain.null_index is None:
                self.error(raw.line, col, "best-score arbitration needs a domain with a NULL element")
                return Ellipsis
            return BestScore()
        listed = [name for name, _ in stage.order]
        if sorted(listed) != sorted(names):
            self.error(
                raw.line, col,
                f"priority order {listed} must list every fr of the stage exactly once ({sorted(names)})",
            )
            return Ellipsis
        return Priority(tuple(listed))


def parse_text(source: str) -> tuple[Model | None, list[Diagnostic]]:
    """Parse a document; returns (model, diagnostics).

    The model is None whenever any error diagnostic was produced.  Errors on
    one line never stop later lines from being checked.
    """
    raw_domains: list[_RawDomain] = []
    raw_families: list[_RawFamily] = []
    raw_frs: list[_RawFr] = []
    raw_nets: list[_RawNet] = []
    diagnostics: list[Diagnostic] = []

    for line_no, line in enumerate(source.splitlines(), start=1):
        tokens = _tokenize(line)
        if not tokens:
            continue
        cur = _Cursor(tokens)
        try:
            statement = _parse_statement(cur, line_no)
        except _SyntaxError as exc:
            diagnostics.append(Diagnostic("error", line_no, exc.column, exc.message))
            continue
        if isinstance(statement, _RawDomain):
            raw_domains.append(statement)
        elif isinstance(statement, _RawFamily):
            raw_families.append(statement)
        elif isinstance(statement, _RawFr):
            raw_frs.append(statement)
        else:
            raw_nets.append(statement)

    resolver = _Resolver()
    resolver.diagnostics = diagnostics
    for raw in raw_domains:
        resolver.add_domain(raw)
    for raw_family in raw_families:
        resolver.add_family(raw_family)
    for raw_fr in raw_frs:
        resolver.add_fr(raw_fr)
    for raw_net in raw_nets:
        resolver.add_net(raw_net)

    if any(diag.severity == "error" for diag in diagnostics):
        return None, diagnostics
    return resolver.model, diagnostics


# -- serialization -------------------------------------------------------------

def _base_id(node_id: str) -> str:
    return node_id.split("#", 1)[0]


def _serialize_family(name: str, family: ParamFamily) -> str:
    head = f"family {name} over {family.domain.name} = "
    if family.rule is None:
        rows = "; ".join(" ".join(str(x) for x in row) for row in family.table)
        return head + f"table [{rows}]"
    params = dict(family.rule.params)
    rendered = ", ".join(f"{key}={params[key]}" for key in PARAM_ORDER[family.rule.variant])
    return head + f"{family.rule.variant}({rendered})"


def _serialize_stage(stage: Stage, frs: dict[str, FunctionRep]) -> str:
    def fr_name(node: Node) -> str:
        name = _base_id(node.id)
        if frs.get(name) != node.fr:
            raise ValueError(f"network node {node.id!r} does not match any declared fr")
        return name

    if isinstance(stage, Sequential):
        return fr_name(stage.node)
    names = " | ".join(fr_name(node) for node in stage.nodes)
    policy = stage.policy
    if isinstance(policy, FirstNonNull):
        tag = "@first"
    elif isinstance(policy, BestScore):
        tag = "@best"
    else:
        tag = "@priority(" + ", ".join(_base_id(node_id) for node_id in policy.order) + ")"
    return f"[{names}] {tag}"


def serialize(model: Model) -> str:
    """Canonical text for a model: fixed statement order, alphabetical names.

    Parsing the result reproduces the model exactly; serializing a parse of
    canonical text is byte-identical.
    """
    lines: list[str] = []
    for name in sorted(model.domains):
        domain = model.domains[name]
        if domain.name != name:
            raise ValueError(f"domain declared as {name!r} is named {domain.name!r}")
        if domain.null_index is None:
            lines.append(f"domain {name} size {domain.size}")
        else:
            if domain.null_index != domain.size - 1:
                raise ValueError(f"domain {name!r}: only a final NULL element can be serialized")
            lines.append(f"domain {name} size {domain.size - 1} null")
    for name in sorted(model.families):
        family = model.families[name]
        if family.name != name:
            raise ValueError(f"family declared as {name!r} is named {family.name!r}")
        if model.domains.get(family.domain.name) != family.domain:
            raise ValueError(f"family {name!r} uses undeclared domain {family.domain.name!r}")
        lines.append(_serialize_family(name, family))
    for name in sorted(model.frs):
        fr = model.frs[name]
        if model.families.get(fr.family.name) != fr.family:
            raise ValueError(f"fr {name!r} uses undeclared family {fr.family.name!r}")
        lines.append(f"fr {name} = {fr.family.name}({fr.param})")
    for name in sorted(model.nets):
        net = model.nets[name]
        stages = " -> ".join(_serialize_stage(stage, model.frs) for stage in net.stages)
        lines.append(f"net {name} = {stages}")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
