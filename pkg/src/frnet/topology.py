"""Staged pipelines of stored-value instances.

A network is an ordered list of stages over one shared domain.  A stage is
either a single instance (sequential) or a block of instances that all see
the stage input and whose outputs are arbitrated down to one value.  NULL
propagates as absence: a stage whose family gives NULL no meaning of its
own passes NULL through untouched instead of applying its table to it.

Everything is immutable and execution is pure, so a network's behavior is
fully captured by its composed output table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import ClassReport, classify_column, find_reducer
from .core import FiniteDomain, FunctionRep, apply
from .families import circular_distance


@dataclass(frozen=True)
class Node:
    """A named instance inside a network."""

    id: str
    fr: FunctionRep


@dataclass(frozen=True)
class FirstNonNull:
    """Keep the first declared node whose output is not NULL."""


@dataclass(frozen=True)
class BestScore:
    """Keep the output of the node whose stored value is closest to the input.

    Closeness is circular distance on the non-NULL value ring; ties go to
    the earlier declared node.  Requires a domain with a NULL element.
    """


@dataclass(frozen=True)
class Priority:
    """Keep the first node, in the given id order, with a non-NULL output."""

    order: tuple[str, ...]


Policy = FirstNonNull | BestScore | Priority


@dataclass(frozen=True)
class Sequential:
    node: Node


@dataclass(frozen=True)
class Parallel:
    nodes: tuple[Node, ...]
    policy: Policy


Stage = Sequential | Parallel


def _stage_nodes(stage: Stage) -> tuple[Node, ...]:
    return (stage.node,) if isinstance(stage, Sequential) else stage.nodes


@dataclass(frozen=True)
class Network:
    """An ordered pipeline of stages over one shared domain."""

    domain: FiniteDomain
    stages: tuple[Stage, ...]

    def __post_init__(self) -> None:
        if not self.stages:
            raise ValueError("network must have at least one stage")
        seen_ids: set[str] = set()
        for stage in self.stages:
            nodes = _stage_nodes(stage)
            if not nodes:
                raise ValueError("parallel stage must have at least one node")
            for node in nodes:
                if node.id in seen_ids:
                    raise ValueError(f"duplicate node id {node.id!r} in network")
                seen_ids.add(node.id)
                if node.fr.domain != self.domain:
                    raise ValueError(
                        f"node {node.id!r} is over domain {node.fr.domain.name!r}, "
                        f"network domain is {self.domain.name!r}"
                    )
            if isinstance(stage, Parallel):
                if isinstance(stage.policy, BestScore) and self.domain.null_index is None:
                    raise ValueError(
                        "best-score arbitration needs a domain with a NULL element"
                    )
                if isinstance(stage.policy, Priority):
                    ids = sorted(node.id for node in stage.nodes)
                    if sorted(stage.policy.order) != ids:
                        raise ValueError(
                            f"priority order {list(stage.policy.order)} must list every "
                            f"stage node id exactly once ({ids})"
                        )


def _step(fr: FunctionRep, value: int, domain: FiniteDomain) -> int:
    # NULL passes through families that give it no meaning of their own
    if domain.is_null(value) and not fr.family.null_aware:
        return value
    return apply(fr, value)


def _arbitrate(stage: Parallel, value: int, domain: FiniteDomain) -> int:
    null = domain.null_index
    policy = stage.policy

    if isinstance(policy, BestScore):
        if value == null:
            return null
        ring = domain.size - 1  # non-NULL values only
        best: Node | None = None
        best_dist = None
        for node in stage.nodes:
            if node.fr.param == null:
                continue  # a stored NULL has no position on the ring
            d = circular_distance(value, node.fr.param, ring)
            if best_dist is None or d < best_dist:
                best, best_dist = node, d
        if best is None:
            return null
        return _step(best.fr, value, domain)

    if isinstance(policy, Priority):
        rank = {node_id: k for k, node_id in enumerate(policy.order)}
        ordered = sorted(stage.nodes, key=lambda node: rank[node.id])
    else:
        ordered = list(stage.nodes)

    for node in ordered:
        out = _step(node.fr, value, domain)
        if null is None or out != null:
            return out
    return null


def run(net: Network, value: int) -> int:
    """Thread one input through every stage in order."""
    if not 0 <= value < net.domain.size:
        raise ValueError(f"input {value} outside domain {net.domain.name!r}")
    for stage in net.stages:
        if isinstance(stage, Sequential):
            value = _step(stage.node.fr, value, net.domain)
        else:
            value = _arbitrate(stage, value, net.domain)
    return value


def compose_table(net: Network) -> tuple[int, ...]:
    """The network's full behavior as one output vector: entry i = run(net, i)."""
    return tuple(run(net, i) for i in net.domain.indices())


def _merge_preserves_pipeline(a: Node, b: Node, merged: FunctionRep, domain: FiniteDomain) -> bool:
    # reducers equate raw tables; the pipeline may additionally short-circuit
    # NULL, so require extensional equality under _step before merging
    return all(
        _step(merged, i, domain) == _step(b.fr, _step(a.fr, i, domain), domain)
        for i in domain.indices()
    )


def reduce_chain(net: Network) -> Network:
    """Collapse adjacent same-family sequential stages whenever a single
    replacement parameter computes the identical pipeline map.

    Runs to a fixpoint; the composed table of the result is identical to the
    input's.  Parallel stages are never merged into.
    """
    stages = list(net.stages)
    changed = True
    while changed:
        changed = False
        for k in range(len(stages) - 1):
            first, second = stages[k], stages[k + 1]
            if not (isinstance(first, Sequential) and isinstance(second, Sequential)):
                continue
            a, b = first.node, second.node
            if a.fr.family != b.fr.family:
                continue
            reducer = find_reducer(a.fr.family, a.fr.param, b.fr.param)
            if reducer is None:
                continue
            merged_fr = FunctionRep(a.fr.family, reducer)
            if not _merge_preserves_pipeline(a, b, merged_fr, net.domain):
                continue
            stages[k : k + 2] = [Sequential(Node(f"{a.id}+{b.id}", merged_fr))]
            changed = True
            break
    return Network(net.domain, tuple(stages))


def classify_network(net: Network) -> ClassReport:
    """Classify the composed behavior of the whole pipeline."""
    return classify_column(compose_table(net), net.domain.size)
