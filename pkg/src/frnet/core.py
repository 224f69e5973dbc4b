"""Finite domains, distributions, and parametrized function tables.

Everything is index-based: a domain is the set 0..size-1, a family is an
explicit size x size lookup table, and an instance of a family is the table
plus one stored parameter value.  All operations are pure and total, so any
claim about a family can be settled by exhaustive enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# |sum(probs) - 1| must stay below this for a vector to count as a distribution
PROB_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FiniteDomain:
    """An indexed value set, optionally with a designated NULL element.

    ``size`` counts every element including NULL, so a domain of eight
    values plus NULL has ``size == 9`` and ``null_index == 8``.
    """

    name: str
    size: int
    null_index: int | None = None

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError(f"domain {self.name!r}: size must be >= 1, got {self.size}")
        if self.null_index is not None and not 0 <= self.null_index < self.size:
            raise ValueError(
                f"domain {self.name!r}: null_index {self.null_index} outside [0, {self.size})"
            )

    def indices(self) -> range:
        return range(self.size)

    def is_null(self, value: int) -> bool:
        return self.null_index is not None and value == self.null_index


@dataclass(frozen=True)
class Distribution:
    """A probability vector over a finite domain."""

    domain: FiniteDomain
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.probs) != self.domain.size:
            raise ValueError(
                f"distribution over {self.domain.name!r}: expected {self.domain.size} "
                f"entries, got {len(self.probs)}"
            )
        for k, p in enumerate(self.probs):
            if p < 0.0:
                raise ValueError(f"distribution entry {k} is negative: {p}")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > PROB_TOLERANCE:
            raise ValueError(f"distribution sums to {total!r}, not 1 within {PROB_TOLERANCE}")


def uniform(domain: FiniteDomain) -> Distribution:
    """The uniform distribution over every index of ``domain``."""
    p = 1.0 / domain.size
    return Distribution(domain, (p,) * domain.size)


def point_mass(domain: FiniteDomain, index: int) -> Distribution:
    """All probability on a single index."""
    if not 0 <= index < domain.size:
        raise ValueError(f"index {index} outside domain {domain.name!r}")
    probs = [0.0] * domain.size
    probs[index] = 1.0
    return Distribution(domain, tuple(probs))


@dataclass(frozen=True)
class BuiltinRule:
    """Identifies which built-in rule produced a family, with its parameters.

    ``params`` is a sorted tuple of (name, value) pairs so rules hash and
    compare structurally.
    """

    variant: str
    params: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class ParamFamily:
    """A two-argument function on a domain, materialized as a lookup table.

    ``table[i][v]`` is the output for input ``i`` under parameter ``v``
    (rows are inputs, columns are parameter values).  ``rule`` records the
    built-in recipe the table came from; ``None`` means the table was given
    explicitly.  ``null_aware`` marks families whose rule gives NULL inputs
    a meaning of their own; pipelines route NULL through such tables instead
    of short-circuiting (see topology).
    """

    name: str
    domain: FiniteDomain
    rule: BuiltinRule | None
    table: tuple[tuple[int, ...], ...]
    null_aware: bool = False

    def __post_init__(self) -> None:
        n = self.domain.size
        if len(self.table) != n:
            raise ValueError(f"family {self.name!r}: table has {len(self.table)} rows, domain size is {n}")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise ValueError(f"family {self.name!r}: row {i} has {len(row)} entries, expected {n}")
            for v, out in enumerate(row):
                if not 0 <= out < n:
                    raise ValueError(
                        f"family {self.name!r}: entry ({i}, {v}) = {out} outside [0, {n})"
                    )

    @property
    def variant(self) -> str:
        return self.rule.variant if self.rule is not None else "table"


def param_column(family: ParamFamily, param: int) -> tuple[int, ...]:
    """The map input -> output obtained by fixing one parameter value."""
    if not 0 <= param < family.domain.size:
        raise ValueError(f"parameter {param} outside domain of family {family.name!r}")
    return tuple(row[param] for row in family.table)


@dataclass(frozen=True)
class FunctionRep:
    """A family member: the family plus one stored parameter value.

    The stored value is both the memory (what the instance holds) and the
    program (it selects which input->output map the instance computes).
    """

    family: ParamFamily
    param: int

    def __post_init__(self) -> None:
        if not 0 <= self.param < self.family.domain.size:
            raise ValueError(
                f"parameter {self.param} outside domain of family {self.family.name!r} "
                f"(size {self.family.domain.size})"
            )

    @property
    def domain(self) -> FiniteDomain:
        return self.family.domain


def apply(fr: FunctionRep, value: int) -> int:
    """Process one input with the instance's stored value."""
    if not 0 <= value < fr.domain.size:
        raise ValueError(f"input {value} outside domain {fr.domain.name!r} (size {fr.domain.size})")
    return fr.family.table[value][fr.param]


def image(fr: FunctionRep) -> set[int]:
    """All outputs the instance can produce, by full enumeration."""
    return {row[fr.param] for row in fr.family.table}


def pushforward(fr: FunctionRep, input_dist: Distribution) -> Distribution:
    """The output distribution induced by feeding ``input_dist`` through ``fr``."""
    if input_dist.domain != fr.domain:
        raise ValueError(
            f"distribution over {input_dist.domain.name!r} does not match "
            f"family domain {fr.domain.name!r}"
        )
    out = [0.0] * fr.domain.size
    for i, p in enumerate(input_dist.probs):
        out[fr.family.table[i][fr.param]] += p
    return Distribution(fr.domain, tuple(out))


def entropy(dist: Distribution) -> float:
    """Shannon entropy in bits; zero-probability entries contribute nothing."""
    return -math.fsum(p * math.log2(p) for p in dist.probs if p > 0.0)


def contains_information(dist: Distribution) -> bool:
    """True iff the entropy is strictly positive.

    Decided structurally (more than one strictly positive entry) so the
    answer never depends on floating-point rounding of the entropy itself.
    """
    return sum(1 for p in dist.probs if p > 0.0) > 1


def is_knowledge(fr: FunctionRep) -> bool:
    """True iff the instance can produce more than one output.

    Equivalent to the stored value selecting a non-constant map, and to the
    uniform-input output distribution carrying positive entropy.
    """
    return len(image(fr)) > 1
