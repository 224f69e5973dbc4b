"""Exhaustive classification of family members and their compositions.

Two layers live here.  The member layer classifies a single stored-value
instance by enumerating its input->output column: constant, injective,
surjective, bijective, reversible or not, and how many outputs it loses.
The composition layer asks, for every pair of stored values, whether
chaining them stays inside the family (a single replacement value exists)
or escapes it; the census over all pairs decides self-similarity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import FunctionRep, ParamFamily, entropy, image, param_column, pushforward, uniform

ASSOCIATIVE = "Associative"
ADDITIVE = "Additive"

# variants whose indices form the ring Z_n, where a linear fit is meaningful
_MODULAR_VARIANTS = ("affine_mod", "mul_mod", "poly_mod")


@dataclass(frozen=True)
class ClassReport:
    """Structural classification of one input->output map."""

    constant: bool
    injective: bool
    surjective: bool
    bijective: bool
    kind: str
    image_size: int
    information_loss: int


@dataclass(frozen=True)
class CensusReport:
    """Tally of reducible vs emergent parameter pairs for one family."""

    family: str
    domain_size: int
    pairs_total: int
    pairs_reducible: int
    pairs_emergent: int
    self_similar: bool
    example_emergent_pair: tuple[int, int] | None


class NotInvertible(ValueError):
    """Raised when inversion is requested for a non-bijective member.

    Carries a collision witness: two inputs mapped to the same output.
    """

    def __init__(self, family: str, param: int, i1: int, i2: int, output: int):
        self.collision = (i1, i2, output)
        super().__init__(
            f"family {family!r} with parameter {param} is not bijective: "
            f"inputs {i1} and {i2} both map to {output}"
        )


def classify_column(column: tuple[int, ...], size: int) -> ClassReport:
    """Classify an arbitrary self-map given as an output vector."""
    seen = set(column)
    image_size = len(seen)
    injective = image_size == len(column)
    surjective = image_size == size
    bijective = injective and surjective
    return ClassReport(
        constant=image_size == 1,
        injective=injective,
        surjective=surjective,
        bijective=bijective,
        kind=ASSOCIATIVE if bijective else ADDITIVE,
        image_size=image_size,
        information_loss=size - image_size,
    )


def classify(fr: FunctionRep) -> ClassReport:
    return classify_column(param_column(fr.family, fr.param), fr.domain.size)


def invert(fr: FunctionRep) -> tuple[int, ...]:
    """The inverse map of a bijective member; NotInvertible otherwise."""
    column = param_column(fr.family, fr.param)
    n = fr.domain.size
    inverse = [-1] * n
    for i, out in enumerate(column):
        if inverse[out] != -1:
            raise NotInvertible(fr.family.name, fr.param, inverse[out], i, out)
        inverse[out] = i
    # self-maps on a finite set: no collision implies every output is hit
    return tuple(inverse)


def information_loss(fr: FunctionRep) -> int:
    """How many domain values the member's image fails to reach."""
    return fr.domain.size - len(image(fr))


def compose_columns(first: tuple[int, ...], second: tuple[int, ...]) -> tuple[int, ...]:
    """The column of 'first then second'."""
    return tuple(second[x] for x in first)


@lru_cache(maxsize=256)
def _column_index(family: ParamFamily) -> tuple[tuple[tuple[int, ...], ...], dict[tuple[int, ...], int]]:
    """All parameter columns of a family plus a column -> smallest-parameter map."""
    n = family.domain.size
    columns = tuple(tuple(row[v] for row in family.table) for v in range(n))
    smallest: dict[tuple[int, ...], int] = {}
    for v, col in enumerate(columns):
        smallest.setdefault(col, v)
    return columns, smallest


def find_reducer(family: ParamFamily, v1: int, v2: int) -> int | None:
    """The smallest v' whose column equals 'v1 then v2', or None.

    A reducer is the witness that composing the two stored values never
    left the family: one replacement instance computes the same map.
    """
    n = family.domain.size
    if not 0 <= v1 < n or not 0 <= v2 < n:
        raise ValueError(f"parameters ({v1}, {v2}) outside domain of family {family.name!r}")
    columns, smallest = _column_index(family)
    composed = compose_columns(columns[v1], columns[v2])
    return smallest.get(composed)


def produces_emergence(family: ParamFamily, v1: int, v2: int) -> bool:
    """True iff 'v1 then v2' computes a map no single parameter computes."""
    return find_reducer(family, v1, v2) is None


def emergence_census(family: ParamFamily) -> CensusReport:
    """Sweep all parameter pairs, counting reducible vs emergent compositions.

    Deterministic: pairs are visited in lexicographic order and the recorded
    example is the smallest emergent pair.
    """
    n = family.domain.size
    columns, smallest = _column_index(family)
    emergent = 0
    example: tuple[int, int] | None = None
    for v1 in range(n):
        col1 = columns[v1]
        for v2 in range(n):
            col2 = columns[v2]
            composed = tuple(col2[x] for x in col1)
            if composed not in smallest:
                emergent += 1
                if example is None:
                    example = (v1, v2)
    total = n * n
    return CensusReport(
        family=family.name,
        domain_size=n,
        pairs_total=total,
        pairs_reducible=total - emergent,
        pairs_emergent=emergent,
        self_similar=emergent == 0,
        example_emergent_pair=example,
    )


def is_self_similar(family: ParamFamily) -> bool:
    """True iff every pairwise composition reduces to a single parameter."""
    n = family.domain.size
    columns, smallest = _column_index(family)
    for v1 in range(n):
        col1 = columns[v1]
        for v2 in range(n):
            if tuple(columns[v2][x] for x in col1) not in smallest:
                return False
    return True


def is_linear(family: ParamFamily) -> str:
    """'yes', 'no', or 'unknown': does f(i, v) = a*i + b(v) fit over Z_n?

    Only the modular variants declare ring structure on their indices; an
    explicit table (or an encoded family such as the threshold memory) has
    none, so the question is answered 'unknown' rather than guessed.
    """
    if family.rule is None or family.rule.variant not in _MODULAR_VARIANTS:
        return "unknown"
    n = family.domain.size
    table = family.table
    offsets = table[0]  # at i = 0 the fit forces b(v) = f(0, v)
    for a in range(n):
        if all(table[i][v] == (a * i + offsets[v]) % n for i in range(n) for v in range(n)):
            return "yes"
    return "no"


def pushforward_entropy(fr: FunctionRep) -> float:
    """Entropy in bits of the member's output under uniformly random input."""
    return entropy(pushforward(fr, uniform(fr.domain)))


__all__ = [
    "ASSOCIATIVE",
    "ADDITIVE",
    "ClassReport",
    "CensusReport",
    "NotInvertible",
    "classify",
    "classify_column",
    "invert",
    "information_loss",
    "compose_columns",
    "find_reducer",
    "produces_emergence",
    "emergence_census",
    "is_self_similar",
    "is_linear",
    "pushforward_entropy",
]
