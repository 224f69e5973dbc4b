"""Built-in rule families and explicit-table construction.

Seven variants are available:

    affine_mod        translation: the stored value shifts the input by a*v
    mul_mod           modular product of input and stored value
    poly_mod          power map plus stored offset (the nonlinear exemplar)
    threshold_memory  recall: emit the stored value if the input is close, else NULL
    quantized_neuron  fixed-point single-weight neuron with ramp nonlinearity
    hybrid_memory     threshold recall followed by the ramp quantizer
    table             an explicit, pre-validated lookup table

Each builder materializes the full lookup table at construction, so every
family is total by construction and all later analysis is table-driven.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import BuiltinRule, FiniteDomain, ParamFamily

VARIANTS = (
    "affine_mod",
    "mul_mod",
    "poly_mod",
    "threshold_memory",
    "quantized_neuron",
    "hybrid_memory",
    "table",
)

# canonical parameter names per variant, in serialization order
PARAM_ORDER: dict[str, tuple[str, ...]] = {
    "affine_mod": ("a",),
    "mul_mod": (),
    "poly_mod": ("e",),
    "threshold_memory": ("theta",),
    "quantized_neuron": ("s",),
    "hybrid_memory": ("theta", "s"),
}


@dataclass(frozen=True)
class TableError:
    """One defect found while validating an explicit table."""

    row: int | None
    col: int | None
    message: str


@dataclass(frozen=True)
class FamilySpec:
    """A request to build one family: variant, parameters, and target domain."""

    name: str
    variant: str
    domain: FiniteDomain
    params: tuple[tuple[str, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        # accept a plain dict for convenience; store sorted pairs
        if isinstance(self.params, dict):
            object.__setattr__(self, "params", tuple(sorted(self.params.items())))


def circular_distance(i: int, v: int, n: int) -> int:
    """Distance between two indices on a ring of n values."""
    d = abs(i - v)
    return min(d, n - d)


def validate_table(matrix, domain: FiniteDomain) -> list[TableError]:
    """Check an explicit table against a domain; empty list means valid.

    Every offending cell is reported, not just the first.
    """
    errors: list[TableError] = []
    n = domain.size
    if len(matrix) != n:
        errors.append(TableError(None, None, f"table has {len(matrix)} rows, domain size is {n}"))
    for i, row in enumerate(matrix):
        if len(row) != n:
            errors.append(TableError(i, None, f"row {i} has {len(row)} entries, expected {n}"))
            continue
        for v, out in enumerate(row):
            if not 0 <= out < n:
                errors.append(TableError(i, v, f"entry ({i}, {v}) = {out} outside [0, {n})"))
    return errors


def _require(params: dict[str, int], variant: str, names: tuple[str, ...]) -> list[int]:
    unknown = sorted(set(params) - set(names))
    if unknown:
        raise ValueError(f"{variant}: unknown parameter(s) {', '.join(unknown)}")
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"{variant}: missing parameter(s) {', '.join(missing)}")
    return [params[k] for k in names]


def _affine_table(n: int, a: int) -> list[list[int]]:
    if not 1 <= a < n:
        raise ValueError(f"affine_mod: coefficient a must satisfy 1 <= a < {n}, got {a}")
    return [[(i + a * v) % n for v in range(n)] for i in range(n)]


def _mul_table(n: int) -> list[list[int]]:
    return [[(i * v) % n for v in range(n)] for i in range(n)]


def _poly_table(n: int, e: int) -> list[list[int]]:
    if e < 2:
        raise ValueError(f"poly_mod: exponent must be >= 2, got {e}")
    return [[(pow(i, e, n) + v) % n for v in range(n)] for i in range(n)]


def _threshold_table(n: int, theta: int) -> list[list[int]]:
    # n counts the stored values; NULL sits at index n
    if theta < 0:
        raise ValueError(f"threshold_memory: threshold must be >= 0, got {theta}")
    null = n
    table = []
    for i in range(n + 1):
        row = []
        for v in range(n + 1):
            if i == null or v == null:
                row.append(null)
            elif circular_distance(i, v, n) <= theta:
                row.append(v)
            else:
                row.append(null)
        table.append(row)
    return table


def _quantize(p: int, s: int, center: int, n: int) -> int:
    """Map the product p/s^2 through ramp then round-half-up at scale s."""
    if p <= 0:
        return center
    # floor(p/s + 1/2) in exact integer arithmetic
    return min(center + (2 * p + s) // (2 * s), n - 1)


def _neuron_table(n: int, s: int) -> list[list[int]]:
    if s <= 0:
        raise ValueError(f"quantized_neuron: scale must be >= 1, got {s}")
    center = n // 2
    table = []
    for i in range(n):
        row = []
        for v in range(n):
            p = (i - center) * (v - center)
            row.append(_quantize(p, s, center, n))
        table.append(row)
    return table


def _hybrid_table(n: int, theta: int, s: int) -> list[list[int]]:
    if s <= 0:
        raise ValueError(f"hybrid_memory: scale must be >= 1, got {s}")
    recall = _threshold_table(n, theta)
    center = n // 2
    null = n
    table = []
    for i in range(n + 1):
        row = []
        for v in range(n + 1):
            w = recall[i][v]
            if w == null:
                row.append(null)
            else:
                # ramp then round-half-up of (w - center)/s, rescaled by s
                row.append(min(center + max(0, w - center), n - 1))
        table.append(row)
    return table


def _null_terminal_count(variant: str, domain: FiniteDomain) -> int:
    if domain.null_index is None:
        raise ValueError(f"{variant}: requires a domain with a NULL element")
    if domain.null_index != domain.size - 1:
        raise ValueError(f"{variant}: NULL must be the last domain index")
    return domain.size - 1


def make_family(spec: FamilySpec, matrix=None) -> ParamFamily:
    """Build the family a spec describes; raises ValueError on bad parameters.

    For the ``table`` variant pass the matrix separately; it must already
    satisfy validate_table.
    """
    params = dict(spec.params)
    variant = spec.variant
    domain = spec.domain
    n = domain.size

    if variant == "affine_mod":
        (a,) = _require(params, variant, ("a",))
        table = _affine_table(n, a)
    elif variant == "mul_mod":
        _require(params, variant, ())
        table = _mul_table(n)
    elif variant == "poly_mod":
        (e,) = _require(params, variant, ("e",))
        table = _poly_table(n, e)
    elif variant == "threshold_memory":
        (theta,) = _require(params, variant, ("theta",))
        table = _threshold_table(_null_terminal_count(variant, domain), theta)
    elif variant == "quantized_neuron":
        (s,) = _require(params, variant, ("s",))
        table = _neuron_table(n, s)
    elif variant == "hybrid_memory":
        theta, s = _require(params, variant, ("theta", "s"))
        table = _hybrid_table(_null_terminal_count(variant, domain), theta, s)
    elif variant == "table":
        if matrix is None:
            raise ValueError("table: no matrix given")
        faults = validate_table(matrix, domain)
        if faults:
            raise ValueError("table: " + "; ".join(f.message for f in faults))
        frozen = tuple(tuple(int(x) for x in row) for row in matrix)
        return ParamFamily(
            name=spec.name,
            domain=domain,
            rule=None,
            table=frozen,
            null_aware=domain.null_index is not None,
        )
    else:
        raise ValueError(f"unknown family variant {variant!r}")

    return ParamFamily(
        name=spec.name,
        domain=domain,
        rule=BuiltinRule(variant, tuple(sorted(params.items()))),
        table=tuple(tuple(row) for row in table),
        null_aware=variant in ("threshold_memory", "hybrid_memory"),
    )


# -- convenience constructors -------------------------------------------------

def _plain_domain(n: int) -> FiniteDomain:
    return FiniteDomain(f"Z{n}", n)


def _null_domain(n: int) -> FiniteDomain:
    return FiniteDomain(f"Z{n}n", n + 1, null_index=n)


def affine_mod(n: int, a: int, *, name: str = "affine_mod", domain: FiniteDomain | None = None) -> ParamFamily:
    return make_family(FamilySpec(name, "affine_mod", domain or _plain_domain(n), {"a": a}))


def mul_mod(n: int, *, name: str = "mul_mod", domain: FiniteDomain | None = None) -> ParamFamily:
    return make_family(FamilySpec(name, "mul_mod", domain or _plain_domain(n), {}))


def poly_mod(n: int, e: int, *, name: str = "poly_mod", domain: FiniteDomain | None = None) -> ParamFamily:
    return make_family(FamilySpec(name, "poly_mod", domain or _plain_domain(n), {"e": e}))


def threshold_memory(n: int, theta: int, *, name: str = "threshold_memory",
                     domain: FiniteDomain | None = None) -> ParamFamily:
    """Recall memory over n stored values plus a NULL element at index n."""
    return make_family(FamilySpec(name, "threshold_memory", domain or _null_domain(n), {"theta": theta}))


def quantized_neuron(n: int, s: int, *, name: str = "quantized_neuron",
                     domain: FiniteDomain | None = None) -> ParamFamily:
    """Single-weight neuron on n fixed-point values centered at index n//2.

    Index k encodes (k - n//2)/s; the output is the ramp of input*weight,
    rounded half-up back to an index and clamped to the domain.
    """
    return make_family(FamilySpec(name, "quantized_neuron", domain or _plain_domain(n), {"s": s}))


def hybrid_memory(n: int, theta: int, s: int, *, name: str = "hybrid_memory",
                  domain: FiniteDomain | None = None) -> ParamFamily:
    return make_family(
        FamilySpec(name, "hybrid_memory", domain or _null_domain(n), {"theta": theta, "s": s})
    )


def table_family(matrix, *, name: str = "table", domain: FiniteDomain | None = None) -> ParamFamily:
    if domain is None:
        domain = _plain_domain(len(matrix))
    return make_family(FamilySpec(name, "table", domain, {}), matrix=matrix)
