"""Finite parametrized function families, their networks, and their analysis.

A family is a total two-argument table over an index domain; an instance
(fr) fixes one stored parameter value.  The package provides the
information-theoretic member primitives, an exhaustive reducibility census
over compositions, staged networks with deterministic arbitration, a small
declarative text format, and a CLI.
"""

from .analysis import (
    ADDITIVE,
    ASSOCIATIVE,
    CensusReport,
    ClassReport,
    NotInvertible,
    classify,
    classify_column,
    compose_columns,
    emergence_census,
    find_reducer,
    information_loss,
    invert,
    is_linear,
    is_self_similar,
    produces_emergence,
    pushforward_entropy,
)
from .core import (
    BuiltinRule,
    Distribution,
    FiniteDomain,
    FunctionRep,
    ParamFamily,
    apply,
    contains_information,
    entropy,
    image,
    is_knowledge,
    param_column,
    point_mass,
    pushforward,
    uniform,
)
from .dsl import Diagnostic, Model, build_network, parse_text, serialize
from .families import (
    FamilySpec,
    TableError,
    affine_mod,
    circular_distance,
    hybrid_memory,
    make_family,
    mul_mod,
    poly_mod,
    quantized_neuron,
    table_family,
    threshold_memory,
    validate_table,
)
from .topology import (
    BestScore,
    FirstNonNull,
    Network,
    Node,
    Parallel,
    Priority,
    Sequential,
    classify_network,
    compose_table,
    reduce_chain,
    run,
)

__version__ = "0.1.0"
