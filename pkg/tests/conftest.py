"""Shared corpus builders for the test suite."""

from __future__ import annotations

from frnet import (
    ParamFamily,
    affine_mod,
    hybrid_memory,
    mul_mod,
    poly_mod,
    quantized_neuron,
    threshold_memory,
)

CORPUS_SIZES = (2, 4, 8, 16)


def builtin_corpus(n: int) -> list[ParamFamily]:
    """One instance of every built-in variant, all with total domain size n."""
    families = [
        affine_mod(n, 1, name=f"add{n}"),
        mul_mod(n, name=f"mul{n}"),
        poly_mod(n, 2, name=f"sq{n}"),
        quantized_neuron(n, 2, name=f"neuron{n}"),
        threshold_memory(n - 1, 1, name=f"recall{n}"),
        hybrid_memory(n - 1, 1, 2, name=f"hybrid{n}"),
    ]
    if n >= 3:
        families.append(affine_mod(n, n - 1, name=f"back{n}"))
        families.append(poly_mod(n, 3, name=f"cube{n}"))
    return families
