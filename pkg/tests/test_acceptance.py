"""Acceptance gate: every advertised guarantee, at its stated tolerance.

Each test prints one [PASS]/[FAIL] line for its criterion (visible with
``pytest -s`` or in captured output) and asserts the criterion itself.
"""

import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from hypothesis import given, settings

from frnet import (
    FunctionRep,
    Network,
    Node,
    NotInvertible,
    Sequential,
    affine_mod,
    classify,
    compose_columns,
    compose_table,
    emergence_census,
    entropy,
    find_reducer,
    hybrid_memory,
    image,
    invert,
    is_knowledge,
    mul_mod,
    param_column,
    parse_text,
    poly_mod,
    pushforward,
    quantized_neuron,
    reduce_chain,
    run,
    serialize,
    table_family,
    uniform,
)
from conftest import CORPUS_SIZES, builtin_corpus
from strategies import models

REPO = Path(__file__).resolve().parent.parent
CORPUS_FILES = sorted((REPO / "corpus").glob("*.frd"))

ENTROPY_FLOOR = 1e-12


@contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number}: {label}")
        raise
    else:
        print(f"[PASS] criterion {number}: {label}")


def random_tables(count_per_size=25, seed=0x5EED):
    """100 seeded random explicit-table families across the corpus sizes."""
    rng = random.Random(seed)
    tables = []
    for n in CORPUS_SIZES:
        for k in range(count_per_size):
            matrix = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
            tables.append(table_family(matrix, name=f"rand{n}_{k}"))
    return tables


def full_corpus():
    families = []
    for n in CORPUS_SIZES:
        families.extend(builtin_corpus(n))
    families.extend(random_tables())
    return families


def test_criterion_1_knowledge_iff_nonconstant():
    with criterion(1, "knowledge iff non-constant, exhaustive over the corpus"):
        start = time.perf_counter()
        for family in full_corpus():
            for v in range(family.domain.size):
                fr = FunctionRep(family, v)
                column = param_column(family, v)
                assert is_knowledge(fr) == (len(set(column)) > 1)
        assert time.perf_counter() - start < 5.0


def test_criterion_2_information_iff_multivalued():
    with criterion(2, "positive output entropy iff more than one output"):
        for family in full_corpus():
            for v in range(family.domain.size):
                fr = FunctionRep(family, v)
                bits = entropy(pushforward(fr, uniform(family.domain)))
                assert (bits > ENTROPY_FLOOR) == (len(image(fr)) > 1)


def test_criterion_3_zero_weight_neuron_is_not_knowledge():
    with criterion(3, "zero-weight neuron stores no knowledge"):
        for n in (9, 17):
            zero_index = n // 2
            for s in (1, 2, 5):
                assert not is_knowledge(FunctionRep(quantized_neuron(n, s), zero_index))


def test_criterion_4_linear_families_are_self_similar():
    with criterion(4, "translation and product families: no emergent pair, closed-form reducers"):
        slowest = 0.0
        for n in (5, 7, 8, 16, 32):
            families = [(affine_mod(n, a), "affine") for a in range(1, n) if math.gcd(a, n) == 1]
            families.append((mul_mod(n), "mul"))
            for family, kind in families:
                start = time.perf_counter()
                report = emergence_census(family)
                slowest = max(slowest, time.perf_counter() - start)
                assert report.pairs_emergent == 0, (family.name, n)
                for v1 in range(n):
                    for v2 in range(n):
                        expected = (v1 + v2) % n if kind == "affine" else (v1 * v2) % n
                        assert find_reducer(family, v1, v2) == expected
        assert slowest < 2.0


def test_criterion_5_emergence_witnesses_exist():
    with criterion(5, "power map and hybrid memory produce emergent pairs"):
        for family in (poly_mod(5, 2), hybrid_memory(8, 1, 2)):
            report = emergence_census(family)
            assert report.pairs_emergent >= 1
            v1, v2 = report.example_emergent_pair
            # re-verify the witness directly against every column of the table
            composed = tuple(family.table[family.table[i][v1]][v2] for i in range(family.domain.size))
            for candidate in range(family.domain.size):
                assert param_column(family, candidate) != composed


def test_criterion_6_chains_over_self_similar_families_collapse():
    with criterion(6, "1000 random chains over self-similar families collapse to one stage"):
        start = time.perf_counter()
        rng = random.Random(0xC0FFEE)
        for _ in range(1000):
            n = rng.randint(2, 16)
            if rng.random() < 0.5:
                family = affine_mod(n, rng.randint(1, n - 1))
            else:
                family = mul_mod(n)
            length = rng.randint(1, 5)
            stages = tuple(
                Sequential(Node(f"s{k}", FunctionRep(family, rng.randrange(n))))
                for k in range(length)
            )
            net = Network(family.domain, stages)
            reduced = reduce_chain(net)
            assert len(reduced.stages) == 1
            assert compose_table(reduced) == compose_table(net)
        assert time.perf_counter() - start < 10.0


def test_criterion_7_associative_iff_bijective_iff_lossless():
    with criterion(7, "reversible iff bijective iff zero loss, exhaustive at n <= 16"):
        for n in CORPUS_SIZES:
            for family in builtin_corpus(n):
                for v in range(family.domain.size):
                    fr = FunctionRep(family, v)
                    report = classify(fr)
                    try:
                        invert(fr)
                        invertible = True
                    except NotInvertible:
                        invertible = False
                    assert (report.kind == "Associative") == report.bijective
                    assert report.bijective == invertible
                    assert report.bijective == (report.information_loss == 0)


def test_criterion_8_composition_never_gains_image():
    with criterion(8, "two-stage chains never enlarge the image"):
        for n in (2, 4, 8):
            by_domain = {}
            for family in builtin_corpus(n):
                by_domain.setdefault(family.domain, []).append(family)
            for domain, group in by_domain.items():
                frs = [
                    FunctionRep(family, v)
                    for family in group
                    for v in range(domain.size)
                ]
                columns = {fr: param_column(fr.family, fr.param) for fr in frs}
                for first in frs:
                    for second in frs:
                        composed = compose_columns(columns[first], columns[second])
                        assert len(set(composed)) <= min(
                            len(set(columns[first])), len(set(columns[second]))
                        )


def test_criterion_9_parallel_memory_recall():
    with criterion(9, "parallel threshold memory recalls 5->6, 2->2, 4->NULL"):
        model, diagnostics = parse_text(
            "domain M size 8 null\n"
            "family mem over M = threshold_memory(theta=1)\n"
            "fr s2 = mem(2)\n"
            "fr s6 = mem(6)\n"
            "net recall = [s2 | s6] @first\n"
        )
        assert model is not None and not diagnostics
        net = model.nets["recall"]
        assert run(net, 5) == 6
        assert run(net, 2) == 2
        assert run(net, 4) == 8  # the NULL index


def test_criterion_10_dsl_round_trip():
    with criterion(10, "parse/serialize round-trip: 500 random models plus corpus idempotence"):
        @settings(max_examples=500, deadline=None)
        @given(models())
        def round_trips(model):
            text = serialize(model)
            parsed, diagnostics = parse_text(text)
            assert not diagnostics
            assert parsed == model
            assert serialize(parsed) == text

        round_trips()

        for path in CORPUS_FILES:
            model, diagnostics = parse_text(path.read_text(encoding="utf-8"))
            assert model is not None and not diagnostics
            once = serialize(model)
            parsed, _ = parse_text(once)
            assert serialize(parsed) == once


def test_criterion_11_cli_determinism():
    with criterion(11, "verify and census emit byte-identical output across runs; verify exits 0"):
        def invoke(*args):
            return subprocess.run(
                [sys.executable, "-m", "frnet", *args],
                capture_output=True,
                cwd=REPO,
            )

        for path in CORPUS_FILES:
            first = invoke("verify", str(path))
            second = invoke("verify", str(path))
            assert first.returncode == 0
            assert second.returncode == 0
            assert first.stdout == second.stdout
            assert b"all_hold: true" in first.stdout

        for args in (
            ("census", str(REPO / "corpus" / "families.frd"), "--family", "mul32"),
            ("census", str(REPO / "corpus" / "families.frd"), "--family", "sq5", "--json"),
        ):
            first = invoke(*args)
            second = invoke(*args)
            assert first.returncode == 0
            assert first.stdout == second.stdout
