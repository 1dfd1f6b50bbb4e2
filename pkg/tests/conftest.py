from __future__ import annotations

import random

import pytest

from aflens.model import Attack, Framework


def make_framework(names, attacks, annotations=None):
    return Framework.build(names, attacks, annotations or {})


@pytest.fixture
def mutual():
    # the running two-argument example: m and o attack each other
    return make_framework(["m", "o"], [("m", "o"), ("o", "m")])


@pytest.fixture
def chain():
    return make_framework(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def cycle3():
    return make_framework(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


@pytest.fixture
def cycle4():
    return make_framework(
        ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
    )


@pytest.fixture
def deep_chain():
    # v justifies a five-layer tower; (f, b) arrives too late to matter
    return make_framework(
        ["v", "b", "c", "d", "f"],
        [("v", "b"), ("b", "c"), ("c", "d"), ("d", "f"), ("f", "b")],
    )


def random_framework(rng: random.Random, max_args: int = 12, max_density: float = 0.5):
    n = rng.randint(1, max_args)
    names = [f"a{i}" for i in range(n)]
    density = rng.uniform(0.0, max_density)
    attacks = [
        (src, dst) for src in names for dst in names if rng.random() < density
    ]
    return make_framework(names, attacks)
