import random

import pytest

from stabwitness.cliffords import SINGLE_QUBIT_CLIFFORDS, LocalClifford, apply_to_generators
from stabwitness.graphs import Graph, graph_generators
from stabwitness.groups import build_color_code, span_group
from stabwitness.witnesses import run_census


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    edges = [
        (mu, nu)
        for mu in range(1, n + 1)
        for nu in range(mu + 1, n + 1)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_local_clifford(rng: random.Random, n: int) -> LocalClifford:
    return LocalClifford(
        tuple(rng.choice(SINGLE_QUBIT_CLIFFORDS) for _ in range(n))
    )


def random_stabilizer_set(rng: random.Random, n: int):
    """A random graph-state generator set scrambled by random letter maps."""
    return apply_to_generators(
        random_local_clifford(rng, n), graph_generators(random_graph(rng, n))
    )


@pytest.fixture(scope="session")
def color_code():
    return build_color_code()


@pytest.fixture(scope="session")
def color_group(color_code):
    return span_group(color_code)


@pytest.fixture(scope="session")
def full_census(color_code):
    """Complete color-code census with all three methods; shared because the
    graph-based pass is the expensive step."""
    return run_census(color_code)
