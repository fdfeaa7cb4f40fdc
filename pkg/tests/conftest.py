import numpy as np
import pytest

import qaoasim as qs
from qaoasim import rng

BACKENDS = ("reference", "accelerated")


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def k3_poly():
    g = qs.Graph(3, [(0, 1), (1, 2), (0, 2)])
    return qs.maxcut_polynomial(g)


def brute_force_cut_table(g: qs.Graph) -> np.ndarray:
    """Independent oracle: enumerate every bipartition, count cut weight."""
    table = np.zeros(1 << g.num_vertices)
    for x in range(1 << g.num_vertices):
        cut = 0.0
        for u, v, w in g.edges:
            if (x >> u & 1) != (x >> v & 1):
                cut += w
        table[x] = -cut
    return table


def random_polynomial(seed: int, n: int, max_terms: int = 50) -> qs.Polynomial:
    stream = rng.Stream(seed)
    num_terms = 1 + stream.next_below(max_terms)
    terms = []
    for _ in range(num_terms):
        mask = stream.next_below(1 << n)
        weight = (stream.next_uniform() - 0.5) * 8.0
        terms.append((weight, mask))
    return qs.Polynomial(n, terms)


def random_instance(seed: int, n: int) -> qs.Polynomial:
    """A MaxCut polynomial from a rotating benchmark family valid at n."""
    families = ["er25", "er50", "er75", "complete"]
    if n >= 4 and n % 2 == 0:
        families.append("reg3")
    stream = rng.Stream(seed)
    family = families[stream.next_below(len(families))]
    if family == "complete":
        g = qs.complete_graph(n)
    elif family == "reg3":
        g = qs.random_regular(n, 3, stream.derive(1))
    else:
        prob = {"er25": 0.25, "er50": 0.5, "er75": 0.75}[family]
        g = qs.erdos_renyi(n, prob, stream.derive(1))
    return qs.maxcut_polynomial(g)


def random_params(seed: int, p: int, scale: float = 2.0) -> qs.QaoaParams:
    stream = rng.Stream(seed)
    betas = [(stream.next_uniform() - 0.5) * scale for _ in range(p)]
    gammas = [(stream.next_uniform() - 0.5) * scale for _ in range(p)]
    return qs.QaoaParams(betas=betas, gammas=gammas)
