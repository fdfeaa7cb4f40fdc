"""MaxCut encoding and the benchmark graph families.

All generators draw from the package's portable counter RNG, so a
fixed seed gives the same graphs on every platform.  Cut maximization
is encoded as minimizing -cut(x); reported cut values are therefore
the negated expectation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import rng
from .costpoly import Polynomial
from .errors import ContractViolation, ParseError, ResourceError

REGULAR_REJECTION_BUDGET = 1_000_000

SUITE_FAMILIES = ("er25", "er50", "er75", "reg3", "complete")
_ER_PROBS = {"er25": 0.25, "er50": 0.50, "er75": 0.75}


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int, float], ...]

    def __init__(self, num_vertices: int, edges: Iterable[tuple] = ()):
        if num_vertices < 1:
            raise ContractViolation(
                f"graph needs >= 1 vertex, got {num_vertices}"
            )
        normalized = []
        seen = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            w = float(edge[2]) if len(edge) > 2 else 1.0
            if not (0 <= u < v < num_vertices):
                raise ContractViolation(
                    f"edge ({u}, {v}) invalid for {num_vertices} vertices"
                )
            if (u, v) in seen:
                raise ContractViolation(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            normalized.append((u, v, w))
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def cut_value(g: Graph, x: int) -> float:
    """Total weight of edges crossing the bipartition encoded by x."""
    total = 0.0
    for u, v, w in g.edges:
        if (x >> u & 1) != (x >> v & 1):
            total += w
    return total


def maxcut_polynomial(g: Graph) -> Polynomial:
    """Encode minimize -cut(x): per edge (u,v,w) the indicator
    [x_u != x_v] = x_u + x_v - 2*x_u*x_v enters with weight -w."""
    terms: list[tuple[float, int]] = []
    for u, v, w in g.edges:
        terms.append((-w, 1 << u))
        terms.append((-w, 1 << v))
        terms.append((2.0 * w, (1 << u) | (1 << v)))
    return Polynomial(g.num_vertices, terms)


def erdos_renyi(n: int, prob: float, seed: int) -> Graph:
    """G(n, prob): each pair kept independently, lexicographic pair order."""
    if not 0.0 <= prob <= 1.0:
        raise ContractViolation(f"edge probability {prob} outside [0, 1]")
    npairs = n * (n - 1) // 2
    edges = []
    if npairs:
        u_vals = rng.uniform_block(seed, 0, npairs)
        k = 0
        for u in range(n - 1):
            for v in range(u + 1, n):
                if u_vals[k] < prob:
                    edges.append((u, v, 1.0))
                k += 1
    return Graph(n, edges)


def random_regular(n: int, degree: int, seed: int) -> Graph:
    """d-regular simple graph via the pairing model with full rejection."""
    if n * degree % 2 != 0:
        raise ContractViolation(
            f"no {degree}-regular graph on {n} vertices (odd stub count)"
        )
    if degree >= n:
        raise ContractViolation(
            f"degree {degree} must be smaller than vertex count {n}"
        )
    if degree == 0:
        return Graph(n, [])
    stream = rng.Stream(seed)
    base = [v for v in range(n) for _ in range(degree)]
    for _ in range(REGULAR_REJECTION_BUDGET):
        stubs = base.copy()
        for i in range(len(stubs) - 1, 0, -1):
            j = stream.next_below(i + 1)
            stubs[i], stubs[j] = stubs[j], stubs[i]
        seen = set()
        ok = True
        for k in range(0, len(stubs), 2):
            u, v = stubs[k], stubs[k + 1]
            if u == v:
                ok = False
                break
            pair = (min(u, v), max(u, v))
            if pair in seen:
                ok = False
                break
            seen.add(pair)
        if ok:
            return Graph(n, [(u, v, 1.0) for u, v in sorted(seen)])
    raise ResourceError(
        f"pairing model rejected {REGULAR_REJECTION_BUDGET} attempts "
        f"for n={n}, degree={degree}"
    )


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ContractViolation(f"graph needs >= 1 vertex, got {n}")
    return Graph(n, [(u, v, 1.0) for u in range(n - 1) for v in range(u + 1, n)])


def generate_suite(
    vertex_range: tuple[int, int] = (6, 29),
    instances: int = 5,
    seed: int = 0,
    families: Sequence[str] = SUITE_FAMILIES,
) -> list[tuple[str, Graph]]:
    """Benchmark instances per family and size.

    Random families get `instances` seeded graphs per size; complete
    graphs are unique so only one per size is emitted, and 3-regular
    graphs exist only for even sizes.  With the default settings
    (sizes 6..29, five instances, all five families) the suite holds
    444 graphs.
    """
    lo, hi = vertex_range
    if lo < 1 or hi < lo:
        raise ContractViolation(f"invalid vertex range {vertex_range}")
    suite: list[tuple[str, Graph]] = []
    for fam_idx, family in enumerate(families):
        if family not in SUITE_FAMILIES:
            raise ContractViolation(f"unknown graph family {family!r}")
        for size in range(lo, hi + 1):
            for k in range(instances):
                inst_seed = rng.derive_seed(seed, fam_idx, size, k)
                if family in _ER_PROBS:
                    g = erdos_renyi(size, _ER_PROBS[family], inst_seed)
                elif family == "reg3":
                    if size * 3 % 2 != 0:
                        continue
                    g = random_regular(size, 3, inst_seed)
                else:
                    if k > 0:
                        continue
                    g = complete_graph(size)
                suite.append((family, g))
    return suite


def write_graph(path, g: Graph) -> None:
    """Graph file: header `n m`, then one `u v w` line per edge."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{g.num_vertices} {g.num_edges}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w:.17g}\n")


def read_graph(path) -> Graph:
    header = None
    edges = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if header is None:
                if len(tokens) != 2:
                    raise ParseError("expected header `n m`", lineno)
                try:
                    header = (int(tokens[0]), int(tokens[1]))
                except ValueError as exc:
                    raise ParseError(f"bad header: {exc}", lineno)
                continue
            if len(tokens) not in (2, 3):
                raise ParseError(f"bad edge line {line!r}", lineno)
            try:
                u, v = int(tokens[0]), int(tokens[1])
                w = float(tokens[2]) if len(tokens) == 3 else 1.0
            except ValueError as exc:
                raise ParseError(f"bad edge line: {exc}", lineno)
            edges.append((u, v, w))
    if header is None:
        raise ParseError("missing `n m` header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header promises {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ContractViolation as exc:
        raise ParseError(str(exc))
