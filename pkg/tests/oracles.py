"""Independent reference computations used by the tests.

Nothing here calls the polyhedral machinery of the package: vertices come
from brute-force linear solves, types from grid scans and tree metrics
from networkx path lengths.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx

from tropconv import Configuration, MetricMatrix, four_point_condition, is_metric, type_of


def solve(A, b):
    """Unique solution of a square system by Gauss-Jordan over Fractions, or None."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(c)] for row, c in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


def brute_vertices(A, b):
    """Vertices of ``{x : A x <= b}`` by trying every square subsystem."""
    d = len(A[0])
    out = set()
    for rows in itertools.combinations(range(len(A)), d):
        x = solve([A[r] for r in rows], [b[r] for r in rows])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(A[r], x)) <= b[r] for r in range(len(A))):
            out.add(x)
    return out


def grid_types(V, radius: int = 40, denominator: int = 4):
    """Types met by the grid ``(0, a/den, b/den)``, ``|a|, |b| <= radius``; n = 3 only."""
    V = Configuration(V) if not isinstance(V, Configuration) else V
    seen = {}
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            x = (0, Fraction(a, denominator), Fraction(b, denominator))
            seen.setdefault(type_of(V, x), x)
    return seen


def q_vertices(D):
    """Vertices of ``{x : x_i + x_j >= d_ij}`` by brute-force subsystems."""
    D = getattr(D, "rows", D)
    n = len(D)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    A, b = [], []
    for i, j in pairs:
        row = [0] * n
        row[i] -= 1
        row[j] -= 1
        A.append(row)
        b.append(-Fraction(D[i][j]))
    return brute_vertices(A, b)


def random_weighted_tree(n_leaves: int, rng: random.Random, low: int = 1, high: int = 10):
    """A random tree whose leaves are labelled ``0..n-1``, built by networkx.

    Internal nodes have degree 3; topology comes from attaching leaves to
    random edges.
    """
    G = nx.Graph()
    G.add_edge(("leaf", 0), ("leaf", 1), weight=rng.randint(low, high))
    for leaf in range(2, n_leaves):
        u, v = rng.choice(sorted(G.edges(), key=repr))
        mid = ("inner", leaf)
        G.remove_edge(u, v)
        G.add_edge(u, mid, weight=rng.randint(low, high))
        G.add_edge(mid, v, weight=rng.randint(low, high))
        G.add_edge(mid, ("leaf", leaf), weight=rng.randint(low, high))
    return G


def tree_distances(G, n_leaves: int):
    lengths = dict(nx.all_pairs_dijkstra_path_length(G))
    return [[lengths[("leaf", i)][("leaf", j)] for j in range(n_leaves)] for i in range(n_leaves)]


def random_tree_distances(n_leaves: int, rng: random.Random):
    if n_leaves == 1:
        return [[0]]
    return tree_distances(random_weighted_tree(n_leaves, rng), n_leaves)


def perturbed_metric(n: int, rng: random.Random, spread: int = 3) -> MetricMatrix:
    """A metric that fails the four point condition: a scaled tree metric with noise."""
    while True:
        D = random_tree_distances(n, rng)
        M = [[4 * D[i][j] for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                e = rng.randint(-spread, spread)
                M[i][j] += e
                M[j][i] += e
        if any(M[i][j] < 0 for i in range(n) for j in range(n)):
            continue
        M = MetricMatrix(M)
        if is_metric(M) and not four_point_condition(M)[0]:
            return M


def random_point(n: int, rng: random.Random, lo: int = -20, hi: int = 20, den: int = 2):
    return tuple(Fraction(rng.randint(lo * den, hi * den), den) for _ in range(n))
