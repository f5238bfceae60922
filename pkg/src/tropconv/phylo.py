"""Finite metrics: tropical certification, tree metrics and the tight span."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cells import TropicalComplex, enumerate_complex
from .core import Configuration, ProjectivePoint, TropicalError, as_rational, t_matmul
from .envelope import DEFAULT_SIZE_LIMIT, build_envelope
from .polyhedra import enumerate_faces, rank, v_representation
from .subdivision import trop_det

__all__ = [
    "MetricError",
    "MetricMatrix",
    "TightSpan",
    "TreeMetricReport",
    "embed_metric",
    "four_point_condition",
    "involution_fixed",
    "is_metric",
    "is_tree_metric",
    "random_tree_metric",
    "tight_span",
    "tight_span_polyhedron",
]

#: Largest n for which all (not only principal) 4x4 minors are scanned.
ALL_MINORS_LIMIT = 8


class MetricError(TropicalError):
    """Input is not a (pseudo)metric."""


class MetricMatrix:
    """Symmetric nonnegative rational matrix with zero diagonal."""

    __slots__ = ("_d",)

    def __init__(self, rows: Sequence[Sequence]):
        d = tuple(tuple(as_rational(c) for c in row) for row in rows)
        n = len(d)
        if n == 0:
            raise TropicalError("empty distance matrix")
        if any(len(row) != n for row in d):
            raise TropicalError("distance matrix must be square")
        for i in range(n):
            if d[i][i] != 0:
                raise TropicalError(f"nonzero diagonal entry at ({i}, {i})")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise TropicalError(f"asymmetric entries at ({i}, {j})")
                if d[i][j] < 0:
                    raise TropicalError(f"negative distance at ({i}, {j})")
        self._d = d

    @property
    def n(self) -> int:
        return len(self._d)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._d

    def __getitem__(self, idx):
        return self._d[idx]

    def __eq__(self, other) -> bool:
        if isinstance(other, MetricMatrix):
            return self._d == other._d
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._d)

    def __repr__(self) -> str:
        return f"MetricMatrix({[[str(c) for c in row] for row in self._d]})"

    def negated(self) -> Configuration:
        return Configuration([[-c for c in row] for row in self._d])


def _metric(D) -> MetricMatrix:
    return D if isinstance(D, MetricMatrix) else MetricMatrix(D)


def _triangle_route(D: MetricMatrix) -> bool:
    n = D.n
    return all(
        D[i][j] <= D[i][k] + D[k][j] for i in range(n) for j in range(n) for k in range(n)
    )


def _minor_route(D: MetricMatrix) -> bool:
    neg = D.negated().rows
    for idx in itertools.combinations(range(D.n), 3):
        sub = [[neg[a][b] for b in idx] for a in idx]
        if not trop_det(sub)[1]:
            return False
    return True


def is_metric(D) -> bool:
    """Triangle inequalities, checked directly and via principal 3x3 tropical minors of ``-D``."""
    D = _metric(D)
    direct = _triangle_route(D)
    via_minors = _minor_route(D)
    if direct != via_minors:
        raise AssertionError(f"metric routes disagree: triangle={direct}, minors={via_minors}")
    return direct


def _require_metric(D) -> MetricMatrix:
    D = _metric(D)
    if not is_metric(D):
        raise MetricError("distance matrix violates the triangle inequality")
    return D


def four_point_condition(D) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Check that for every quadruple the largest of the three pairing sums is attained twice.

    Returns ``(True, None)`` or ``(False, first failing quadruple)``.
    """
    D = _require_metric(D)
    for i, j, k, l in itertools.combinations(range(D.n), 4):
        sums = sorted((D[i][j] + D[k][l], D[i][k] + D[j][l], D[i][l] + D[j][k]))
        if sums[2] != sums[1]:
            return False, (i, j, k, l)
    return True, None


def _principal_4x4_singular(D: MetricMatrix) -> bool:
    neg = D.negated().rows
    for idx in itertools.combinations(range(D.n), 4):
        if not trop_det([[neg[a][b] for b in idx] for a in idx])[1]:
            return False
    return True


def _all_4x4_singular(D: MetricMatrix) -> bool:
    neg = D.negated().rows
    subsets = list(itertools.combinations(range(D.n), 4))
    for rows in subsets:
        for cols in subsets:
            if not trop_det([[neg[a][b] for b in cols] for a in rows])[1]:
                return False
    return True


@dataclass(frozen=True)
class TreeMetricReport:
    fpc: bool
    dim_PD: int | None
    principal_4x4_singular: bool
    all_4x4_singular: bool | None
    skipped: tuple[str, ...] = ()

    @property
    def tree_metric(self) -> bool:
        return self.fpc

    def conditions(self) -> dict[str, bool]:
        out = {"fpc": self.fpc, "principal_4x4": self.principal_4x4_singular}
        if self.dim_PD is not None:
            out["dim_le_1"] = self.dim_PD <= 1
        if self.all_4x4_singular is not None:
            out["all_4x4"] = self.all_4x4_singular
        return out

    @property
    def agree(self) -> bool:
        return len(set(self.conditions().values())) == 1


def is_tree_metric(
    D,
    use_complex: bool = True,
    size_limit: int | None = DEFAULT_SIZE_LIMIT,
) -> TreeMetricReport:
    """Evaluate the equivalent tree-metric conditions and insist that they agree.

    The dimension condition reads ``dim P_D <= 1`` so that degenerate
    pseudometrics (coinciding points) are handled.  The scan over all 4x4
    minors only runs for ``n <= 8``; skipped routes are listed in the report.
    """
    D = _require_metric(D)
    skipped = []
    fpc, _ = four_point_condition(D)
    principal = _principal_4x4_singular(D)
    if D.n <= ALL_MINORS_LIMIT:
        all_minors = _all_4x4_singular(D)
    else:
        all_minors = None
        skipped.append("all_4x4")
    dim = None
    if use_complex and (size_limit is None or D.n * D.n <= size_limit):
        dim = enumerate_complex(D.negated(), bounded_only=True, size_limit=size_limit).dimension
    else:
        skipped.append("dim_PD")
    report = TreeMetricReport(fpc, dim, principal, all_minors, tuple(skipped))
    if not report.agree:
        raise AssertionError(f"tree-metric conditions disagree: {report.conditions()}")
    return report


def embed_metric(D) -> list[ProjectivePoint]:
    """Point ``i`` is ``-1/2`` times row ``i`` of ``D``; pairwise distances reproduce ``D``."""
    D = _require_metric(D)
    return [ProjectivePoint([-c / 2 for c in row]) for row in D.rows]


def involution_fixed(M) -> bool:
    """Whether ``-M = M ⊙ (-M)`` holds for the tropical matrix product."""
    rows = [tuple(as_rational(c) for c in row) for row in M]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise TropicalError("involution test needs a square matrix")
    neg = tuple(tuple(-c for c in row) for row in rows)
    return t_matmul(rows, neg) == neg


@dataclass(frozen=True)
class TightSpan:
    """Injective hull of a finite metric.

    ``vertices`` and ``faces`` describe the bounded complex of
    ``{x : x_i + x_j >= d_ij}`` in ``R^n``.  ``envelope_vertices`` are the
    vertices ``(y, z)`` of ``{y_i + z_j <= -d_ij}`` (gauge ``z_0 = 0``) and
    ``off_diagonal`` lists those that do not satisfy ``y = z`` modulo the
    gauge.  For tree metrics that list is empty and the lifted envelope
    vertices ``-y`` coincide with ``vertices``.  ``complex`` is the bounded
    complex of the tropical polytope of the rows of ``-D``, which contains
    the tight span (as ``x -> -x``) but may have larger dimension.
    """

    metric: MetricMatrix
    complex: TropicalComplex
    vertices: tuple[tuple[Fraction, ...], ...]
    faces: frozenset[frozenset[tuple[int, int]]]
    envelope_vertices: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]
    off_diagonal: tuple[int, ...]
    lifted: tuple[tuple[Fraction, ...], ...]
    leaves: tuple[ProjectivePoint, ...]

    @property
    def dimension(self) -> int:
        """Dimension of the tight span itself."""
        if not self.faces:
            return -1
        n = self.metric.n
        best = 0
        for face in self.faces:
            best = max(best, _face_dimension(face, n))
        return best

    @property
    def diagonal(self) -> bool:
        """Every envelope vertex satisfies ``y = z``."""
        return not self.off_diagonal

    def matches_envelope(self) -> bool:
        """Whether the lifted envelope vertices are exactly the tight-span vertices."""
        return self.diagonal and tuple(sorted(set(self.lifted))) == self.vertices


def _face_dimension(face, n: int) -> int:
    # x_i + x_j = d_ij for the tight pairs; dimension is n minus the rank
    rows = []
    for i, j in face:
        row = [0] * n
        row[i] += 1
        row[j] += 1
        rows.append(row)
    return n - rank(rows)


def _on_diagonal(y, z) -> tuple[bool, Fraction]:
    shift = {a - b for a, b in zip(z, y)}
    if len(shift) != 1:
        return False, Fraction(0)
    return True, shift.pop() / 2


def tight_span(D, size_limit: int | None = DEFAULT_SIZE_LIMIT, strict: bool = False) -> TightSpan:
    """Tight span of ``D`` with the envelope polyhedron of ``-D`` alongside.

    The vertices of ``{y_i + z_j <= -d_ij}`` are checked against ``y = z``
    and lifted to ``x = -y``.  The tight span proper is taken from
    ``{x : x_i + x_j >= d_ij}``, which is that envelope cut by ``y = z``.
    Outside tree metrics some envelope vertices usually violate ``y = z``;
    they are listed in ``off_diagonal``, or abort the call when ``strict``.
    """
    D = _require_metric(D)
    negD = D.negated()
    env = build_envelope(negD, size_limit=size_limit)
    lifted, off = [], []
    for idx, (y, z) in enumerate(env.vertices):
        ok, half = _on_diagonal(y, z)
        if not ok:
            if strict:
                raise AssertionError(f"envelope vertex y={y}, z={z} violates y = z")
            off.append(idx)
            continue
        lifted.append(tuple(-(c + half) for c in y))
    vertices, faces = tight_span_polyhedron(D)
    cplx = enumerate_complex(negD, bounded_only=True, size_limit=size_limit)
    return TightSpan(
        metric=D,
        complex=cplx,
        vertices=vertices,
        faces=faces,
        envelope_vertices=env.vertices,
        off_diagonal=tuple(off),
        lifted=tuple(lifted),
        leaves=tuple(embed_metric(D)),
    )


def tight_span_polyhedron(D):
    """Vertices and bounded faces of ``{x in R^n : x_i + x_j >= d_ij}``, computed directly.

    Faces are returned as the sets of pairs ``i <= j`` tight on them.
    """
    D = _metric(D)
    n = D.n
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    A, b = [], []
    for i, j in pairs:
        row = [0] * n
        row[i] -= 1
        row[j] -= 1
        A.append(row)
        b.append(-D[i][j])
    vrep = v_representation(A, b)
    faces = frozenset(
        frozenset(pairs[c] for c in f.tight) for f in enumerate_faces(vrep, bounded_only=True)
    )
    return tuple(sorted(vrep.vertices)), faces


def random_tree_metric(
    n: int,
    rng: random.Random,
    low: int = 1,
    high: int = 10,
) -> MetricMatrix:
    """Leaf distances of a random tree with ``n`` leaves and integer edge weights.

    Each new leaf hangs off a uniformly chosen edge, which is subdivided.
    """
    if n < 1:
        raise TropicalError("need at least one leaf")
    if n == 1:
        return MetricMatrix([[0]])
    # nodes 0..n-1 are leaves
    edges: list[list[int]] = [[0, 1, rng.randint(low, high)]]
    next_node = n
    for leaf in range(2, n):
        e = rng.randrange(len(edges))
        a, b, _w = edges.pop(e)
        mid = next_node
        next_node += 1
        edges.extend(
            [[a, mid, rng.randint(low, high)], [mid, b, rng.randint(low, high)], [mid, leaf, rng.randint(low, high)]]
        )
    adj: dict[int, list[tuple[int, int]]] = {}
    for a, b, w in edges:
        adj.setdefault(a, []).append((b, w))
        adj.setdefault(b, []).append((a, w))
    rows = []
    for src in range(n):
        dist = {src: 0}
        stack = [src]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + w
                    stack.append(v)
        rows.append([dist[t] for t in range(n)])
    return MetricMatrix(rows)
