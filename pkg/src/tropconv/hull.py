"""Tropical segments, hull membership, separation and generating sets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .core import (
    Configuration,
    ProjectivePoint,
    TropicalError,
    as_rational,
    mat_vec_left,
    normalize,
    t_comb,
)

__all__ = [
    "HullCertificate",
    "Inside",
    "Outside",
    "SegmentChain",
    "SeparatingHyperplane",
    "caratheodory_reduce",
    "contains",
    "intersect_polytopes",
    "lambda_coeffs",
    "minimal_generator_indices",
    "minimal_generators",
    "on_hyperplane",
    "project_onto_hull",
    "separate",
    "tropical_segment",
]


def _config(V) -> Configuration:
    return V if isinstance(V, Configuration) else Configuration(V)


def _point(V: Configuration, x) -> ProjectivePoint:
    x = normalize(x)
    if x.dim != V.n:
        raise TropicalError(f"point of dimension {x.dim} vs configuration with n={V.n}")
    return x


@dataclass(frozen=True)
class SegmentChain:
    """Breakpoints of a tropical segment and the 0/1 slope of each piece."""

    breakpoints: tuple[ProjectivePoint, ...]
    slopes: tuple[tuple[int, ...], ...]

    @property
    def pieces(self) -> int:
        return len(self.slopes)


def tropical_segment(x, y) -> SegmentChain:
    """The tropical segment from ``x`` to ``y`` as a chain of ordinary segments.

    Sorting the coordinates by ``y_i - x_i``, the breakpoints are
    ``min(c + x, y)`` for each distinct value ``c`` of the differences.
    """
    x = normalize(x)
    y = normalize(y)
    if x.dim != y.dim:
        raise TropicalError("segment endpoints live in different dimensions")
    diffs = [b - a for a, b in zip(x, y)]
    levels = sorted(set(diffs))
    points = [ProjectivePoint(min(c + a, b) for a, b in zip(x, y)) for c in levels]
    slopes = tuple(tuple(1 if d > c else 0 for d in diffs) for c in levels[:-1])
    return SegmentChain(breakpoints=tuple(points), slopes=slopes)


def lambda_coeffs(V, x) -> tuple[Fraction, ...]:
    """``λ_i = max_j (x_j - v_ij)``, the least λ with ``λ ⊙ v_i ⊕ x = x``."""
    V = _config(V)
    x = _point(V, x)
    return tuple(max(c - v for v, c in zip(row, x)) for row in V.rows)


def project_onto_hull(V, x) -> ProjectivePoint:
    """Nearest-point map onto ``tconv(V)``: ``⊕_i λ_i ⊙ v_i``."""
    V = _config(V)
    return t_comb(lambda_coeffs(V, x), V)


def contains(V, x) -> bool:
    """Membership in the tropical polytope generated by the rows of ``V``."""
    V = _config(V)
    if V.r == 0:
        return False
    x = _point(V, x)
    return project_onto_hull(V, x) == x


@dataclass(frozen=True)
class SeparatingHyperplane:
    """The tropical linear form ``min_j (a_j + x_j)`` with witness coordinate ``k``."""

    coefficients: tuple[Fraction, ...]
    k: int

    def values(self, y) -> list[Fraction]:
        return [a + c for a, c in zip(self.coefficients, normalize(y))]

    def attains_at_k(self, y) -> bool:
        vals = self.values(y)
        return vals[self.k] == min(vals)

    def strictly_separates(self, y) -> bool:
        """``a_k + y_k > min_j (a_j + y_j)``: ``y`` is on the far side."""
        vals = self.values(y)
        return vals[self.k] > min(vals)


@dataclass(frozen=True)
class Inside:
    lambdas: tuple[Fraction, ...]

    inside = True


@dataclass(frozen=True)
class Outside:
    hyperplane: SeparatingHyperplane
    epsilon: Fraction

    inside = False


HullCertificate = Union[Inside, Outside]


def separate(V, x) -> HullCertificate:
    """Either the coefficients writing ``x`` as a combination of ``V`` or a separating hyperplane.

    The separator takes the smallest coordinate ``k`` whose type set is
    empty and ``ε`` half the smallest slack ``v_ik + λ_i - x_k``.
    """
    V = _config(V)
    x = _point(V, x)
    lam = lambda_coeffs(V, x)
    comb = mat_vec_left(lam, V)
    if ProjectivePoint(comb) == x:
        return Inside(lambdas=lam)
    k = next(j for j in range(V.n) if comb[j] != x[j])
    slack = min(V.rows[i][k] + lam[i] - x[k] for i in range(V.r))
    assert slack > 0
    eps = slack / 2
    coeffs = tuple(-x[j] - eps if j == k else -x[j] for j in range(V.n))
    return Outside(hyperplane=SeparatingHyperplane(coeffs, k), epsilon=eps)


def on_hyperplane(coefficients: Sequence, x) -> bool:
    """True if the minimum of ``a_j + x_j`` is attained at least twice."""
    vals = sorted(as_rational(a) + c for a, c in zip(coefficients, normalize(x)))
    return len(vals) >= 2 and vals[0] == vals[1]


def caratheodory_reduce(V, a: Sequence, x=None) -> tuple[int, ...]:
    """Indices of at most ``n`` generators that already produce ``x = ⊕ a_i ⊙ v_i``.

    For each coordinate the smallest index attaining the minimum is kept.
    """
    V = _config(V)
    a = tuple(as_rational(c) for c in a)
    raw = mat_vec_left(a, V)
    if x is not None and normalize(x) != ProjectivePoint(raw):
        raise TropicalError("x is not the tropical combination of V with coefficients a")
    chosen = set()
    for j in range(V.n):
        chosen.add(next(i for i in range(V.r) if a[i] + V.rows[i][j] == raw[j]))
    return tuple(sorted(chosen))


def minimal_generator_indices(V, order: Iterable[int] | None = None) -> tuple[int, ...]:
    """Indices of the rows kept by :func:`minimal_generators`, ascending."""
    V = _config(V)
    alive = list(range(V.r))
    visit = list(range(V.r)) if order is None else list(order)
    if sorted(visit) != list(range(V.r)):
        raise TropicalError("order must be a permutation of the generator indices")
    for i in visit:
        others = [k for k in alive if k != i]
        if others and contains(V.subset(others), V.rows[i]):
            alive = others
    return tuple(alive)


def minimal_generators(V, order: Iterable[int] | None = None) -> Configuration:
    """The unique minimal generating set of ``tconv(V)``.

    Generators are visited in ``order`` (ascending by default) and dropped
    when the remaining ones still generate them.  Survivors keep their
    original relative order.
    """
    V = _config(V)
    return V.subset(minimal_generator_indices(V, order))


def intersect_polytopes(V, W) -> Configuration:
    """A minimal generating set of ``tconv(V) ∩ tconv(W)``.

    The maximal bounded cells of both complexes are intersected pairwise as
    systems of difference inequalities; the ordinary vertices of the pieces
    generate the intersection.  Returns an empty configuration when the two
    polytopes are disjoint.
    """
    from .cells import enumerate_complex, polyhedron_vertices

    V = _config(V)
    W = _config(W)
    if V.n != W.n:
        raise TropicalError("polytopes live in different dimensions")
    left = enumerate_complex(V, bounded_only=True).maximal_cells()
    right = enumerate_complex(W, bounded_only=True).maximal_cells()
    points: set[ProjectivePoint] = set()
    for X in left:
        for Y in right:
            verts, rays = polyhedron_vertices(X.inequalities + Y.inequalities, V.n)
            assert not rays
            points.update(verts)
    if not points:
        return Configuration.empty(V.n)
    return minimal_generators(Configuration(sorted(points)))
