"""The envelope polyhedron ``{(y, z) : y_i + z_j <= v_ij}`` of a configuration.

The polyhedron lives in ``R^{r+n}`` modulo ``(1,...,1,-1,...,-1)``; we fix
the gauge ``z_0 = 0`` so it becomes a pointed polyhedron in ``R^{r+n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .core import Configuration, TropicalError
from .polyhedra import enumerate_faces, v_representation

__all__ = [
    "DEFAULT_SIZE_LIMIT",
    "EnvelopeFace",
    "EnvelopePolyhedron",
    "SizeLimitError",
    "bipartite_components",
    "build_envelope",
]

#: Maximum number of matrix entries ``r * n`` accepted by default.
DEFAULT_SIZE_LIMIT = 64


class SizeLimitError(TropicalError):
    """The instance is larger than the configured enumeration limit."""


Pair = tuple[int, int]


def bipartite_components(pairs, r: int, n: int) -> int:
    """Connected components of the graph on ``r + n`` nodes with edges ``pairs``."""
    parent = list(range(r + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comps = r + n
    for i, j in pairs:
        a, b = find(i), find(r + j)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps


@dataclass(frozen=True)
class EnvelopeFace:
    """A face of the envelope polyhedron.

    ``tight`` holds the pairs ``(i, j)`` with ``y_i + z_j = v_ij`` on the
    whole face; ``vertices`` and ``rays`` index into the parent polyhedron.
    """

    tight: frozenset[Pair]
    vertices: tuple[int, ...]
    rays: tuple[int, ...]
    dimension: int

    @property
    def bounded(self) -> bool:
        return not self.rays

    def type_sets(self, n: int) -> tuple[frozenset[int], ...]:
        """``S_j = {i : (i, j) tight}`` for each coordinate ``j``."""
        cols: list[set[int]] = [set() for _ in range(n)]
        for i, j in self.tight:
            cols[j].add(i)
        return tuple(frozenset(c) for c in cols)


@dataclass(frozen=True)
class EnvelopePolyhedron:
    configuration: Configuration
    vertices: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]
    vertex_tight: tuple[frozenset[Pair], ...]
    rays: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]
    ray_tight: tuple[frozenset[Pair], ...]
    _vrep: object = field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return self.configuration.r

    @property
    def n(self) -> int:
        return self.configuration.n

    @property
    def dimension(self) -> int:
        return self.r + self.n - 1

    def _face(self, raw) -> EnvelopeFace:
        n = self.n
        tight = frozenset(divmod(c, n) for c in raw.tight)
        dim = bipartite_components(tight, self.r, n) - 1
        return EnvelopeFace(
            tight=tight,
            vertices=tuple(sorted(raw.vertices)),
            rays=tuple(sorted(raw.rays)),
            dimension=dim,
        )

    @cached_property
    def bounded_faces(self) -> tuple[EnvelopeFace, ...]:
        """Bounded faces; these mirror the bounded cells of the tropical complex."""
        raw = enumerate_faces(self._vrep, bounded_only=True)
        return tuple(self._face(f) for f in raw)

    @cached_property
    def covering_faces(self) -> tuple[EnvelopeFace, ...]:
        """Faces on which every row index ``i`` is tight for some ``j``.

        These are exactly the faces met by the graph of ``z -> V ⊙ (-z)`` and
        correspond to all cells (bounded or not) of the decomposition.
        """
        n, r = self.n, self.r
        rows = set(range(r))

        def covers(tight_ids):
            return {c // n for c in tight_ids} >= rows

        raw = enumerate_faces(self._vrep, keep=covers)
        return tuple(self._face(f) for f in raw)

    def lift(self, z) -> tuple[Fraction, ...]:
        """The unique ``y`` with ``(y, z)`` on the covering faces: ``V ⊙ (-z)``."""
        return tuple(min(v - c for v, c in zip(row, z)) for row in self.configuration.rows)


def build_envelope(V: Configuration, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> EnvelopePolyhedron:
    """Enumerate vertices and rays of the envelope polyhedron of ``V``.

    Each vertex carries its tight set ``{(i, j) : y_i + z_j = v_ij}``.
    """
    if not isinstance(V, Configuration):
        V = Configuration(V)
    r, n = V.shape
    if r == 0:
        raise TropicalError("configuration has no generators")
    if size_limit is not None and r * n > size_limit:
        raise SizeLimitError(f"{r}x{n} instance exceeds size limit {size_limit} (r*n)")
    dim = r + n - 1
    A, b = [], []
    for i in range(r):
        for j in range(n):
            row = [0] * dim
            row[i] = 1
            if j:
                row[r + j - 1] = 1
            A.append(row)
            b.append(V.rows[i][j])
    vrep = v_representation(A, b)

    def split(u):
        return tuple(u[:r]), (Fraction(0),) + tuple(u[r:])

    def pairs(tight):
        return frozenset(divmod(c, n) for c in tight)

    return EnvelopePolyhedron(
        configuration=V,
        vertices=tuple(split(u) for u in vrep.vertices),
        vertex_tight=tuple(pairs(t) for t in vrep.vertex_tight),
        rays=tuple(split(u) for u in vrep.rays),
        ray_tight=tuple(pairs(t) for t in vrep.ray_tight),
        _vrep=vrep,
    )
