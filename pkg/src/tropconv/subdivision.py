"""Regular subdivisions of a product of simplices and tropical polytope duality.

A configuration ``V`` (``r x n``) induces a regular subdivision of
``Δ_{r-1} x Δ_{n-1}``: a set of vertex pairs ``(i, j)`` is a cell exactly
when the equations ``y_i + z_j = v_ij`` cut out a face of the envelope
polyhedron.  Interior cells are the tight sets of bounded faces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .cells import CellType, TropicalComplex, enumerate_complex, face_of
from .core import (
    Configuration,
    ProjectivePoint,
    TropicalError,
    as_rational,
    mat_vec_left,
    mat_vec_right,
)
from .envelope import (
    DEFAULT_SIZE_LIMIT,
    EnvelopePolyhedron,
    bipartite_components,
    build_envelope,
)

__all__ = [
    "DualityTransport",
    "EnvelopePolyhedron",
    "GenericityReport",
    "MAX_DET_SIZE",
    "SubdivisionCell",
    "build_envelope",
    "dual_subdivision",
    "duality_transport",
    "generic_f_vector",
    "is_generic",
    "is_triangulation",
    "minor_scan",
    "random_generic_configuration",
    "trop_det",
]

#: Largest matrix whose tropical determinant is computed by brute force.
MAX_DET_SIZE = 8


def trop_det(M: Sequence[Sequence]) -> tuple[Fraction, bool]:
    """Tropical determinant ``min_σ Σ_i M[i][σ(i)]`` and whether it is attained twice."""
    rows = [tuple(as_rational(c) for c in row) for row in M]
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows):
        raise TropicalError("tropical determinant needs a non-empty square matrix")
    if k > MAX_DET_SIZE:
        raise TropicalError(f"{k}x{k} exceeds the exhaustive limit {MAX_DET_SIZE}")
    best = None
    count = 0
    for perm in itertools.permutations(range(k)):
        total = sum(rows[i][perm[i]] for i in range(k))
        if best is None or total < best:
            best, count = total, 1
        elif total == best:
            count += 1
    return best, count >= 2


@dataclass(frozen=True)
class SubdivisionCell:
    """A cell of the subdivision, as a set of vertex pairs ``(i, j)``."""

    pairs: frozenset[tuple[int, int]]

    @property
    def rows(self) -> set[int]:
        return {i for i, _ in self.pairs}

    @property
    def cols(self) -> set[int]:
        return {j for _, j in self.pairs}

    def is_simplex(self) -> bool:
        """The points ``(e_i, e_j)`` are affinely independent iff the pair graph is a forest."""
        rows = sorted(self.rows)
        cols = sorted(self.cols)
        ri = {i: a for a, i in enumerate(rows)}
        ci = {j: a for a, j in enumerate(cols)}
        local = [(ri[i], ci[j]) for i, j in self.pairs]
        comps = bipartite_components(local, len(rows), len(cols))
        return len(self.pairs) == len(rows) + len(cols) - comps

    def type_sets(self, n: int) -> CellType:
        """The type ``S_j = {i : (i, j) in cell}`` of the matching tropical cell."""
        sets: list[list[int]] = [[] for _ in range(n)]
        for i, j in self.pairs:
            sets[j].append(i)
        return CellType(tuple(tuple(s) for s in sets))

    def transpose(self) -> "SubdivisionCell":
        return SubdivisionCell(frozenset((j, i) for i, j in self.pairs))


def dual_subdivision(V, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> frozenset[SubdivisionCell]:
    """Interior cells of the regular subdivision induced by ``V`` (all dimensions)."""
    env = V if isinstance(V, EnvelopePolyhedron) else build_envelope(V, size_limit=size_limit)
    return frozenset(SubdivisionCell(face.tight) for face in env.bounded_faces)


def is_triangulation(V, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> bool:
    """True iff every interior cell of the induced subdivision is a simplex."""
    return all(cell.is_simplex() for cell in dual_subdivision(V, size_limit))


def minor_scan(V) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First tropically singular ``k x k`` submatrix, ``2 <= k <= min(r, n)``.

    Scans by increasing ``k`` then lexicographic row and column sets.
    Returns ``(rows, cols)`` or ``None`` when no minor is singular.
    """
    V = V if isinstance(V, Configuration) else Configuration(V)
    for k in range(2, min(V.r, V.n) + 1):
        for rows in itertools.combinations(range(V.r), k):
            for cols in itertools.combinations(range(V.n), k):
                sub = [[V.rows[i][j] for j in cols] for i in rows]
                if trop_det(sub)[1]:
                    return rows, cols
    return None


@dataclass(frozen=True)
class GenericityReport:
    is_generic: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    triangulation: bool | None = None

    @property
    def consistent(self) -> bool:
        return self.triangulation is None or self.triangulation == self.is_generic


def is_generic(V, check_subdivision: bool = True, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> GenericityReport:
    """Genericity of ``r >= n`` points: no tropically singular square submatrix.

    With ``check_subdivision`` the induced subdivision is also computed and
    its triangulation test recorded next to the minor scan.  For ``r < n``
    pass ``V.transpose()``.
    """
    V = V if isinstance(V, Configuration) else Configuration(V)
    if V.r < V.n:
        raise TropicalError(f"genericity test needs r >= n (got {V.r}x{V.n}); use the transpose")
    witness = minor_scan(V)
    tri = is_triangulation(V, size_limit) if check_subdivision else None
    return GenericityReport(is_generic=witness is None, witness=witness, triangulation=tri)


def generic_f_vector(r: int, n: int) -> list[int]:
    """Face numbers of a generic tropical complex of ``r`` points in TP^{n-1}."""
    if r < 1 or n < 1:
        raise TropicalError("r and n must be positive")
    out = []
    for k in range(min(r, n)):
        out.append(factorial(r + n - k - 2) // (factorial(r - k - 1) * factorial(n - k - 1) * factorial(k)))
    return out


def random_generic_configuration(
    r: int,
    n: int,
    rng: random.Random,
    low: int = -20,
    high: int = 20,
    max_tries: int = 1000,
) -> Configuration:
    """Random integer configuration, redrawn until its minor scan certifies genericity."""
    for _ in range(max_tries):
        V = Configuration([[0] + [rng.randint(low, high) for _ in range(n - 1)] for _ in range(r)])
        if minor_scan(V) is None:
            return V
    raise TropicalError(f"no generic {r}x{n} configuration found in {max_tries} draws")


@dataclass
class DualityTransport:
    """The isomorphism between the complexes of the rows and of the columns of ``M``."""

    matrix: Configuration
    row_complex: TropicalComplex
    column_complex: TropicalComplex
    cell_map: dict[CellType, CellType] = field(default_factory=dict)

    def forward(self, z) -> ProjectivePoint:
        """``z -> M ⊙ (-z)``, from TP^{n-1} to TP^{r-1}."""
        return ProjectivePoint(mat_vec_right(self.matrix, [-c for c in z]))

    def backward(self, y) -> ProjectivePoint:
        """``y -> (-y) ⊙ M``, from TP^{r-1} to TP^{n-1}."""
        return ProjectivePoint(mat_vec_left([-c for c in y], self.matrix))

    def check(self) -> list[str]:
        """Verify the two complexes are isomorphic via the maps; returns problems found."""
        problems = []
        rows, cols = self.row_complex, self.column_complex
        if sorted(self.cell_map.values()) != sorted(cols.types):
            problems.append("cell map is not onto the column complex")
        if set(self.cell_map) != rows.types:
            problems.append("cell map does not cover the row complex")
        for S, T in rows.face_pairs:
            if not face_of(self.cell_map[S], self.cell_map[T]):
                problems.append(f"face {S} < {T} not preserved")
        mapped_pairs = {(self.cell_map[S], self.cell_map[T]) for S, T in rows.face_pairs}
        if mapped_pairs != set(cols.face_pairs):
            problems.append("face posets differ")
        for cell in rows:
            image = cols.cell(self.cell_map[cell.type]) if self.cell_map.get(cell.type) in cols else None
            for z in cell.vertices:
                y = self.forward(z)
                if self.backward(y) != z:
                    problems.append(f"backward(forward({z})) != {z}")
                if image is not None and not image.contains_point(y):
                    problems.append(f"forward({z}) leaves the matching cell")
                if image is not None and y not in image.vertices:
                    problems.append(f"forward({z}) is not a vertex of the matching cell")
        if rows.f_vector() != cols.f_vector():
            problems.append("f-vectors differ")
        return problems

    def is_isomorphism(self) -> bool:
        return not self.check()


def _transpose_type(S: CellType, r: int) -> CellType:
    sets: list[list[int]] = [[] for _ in range(r)]
    for j, members in enumerate(S.sets):
        for i in members:
            sets[i].append(j)
    return CellType(tuple(tuple(s) for s in sets))


def duality_transport(M, size_limit: int | None = DEFAULT_SIZE_LIMIT) -> DualityTransport:
    """Complexes of the rows and of the columns of ``M`` with the map between them."""
    M = M if isinstance(M, Configuration) else Configuration(M)
    rows = enumerate_complex(M, bounded_only=True, size_limit=size_limit)
    cols = enumerate_complex(M.transpose(), bounded_only=True, size_limit=size_limit)
    cell_map = {S: _transpose_type(S, M.r) for S in rows.types}
    return DualityTransport(matrix=M, row_complex=rows, column_complex=cols, cell_map=cell_map)
