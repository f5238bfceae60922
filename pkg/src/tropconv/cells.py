"""Types, the polyhedra ``X_S`` and the cell decomposition induced by a configuration.

Generator and coordinate indices are 0-based throughout: the type
``({2},{1},{3})`` of the usual textbook example is written
``CellType.of([1], [0], [2])`` here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .core import Configuration, ProjectivePoint, TropicalError, as_rational, normalize
from .envelope import DEFAULT_SIZE_LIMIT, build_envelope
from .polyhedra import v_representation

__all__ = [
    "CellPolyhedron",
    "CellType",
    "Inequality",
    "TropicalComplex",
    "build_cell_from_inequalities",
    "cell_dimension",
    "cell_inequalities",
    "cell_vertices",
    "enumerate_complex",
    "face_of",
    "fan_type_of",
    "is_bounded",
    "type_graph",
    "type_of",
]


@dataclass(frozen=True, order=True)
class CellType:
    """An n-tuple ``(S_0, ..., S_{n-1})`` of sets of generator indices.

    Stored as sorted tuples so that equality, hashing and ordering are
    canonical (lexicographic on the sorted sets).
    """

    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(tuple(sorted(set(int(i) for i in s))) for s in self.sets)
        object.__setattr__(self, "sets", canon)

    @classmethod
    def of(cls, *sets: Iterable[int]) -> "CellType":
        return cls(tuple(tuple(s) for s in sets))

    @property
    def n(self) -> int:
        return len(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, j: int) -> tuple[int, ...]:
        return self.sets[j]

    def union(self, other: "CellType") -> "CellType":
        if self.n != other.n:
            raise TropicalError("types of different length")
        return CellType(tuple(set(a) | set(b) for a, b in zip(self.sets, other.sets)))

    def generators(self) -> set[int]:
        return {i for s in self.sets for i in s}

    def covers(self, r: int) -> bool:
        """True if every generator ``0..r-1`` appears in some ``S_j``."""
        return self.generators() >= set(range(r))

    def __str__(self) -> str:
        return "(" + ",".join("{" + ",".join(map(str, s)) + "}" for s in self.sets) + ")"


class Inequality(NamedTuple):
    """``x_k - x_j <= bound``, contributed by generator ``generator`` in ``S_j``."""

    k: int
    j: int
    bound: Fraction
    generator: int = -1

    def holds(self, x: Sequence) -> bool:
        return x[self.k] - x[self.j] <= self.bound

    def is_tight(self, x: Sequence) -> bool:
        return x[self.k] - x[self.j] == self.bound


@dataclass(frozen=True)
class CellPolyhedron:
    type: CellType
    inequalities: tuple[Inequality, ...]
    dimension: int
    bounded: bool
    vertices: tuple[ProjectivePoint, ...] = ()
    rays: tuple[tuple[Fraction, ...], ...] = ()

    def contains_point(self, x) -> bool:
        x = normalize(x)
        return all(ineq.holds(x) for ineq in self.inequalities)


def _config(V) -> Configuration:
    return V if isinstance(V, Configuration) else Configuration(V)


def _check_point(V: Configuration, x) -> ProjectivePoint:
    x = normalize(x)
    if x.dim != V.n:
        raise TropicalError(f"point of dimension {x.dim} vs configuration with n={V.n}")
    return x


def type_of(V, x) -> CellType:
    """``i in S_j`` iff ``v_ij - x_j`` attains ``min_k (v_ik - x_k)``."""
    V = _config(V)
    x = _check_point(V, x)
    sets: list[list[int]] = [[] for _ in range(V.n)]
    for i, row in enumerate(V.rows):
        diffs = [v - c for v, c in zip(row, x)]
        low = min(diffs)
        for j, d in enumerate(diffs):
            if d == low:
                sets[j].append(i)
    return CellType(tuple(tuple(s) for s in sets))


def fan_type_of(V, x) -> CellType:
    """Type of ``x`` read off the fans ``v_i - F``: the argmax of ``x - v_i``."""
    V = _config(V)
    x = _check_point(V, x)
    sets: list[list[int]] = [[] for _ in range(V.n)]
    for i, row in enumerate(V.rows):
        diffs = [c - v for v, c in zip(row, x)]
        high = max(diffs)
        for j, d in enumerate(diffs):
            if d == high:
                sets[j].append(i)
    return CellType(tuple(tuple(s) for s in sets))


def cell_inequalities(V, S: CellType) -> tuple[Inequality, ...]:
    """The difference inequalities cutting out ``X_S``."""
    V = _config(V)
    if S.n != V.n:
        raise TropicalError("type length does not match the configuration")
    out = []
    for j, members in enumerate(S.sets):
        for i in members:
            if not 0 <= i < V.r:
                raise TropicalError(f"generator index {i} out of range")
            row = V.rows[i]
            for k in range(V.n):
                if k != j:
                    out.append(Inequality(k, j, row[k] - row[j], i))
    return tuple(out)


def is_bounded(S: CellType) -> bool:
    return all(S.sets)


def type_graph(S: CellType) -> list[set[int]]:
    """Adjacency lists of the graph on coordinates joining j, k when S_j, S_k meet."""
    adj: list[set[int]] = [set() for _ in range(S.n)]
    owners: dict[int, list[int]] = {}
    for j, members in enumerate(S.sets):
        for i in members:
            owners.setdefault(i, []).append(j)
    for cols in owners.values():
        for a in cols:
            for b in cols:
                if a != b:
                    adj[a].add(b)
    return adj


def cell_dimension(S: CellType, n: int | None = None, r: int | None = None) -> int:
    """Dimension of ``X_S``: one less than the number of components of its type graph.

    ``S`` must be realized, i.e. every generator ``0..r-1`` appears somewhere
    (``r`` defaults to one more than the largest index present).
    """
    if n is not None and n != S.n:
        raise TropicalError("type length does not match n")
    present = S.generators()
    if r is None:
        r = max(present) + 1 if present else 0
    if not S.covers(r):
        raise TropicalError(f"type {S} leaves a generator uncovered")
    adj = type_graph(S)
    seen = [False] * S.n
    comps = 0
    for start in range(S.n):
        if seen[start]:
            continue
        comps += 1
        stack = [start]
        seen[start] = True
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    stack.append(b)
    return comps - 1


def face_of(S: CellType, T: CellType) -> bool:
    """True iff ``X_T`` is a face of ``X_S``, i.e. ``S_j ⊆ T_j`` for all j."""
    if S.n != T.n:
        return False
    return all(set(a) <= set(b) for a, b in zip(S.sets, T.sets))


def _gauge_system(inequalities: Sequence[Inequality], n: int):
    """Rewrite difference inequalities in the chart ``x_0 = 0``."""
    A, b = [], []
    for ineq in inequalities:
        row = [0] * (n - 1)
        if ineq.k:
            row[ineq.k - 1] += 1
        if ineq.j:
            row[ineq.j - 1] -= 1
        A.append(row)
        b.append(ineq.bound)
    return A, b


def polyhedron_vertices(inequalities: Sequence[Inequality], n: int):
    """Ordinary vertices and rays of a system of difference inequalities in TP^{n-1}."""
    if n == 1:
        return [ProjectivePoint((0,))], []
    if not inequalities:
        return [], []
    A, b = _gauge_system(inequalities, n)
    vrep = v_representation(A, b)
    verts = [ProjectivePoint((Fraction(0),) + v) for v in vrep.vertices]
    rays = [(Fraction(0),) + d for d in vrep.rays]
    if vrep.lineality:
        raise TropicalError("difference system has a lineality space")
    return verts, rays


def cell_vertices(V, S: CellType) -> list[ProjectivePoint]:
    """Ordinary vertices of the bounded polyhedron ``X_S`` (empty list if ``X_S`` is empty)."""
    V = _config(V)
    if not is_bounded(S):
        raise TropicalError(f"cell {S} is unbounded")
    verts, _ = polyhedron_vertices(cell_inequalities(V, S), V.n)
    return sorted(verts)


def _primitive_direction(d: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = 1
    for c in d:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in d]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return tuple(Fraction(c // g) for c in ints)


@dataclass(frozen=True)
class TropicalComplex:
    """Cells of the decomposition induced by ``configuration``.

    With ``bounded_only`` the cells are exactly the bounded ones, whose
    union is the tropical polytope.
    """

    configuration: Configuration
    cells: tuple[CellPolyhedron, ...]
    bounded_only: bool = True
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.type: c for c in self.cells})

    @property
    def n(self) -> int:
        return self.configuration.n

    @property
    def types(self) -> set[CellType]:
        return set(self._index)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, S) -> bool:
        return S in self._index

    def cell(self, S: CellType) -> CellPolyhedron:
        return self._index[S]

    @property
    def dimension(self) -> int:
        return max((c.dimension for c in self.cells), default=-1)

    def f_vector(self, bounded: bool | None = None) -> list[int]:
        """Cell counts by dimension, optionally restricted by boundedness."""
        cells = [c for c in self.cells if bounded is None or c.bounded == bounded]
        top = max((c.dimension for c in cells), default=-1)
        counts = [0] * (top + 1)
        for c in cells:
            counts[c.dimension] += 1
        return counts

    @cached_property
    def face_pairs(self) -> tuple[tuple[CellType, CellType], ...]:
        """Pairs ``(S, T)``, ``S != T``, with ``X_T`` a proper face of ``X_S``."""
        out = []
        types = sorted(self._index)
        for S in types:
            for T in types:
                if S != T and face_of(S, T):
                    out.append((S, T))
        return tuple(out)

    @cached_property
    def vertices(self) -> tuple[ProjectivePoint, ...]:
        """All ordinary vertices of the complex (the 0-cells)."""
        return tuple(sorted({v for c in self.cells for v in c.vertices}))

    def maximal_cells(self) -> list[CellPolyhedron]:
        """Cells that are not a proper face of another cell."""
        faces = {T for _S, T in self.face_pairs}
        return [c for c in self.cells if c.type not in faces]

    def locate(self, x) -> CellPolyhedron | None:
        """The cell whose relative interior contains ``x``, if present."""
        return self._index.get(type_of(self.configuration, x))


def enumerate_complex(
    V,
    bounded_only: bool = False,
    size_limit: int | None = DEFAULT_SIZE_LIMIT,
) -> TropicalComplex:
    """Cell decomposition of TP^{n-1} induced by ``V``.

    Faces of the envelope polyhedron are enumerated exactly and each is
    labelled by its tight pairs; projection to the z-coordinates gives the
    cell.  With ``bounded_only`` only the bounded cells are kept.
    """
    V = _config(V)
    if V.r == 0:
        raise TropicalError("configuration has no generators")
    env = build_envelope(V, size_limit=size_limit)
    faces = env.bounded_faces if bounded_only else env.covering_faces
    cells = []
    for face in faces:
        S = CellType(face.type_sets(V.n))
        verts = tuple(sorted({ProjectivePoint(env.vertices[k][1]) for k in face.vertices}))
        rays = tuple(sorted({_primitive_direction(env.rays[k][1]) for k in face.rays}))
        dim = cell_dimension(S, V.n, V.r)
        if dim != face.dimension:
            raise AssertionError(f"dimension mismatch for {S}: {dim} vs {face.dimension}")
        cells.append(
            CellPolyhedron(
                type=S,
                inequalities=cell_inequalities(V, S),
                dimension=dim,
                bounded=is_bounded(S),
                vertices=verts,
                rays=rays,
            )
        )
    cells.sort(key=lambda c: (c.dimension, c.type))
    return TropicalComplex(configuration=V, cells=tuple(cells), bounded_only=bounded_only)


def build_cell_from_inequalities(system: Iterable, n: int) -> Configuration:
    """``n`` generators whose cell of type ``({0}, {1}, ..., {n-1})`` is the given polytope.

    ``system`` holds triples ``(k, j, c)`` meaning ``x_k - x_j <= c``.  The
    generator matrix has ``v_jk = c`` and zero diagonal; pairs without an
    inequality get a constant large enough to be redundant on any bounded
    polytope cut out by the rest.
    """
    bounds: dict[tuple[int, int], Fraction] = {}
    for item in system:
        k, j, c = item[0], item[1], as_rational(item[2])
        if not (0 <= k < n and 0 <= j < n) or k == j:
            raise TropicalError(f"bad inequality indices ({k}, {j}) for n={n}")
        key = (j, k)
        bounds[key] = min(c, bounds[key]) if key in bounds else c
    spread = max((abs(c) for c in bounds.values()), default=Fraction(0))
    big = 1 + (n - 1) * spread
    rows = []
    for j in range(n):
        rows.append([Fraction(0) if k == j else bounds.get((j, k), big) for k in range(n)])
    return Configuration(rows)
