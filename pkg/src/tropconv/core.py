"""Exact min-plus arithmetic on rational vectors and matrices.

Scalars are :class:`fractions.Fraction`.  Points of tropical projective
space are stored with their first coordinate equal to zero.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Configuration",
    "ProjectivePoint",
    "TropicalError",
    "as_rational",
    "mat_vec_left",
    "mat_vec_right",
    "normalize",
    "proj_distance",
    "t_add",
    "t_comb",
    "t_matmul",
    "t_mul",
]


class TropicalError(ValueError):
    """Base class for domain errors raised by this package."""


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions, other exact rationals and strings such as
    ``"0.25"`` or ``"1/3"``.  Floats are rejected: every predicate built on
    top of this module is a tie test and must be decided exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise TropicalError(f"cannot parse {value!r} as a rational") from exc
    if isinstance(value, float):
        raise TypeError(
            f"float {value!r} rejected; pass an int, Fraction or decimal string"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def t_add(a, b) -> Fraction:
    """Tropical sum: the minimum."""
    return min(as_rational(a), as_rational(b))


def t_mul(a, b) -> Fraction:
    """Tropical product: the ordinary sum."""
    return as_rational(a) + as_rational(b)


class ProjectivePoint:
    """A point of tropical projective space, first coordinate fixed to 0."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Iterable):
        values = tuple(as_rational(c) for c in coords)
        if not values:
            raise TropicalError("a projective point needs at least one coordinate")
        shift = values[0]
        self._coords = tuple(c - shift for c in values) if shift else values

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self._coords

    @property
    def dim(self) -> int:
        """Length of the coordinate vector (the ambient ``n``)."""
        return len(self._coords)

    def __len__(self) -> int:
        return len(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __getitem__(self, idx):
        return self._coords[idx]

    def __eq__(self, other) -> bool:
        if isinstance(other, ProjectivePoint):
            return self._coords == other._coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coords)

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return self._coords < other._coords

    def __repr__(self) -> str:
        return "ProjectivePoint(({}))".format(", ".join(str(c) for c in self._coords))


def normalize(x: Iterable) -> ProjectivePoint:
    """Return the representative of ``x`` modulo ``(1, ..., 1)`` with x[0] == 0."""
    if isinstance(x, ProjectivePoint):
        return x
    return ProjectivePoint(x)


def _vector(x) -> tuple[Fraction, ...]:
    if isinstance(x, ProjectivePoint):
        return x.coords
    return tuple(as_rational(c) for c in x)


class Configuration:
    """An ordered ``r x n`` rational matrix whose rows are the generators.

    Rows are stored exactly as given; :meth:`point` returns the normalized
    projective point of a row.
    """

    __slots__ = ("_rows", "_n")

    def __init__(self, rows: Iterable[Iterable], n: int | None = None):
        data = tuple(_vector(row) for row in rows)
        if data:
            widths = {len(row) for row in data}
            if len(widths) != 1:
                raise TropicalError(f"ragged configuration, row lengths {sorted(widths)}")
            width = widths.pop()
            if n is not None and n != width:
                raise TropicalError(f"expected {n} columns, got {width}")
            n = width
        if n is None or n < 1:
            raise TropicalError("a configuration needs n >= 1 columns")
        self._rows = data
        self._n = n

    @classmethod
    def empty(cls, n: int) -> "Configuration":
        """A configuration with no generators (only as an intersection result)."""
        return cls((), n=n)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def r(self) -> int:
        return len(self._rows)

    @property
    def n(self) -> int:
        return self._n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.r, self.n)

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    def __getitem__(self, idx):
        return self._rows[idx]

    def point(self, i: int) -> ProjectivePoint:
        return ProjectivePoint(self._rows[i])

    def points(self) -> list[ProjectivePoint]:
        return [ProjectivePoint(row) for row in self._rows]

    def subset(self, indices: Iterable[int]) -> "Configuration":
        return Configuration([self._rows[i] for i in indices], n=self._n)

    def without(self, i: int) -> "Configuration":
        return self.subset(k for k in range(self.r) if k != i)

    def transpose(self) -> "Configuration":
        if not self._rows:
            raise TropicalError("cannot transpose an empty configuration")
        return Configuration(zip(*self._rows))

    def negated(self) -> "Configuration":
        return Configuration([[-v for v in row] for row in self._rows], n=self._n)

    def __eq__(self, other) -> bool:
        if isinstance(other, Configuration):
            return self._n == other._n and self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(",".join(str(v) for v in row) for row in self._rows)
        return f"Configuration([{body}])"


def _as_configuration(V) -> Configuration:
    return V if isinstance(V, Configuration) else Configuration(V)


def mat_vec_left(u: Sequence, V) -> tuple[Fraction, ...]:
    """Row vector times matrix: ``(u ⊙ V)_j = min_i (u_i + v_ij)``."""
    V = _as_configuration(V)
    u = _vector(u)
    if len(u) != V.r:
        raise TropicalError(f"vector of length {len(u)} does not match {V.r} rows")
    if V.r == 0:
        raise TropicalError("empty configuration")
    return tuple(min(u[i] + V.rows[i][j] for i in range(V.r)) for j in range(V.n))


def mat_vec_right(V, w: Sequence) -> tuple[Fraction, ...]:
    """Matrix times column vector: ``(V ⊙ w)_i = min_j (v_ij + w_j)``."""
    V = _as_configuration(V)
    w = _vector(w)
    if len(w) != V.n:
        raise TropicalError(f"vector of length {len(w)} does not match {V.n} columns")
    return tuple(min(v + c for v, c in zip(row, w)) for row in V.rows)


def t_comb(coeffs: Sequence, V) -> ProjectivePoint:
    """The tropical linear combination ``⊕_i coeffs_i ⊙ v_i`` as a projective point."""
    return ProjectivePoint(mat_vec_left(coeffs, V))


def t_matmul(A, B) -> tuple[tuple[Fraction, ...], ...]:
    """Tropical matrix product ``(A ⊙ B)_ij = min_k (a_ik + b_kj)``."""
    A = [_vector(row) for row in A]
    B = [_vector(row) for row in B]
    if not A or not B:
        raise TropicalError("empty matrix")
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise TropicalError("inner dimensions do not agree")
    cols = len(B[0])
    return tuple(
        tuple(min(row[k] + B[k][j] for k in range(inner)) for j in range(cols))
        for row in A
    )


def proj_distance(x, y) -> Fraction:
    """Infinity-norm distance on tropical projective space.

    ``max_{i<j} |x_i + y_j - x_j - y_i|``, which equals ``max(x - y) - min(x - y)``.
    """
    x = _vector(x)
    y = _vector(y)
    if len(x) != len(y):
        raise TropicalError("points live in different dimensions")
    diff = [a - b for a, b in zip(x, y)]
    return max(diff) - min(diff)
