"""Exact vertex/ray enumeration and face enumeration for small polyhedra.

The polyhedron ``{x : A x <= b}`` is homogenized to the cone
``{(x, t) : A x - b t <= 0, t >= 0}`` whose extreme rays are computed with
the double description method (Motzkin's incremental algorithm with the
combinatorial adjacency test).  All arithmetic is on Python integers: rows
are scaled to integers and every generated ray is reduced by its gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

__all__ = ["VRep", "enumerate_faces", "rank", "v_representation"]


def _primitive(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g > 1:
        return tuple(c // g for c in vec)
    return tuple(vec)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for c in row:
        den = lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in row]


def _dd_cone(rows: list[list[int]], dim: int):
    """Extreme rays of ``{u : h . u <= 0 for h in rows}``.

    Returns ``(rays, masks, lineality)`` where ``masks[k]`` has bit ``c`` set
    iff ray ``k`` lies on the hyperplane of row ``c``.
    """
    lineality: list[tuple[int, ...]] = [
        tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    seen_bits = 0
    for idx, h in enumerate(rows):
        bit = 1 << idx
        pivot = None
        for pos, l in enumerate(lineality):
            s = _dot(h, l)
            if s:
                pivot = (pos, l, s)
                break
        if pivot is not None:
            pos, l0, c = pivot
            if c > 0:
                l0 = tuple(-x for x in l0)
                c = -c
            new_lin = []
            for k, l in enumerate(lineality):
                if k == pos:
                    continue
                s = _dot(h, l)
                if s:
                    l = _primitive([c * a - s * b for a, b in zip(l, l0)])
                new_lin.append(l)
            lineality = new_lin
            new_rays = []
            for ray in rays:
                s = _dot(h, ray)
                if s:
                    ray = _primitive([-c * a + s * b for a, b in zip(ray, l0)])
                new_rays.append(ray)
            rays = new_rays + [_primitive(list(l0))]
            masks = [m | bit for m in masks] + [seen_bits]
            seen_bits |= bit
            continue

        values = [_dot(h, ray) for ray in rays]
        pos_ids = [k for k, s in enumerate(values) if s > 0]
        if not pos_ids:
            masks = [m | bit if values[k] == 0 else m for k, m in enumerate(masks)]
            seen_bits |= bit
            continue
        neg_ids = [k for k, s in enumerate(values) if s < 0]
        keep = [k for k, s in enumerate(values) if s <= 0]
        new_rays = [rays[k] for k in keep]
        new_masks = [masks[k] | bit if values[k] == 0 else masks[k] for k in keep]
        for p in pos_ids:
            mp, sp = masks[p], values[p]
            for q in neg_ids:
                common = mp & masks[q]
                adjacent = True
                for t, mt in enumerate(masks):
                    if t != p and t != q and common & mt == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sq = values[q]
                ray = _primitive([sp * b - sq * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
        seen_bits |= bit
    return rays, masks, lineality


@dataclass(frozen=True)
class VRep:
    """Generators of ``{x : A x <= b}`` with their sets of tight rows."""

    vertices: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[Fraction, ...], ...]
    lineality: tuple[tuple[Fraction, ...], ...]
    vertex_tight: tuple[frozenset[int], ...]
    ray_tight: tuple[frozenset[int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def dimension(self) -> int:
        """Affine dimension computed from the generators (-1 when empty)."""
        if not self.vertices:
            return -1
        base = self.vertices[0]
        vectors = [tuple(a - b for a, b in zip(v, base)) for v in self.vertices[1:]]
        vectors.extend(self.rays)
        vectors.extend(self.lineality)
        return rank(vectors)


def _bits(mask: int) -> frozenset[int]:
    out = []
    idx = 0
    while mask:
        if mask & 1:
            out.append(idx)
        mask >>= 1
        idx += 1
    return frozenset(out)


def v_representation(A: Sequence[Sequence], b: Sequence) -> VRep:
    """Vertices, extreme rays and lineality of ``{x : A x <= b}``.

    Vertices are exact; rays and lineality vectors are primitive integer
    directions.  An empty polyhedron returns no vertices.
    """
    m = len(A)
    if m != len(b):
        raise ValueError("A and b have different numbers of rows")
    if m == 0:
        raise ValueError("need at least one inequality to fix the dimension")
    dim = len(A[0])
    rows = [[0] * dim + [-1]]
    for a_row, b_val in zip(A, b):
        if len(a_row) != dim:
            raise ValueError("ragged constraint matrix")
        rows.append(_integer_row(list(a_row) + [-Fraction(b_val)]))
    rays, masks, lineality = _dd_cone(rows, dim + 1)
    vertices, vertex_tight, dirs, dir_tight = [], [], [], []
    for ray, mask in zip(rays, masks):
        t = ray[-1]
        tight = _bits(mask >> 1)
        if t > 0:
            vertices.append(tuple(Fraction(c, t) for c in ray[:-1]))
            vertex_tight.append(tight)
        else:
            dirs.append(tuple(Fraction(c) for c in ray[:-1]))
            dir_tight.append(tight)
    lin = tuple(tuple(Fraction(c) for c in l[:-1]) for l in lineality)
    if not vertices:
        return VRep((), (), (), (), ())
    order = sorted(range(len(vertices)), key=lambda k: vertices[k])
    rorder = sorted(range(len(dirs)), key=lambda k: dirs[k])
    return VRep(
        vertices=tuple(vertices[k] for k in order),
        rays=tuple(dirs[k] for k in rorder),
        lineality=lin,
        vertex_tight=tuple(vertex_tight[k] for k in order),
        ray_tight=tuple(dir_tight[k] for k in rorder),
    )


def rank(vectors: Iterable[Sequence]) -> int:
    """Rank of a list of rational vectors by fraction-free elimination."""
    mat = [_integer_row(v) for v in vectors]
    mat = [row for row in mat if any(row)]
    if not mat:
        return 0
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = list(_primitive([p[c] * a - f * b for a, b in zip(mat[i], p)]))
        r += 1
        if r == len(mat):
            break
    return r


@dataclass(frozen=True)
class Face:
    """A nonempty face: the generators it contains and the rows tight on it."""

    tight: frozenset[int]
    vertices: frozenset[int]
    rays: frozenset[int]


def enumerate_faces(
    vrep: VRep,
    *,
    bounded_only: bool = False,
    keep: Callable[[frozenset[int]], bool] | None = None,
) -> list[Face]:
    """All nonempty faces of a pointed polyhedron, by closure under joins.

    ``keep`` prunes by tight set; it must describe a set of faces closed
    under taking subfaces (for example "every generator row is tight
    somewhere"), otherwise faces above a pruned one may be missed.
    """
    if vrep.lineality:
        raise ValueError("face enumeration needs a pointed polyhedron")
    nv = len(vrep.vertices)
    masks = []
    for tight in list(vrep.vertex_tight) + list(vrep.ray_tight):
        mask = 0
        for c in tight:
            mask |= 1 << c
        masks.append(mask)
    ray_masks = masks[nv:]
    ngen = len(masks)

    # a face is determined by its tight set, and joining with a generator
    # only intersects tight sets, so the search is keyed on tight sets
    seen: set[int] = set()
    order: list[int] = []
    frontier = []

    def admit(t: int) -> None:
        seen.add(t)
        if bounded_only and any(m & t == t for m in ray_masks):
            return
        if keep is not None and not keep(_bits(t)):
            return
        order.append(t)
        frontier.append(t)

    for v in range(nv):
        if masks[v] not in seen:
            admit(masks[v])
    join_with = masks[:nv] if bounded_only else masks
    while frontier:
        current, frontier = frontier, []
        for t in current:
            for m in join_with:
                u = t & m
                if u != t and u not in seen:
                    admit(u)
    found: dict[int, int] = {}
    for t in order:
        mem = 0
        for g in range(ngen):
            if masks[g] & t == t:
                mem |= 1 << g
        found[mem] = t
    faces = []
    for mem, t in found.items():
        verts = frozenset(g for g in range(nv) if mem >> g & 1)
        rays = frozenset(g - nv for g in range(nv, ngen) if mem >> g & 1)
        faces.append(Face(tight=_bits(t), vertices=verts, rays=rays))
    faces.sort(key=lambda f: (len(f.vertices) + len(f.rays), sorted(f.vertices), sorted(f.rays)))
    return faces
