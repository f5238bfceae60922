"""JSON documents for tropical complexes.

Rationals are written as canonical ``"p/q"`` strings (integers without a
denominator) and keys are sorted, so identical inputs give byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .cells import CellPolyhedron, CellType, Inequality, TropicalComplex, face_of
from .core import Configuration, ProjectivePoint, TropicalError

__all__ = [
    "DOCUMENT_VERSION",
    "CellRecord",
    "ComplexDocument",
    "DocumentError",
    "from_rational",
    "to_rational",
]

DOCUMENT_VERSION = "tropconv-complex/1"


class DocumentError(TropicalError):
    """A JSON document that does not describe a complex."""


def from_rational(q: Fraction) -> str:
    return str(q)


def to_rational(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(f"rational must be a string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"bad rational {text!r}") from None


def _vec_out(v) -> list[str]:
    return [from_rational(c) for c in v]


def _vec_in(v) -> tuple[Fraction, ...]:
    return tuple(to_rational(c) for c in v)


@dataclass(frozen=True)
class CellRecord:
    type: CellType
    dimension: int
    bounded: bool
    vertices: tuple[ProjectivePoint, ...]
    rays: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[Inequality, ...]

    @classmethod
    def from_cell(cls, cell: CellPolyhedron) -> "CellRecord":
        return cls(
            type=cell.type,
            dimension=cell.dimension,
            bounded=cell.bounded,
            vertices=cell.vertices,
            rays=cell.rays,
            inequalities=cell.inequalities,
        )

    def to_cell(self) -> CellPolyhedron:
        return CellPolyhedron(
            type=self.type,
            inequalities=self.inequalities,
            dimension=self.dimension,
            bounded=self.bounded,
            vertices=self.vertices,
            rays=self.rays,
        )

    def to_json(self) -> dict:
        return {
            "type": [list(s) for s in self.type.sets],
            "dimension": self.dimension,
            "bounded": self.bounded,
            "vertices": [_vec_out(v) for v in self.vertices],
            "rays": [_vec_out(r) for r in self.rays],
            "inequalities": [
                {"k": q.k, "j": q.j, "bound": from_rational(q.bound), "generator": q.generator}
                for q in self.inequalities
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CellRecord":
        try:
            return cls(
                type=CellType(tuple(tuple(int(i) for i in s) for s in data["type"])),
                dimension=int(data["dimension"]),
                bounded=bool(data["bounded"]),
                vertices=tuple(ProjectivePoint(_vec_in(v)) for v in data["vertices"]),
                rays=tuple(_vec_in(r) for r in data["rays"]),
                inequalities=tuple(
                    Inequality(int(q["k"]), int(q["j"]), to_rational(q["bound"]), int(q["generator"]))
                    for q in data["inequalities"]
                ),
            )
        except (KeyError, TypeError) as exc:
            raise DocumentError(f"malformed cell record: {exc}") from None


@dataclass(frozen=True)
class ComplexDocument:
    """Self-contained description of a (bounded or full) cell decomposition.

    ``face_pairs`` index into ``cells``: ``(a, b)`` means cell ``b`` is a
    proper face of cell ``a``.  ``dual_cells`` optionally lists the pair sets
    of the interior cells of the dual subdivision.
    """

    configuration: Configuration
    bounded_only: bool
    cells: tuple[CellRecord, ...]
    face_pairs: tuple[tuple[int, int], ...]
    f_vector: tuple[int, ...]
    dual_cells: tuple[tuple[tuple[int, int], ...], ...] | None = None
    version: str = DOCUMENT_VERSION

    @classmethod
    def from_complex(cls, cplx: TropicalComplex, dual_cells=None) -> "ComplexDocument":
        records = tuple(CellRecord.from_cell(c) for c in cplx.cells)
        index = {rec.type: k for k, rec in enumerate(records)}
        pairs = tuple(sorted((index[S], index[T]) for S, T in cplx.face_pairs))
        dual = None
        if dual_cells is not None:
            dual = tuple(sorted(tuple(sorted(cell.pairs)) for cell in dual_cells))
        return cls(
            configuration=cplx.configuration,
            bounded_only=cplx.bounded_only,
            cells=records,
            face_pairs=pairs,
            f_vector=tuple(cplx.f_vector()),
            dual_cells=dual,
        )

    def to_complex(self) -> TropicalComplex:
        return TropicalComplex(
            configuration=self.configuration,
            cells=tuple(rec.to_cell() for rec in self.cells),
            bounded_only=self.bounded_only,
        )

    def to_dict(self) -> dict:
        out = {
            "version": self.version,
            "configuration": [_vec_out(row) for row in self.configuration.rows],
            "bounded_only": self.bounded_only,
            "cells": [rec.to_json() for rec in self.cells],
            "face_pairs": [list(p) for p in self.face_pairs],
            "f_vector": list(self.f_vector),
        }
        if self.dual_cells is not None:
            out["dual_cells"] = [[list(p) for p in cell] for cell in self.dual_cells]
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ComplexDocument":
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        version = data.get("version")
        if version != DOCUMENT_VERSION:
            raise DocumentError(f"unsupported document version {version!r}")
        try:
            rows = [_vec_in(row) for row in data["configuration"]]
            dual = data.get("dual_cells")
            return cls(
                configuration=Configuration(rows),
                bounded_only=bool(data["bounded_only"]),
                cells=tuple(CellRecord.from_json(c) for c in data["cells"]),
                face_pairs=tuple((int(a), int(b)) for a, b in data["face_pairs"]),
                f_vector=tuple(int(k) for k in data["f_vector"]),
                dual_cells=None
                if dual is None
                else tuple(tuple((int(i), int(j)) for i, j in cell) for cell in dual),
                version=version,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed document: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "ComplexDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None
        return cls.from_dict(data)

    def verify(self) -> list[str]:
        """Re-check the document against itself; returns a list of problems.

        Every stored vertex must satisfy its cell's inequalities, every
        face pair must be a containment of types, boundedness must match the
        type, and the f-vector must match the cell dimensions.
        """
        problems = []
        for k, rec in enumerate(self.cells):
            for v in rec.vertices:
                bad = [q for q in rec.inequalities if not q.holds(v)]
                if bad:
                    problems.append(f"cell {k}: vertex {v} violates {bad[0]}")
            if rec.bounded != all(rec.type.sets):
                problems.append(f"cell {k}: bounded flag disagrees with its type")
            if rec.bounded and rec.rays:
                problems.append(f"cell {k}: bounded cell has rays")
        for a, b in self.face_pairs:
            if not (0 <= a < len(self.cells) and 0 <= b < len(self.cells)):
                problems.append(f"face pair ({a}, {b}) out of range")
            elif a == b or not face_of(self.cells[a].type, self.cells[b].type):
                problems.append(f"face pair ({a}, {b}) is not a type containment")
        counts = [0] * (max((rec.dimension for rec in self.cells), default=-1) + 1)
        for rec in self.cells:
            counts[rec.dimension] += 1
        if tuple(counts) != self.f_vector:
            problems.append(f"f-vector {list(self.f_vector)} does not match cells {counts}")
        return problems
