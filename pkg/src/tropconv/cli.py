"""Command-line entry point.

Exit codes: 0 on success, 1 when the input is rejected for mathematical or
format reasons (non-metric input, parse errors, size limits), 2 on usage
errors (bad flags, unreadable files).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cells import enumerate_complex, type_of
from .core import Configuration, TropicalError, normalize
from .document import ComplexDocument, from_rational
from .envelope import DEFAULT_SIZE_LIMIT
from .hull import Inside, lambda_coeffs, minimal_generator_indices, project_onto_hull, separate
from .matrixio import MatrixParseError, parse_matrix, parse_rational
from .phylo import four_point_condition, is_tree_metric, tight_span
from .subdivision import (
    dual_subdivision,
    duality_transport,
    generic_f_vector,
    is_generic,
    random_generic_configuration,
)
from .svg import render_svg

__all__ = ["COMMANDS", "JobSpec", "UsageError", "build_parser", "main", "run"]

COMMANDS = ("hull", "member", "separate", "complex", "dual", "generic", "tree-check", "tight-span", "fvector")


class UsageError(Exception):
    """Invocation problem (exit code 2)."""


@dataclass
class JobSpec:
    command: str
    input: str | None = None
    output: str | None = None
    bounded_only: bool = False
    svg: str | None = None
    seed: int | None = None
    size_limit: int | None = DEFAULT_SIZE_LIMIT
    point: tuple[Fraction, ...] | None = None
    rows: int | None = None
    cols: int | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")


def _q(v) -> list[str]:
    return [from_rational(c) for c in v]


def _type_json(S) -> list[list[int]]:
    return [list(s) for s in S.sets]


def _read_input(job: JobSpec) -> str:
    if job.input is None or job.input == "-":
        return sys.stdin.read()
    try:
        return Path(job.input).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {job.input}: {exc.strerror}") from None


def _configuration(job: JobSpec) -> Configuration:
    if job.input is None and job.rows is not None:
        if job.cols is None:
            raise UsageError("--rows needs --cols")
        rng = random.Random(job.seed if job.seed is not None else 0)
        return random_generic_configuration(job.rows, job.cols, rng)
    return parse_matrix(_read_input(job))


def _need_point(job: JobSpec, n: int):
    if job.point is None:
        raise UsageError(f"{job.command} needs --point")
    if len(job.point) != n:
        raise TropicalError(f"point has {len(job.point)} coordinates, configuration has n={n}")
    return normalize(job.point)


def _write_svg(job: JobSpec, cplx) -> None:
    if job.svg is None:
        return
    text = render_svg(cplx, unbounded=not cplx.bounded_only)
    try:
        Path(job.svg).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {job.svg}: {exc.strerror}") from None


def _hull(job):
    V = _configuration(job)
    kept = list(minimal_generator_indices(V))
    W = V.subset(kept)
    if job.svg:
        _write_svg(job, enumerate_complex(V, bounded_only=True, size_limit=job.size_limit))
    return {
        "configuration": [_q(r) for r in V.rows],
        "minimal_generators": [_q(r) for r in W.rows],
        "kept": kept,
    }


def _separator_json(cert) -> dict:
    h = cert.hyperplane
    return {"coefficients": _q(h.coefficients), "k": h.k, "epsilon": from_rational(cert.epsilon)}


def _member(job):
    V = _configuration(job)
    x = _need_point(job, V.n)
    cert = separate(V, x)
    out = {
        "point": _q(x),
        "inside": cert.inside,
        "projection": _q(project_onto_hull(V, x)),
        "type": _type_json(type_of(V, x)),
    }
    if not cert.inside:
        out["separator"] = _separator_json(cert)
    return out


def _separate(job):
    V = _configuration(job)
    x = _need_point(job, V.n)
    cert = separate(V, x)
    if isinstance(cert, Inside):
        return {"point": _q(x), "inside": True, "lambdas": _q(cert.lambdas)}
    return {
        "point": _q(x),
        "inside": False,
        "lambdas": _q(lambda_coeffs(V, x)),
        "separator": _separator_json(cert),
    }


def _complex(job):
    V = _configuration(job)
    cplx = enumerate_complex(V, bounded_only=job.bounded_only, size_limit=job.size_limit)
    dual = dual_subdivision(V, size_limit=job.size_limit) if job.extra.get("dual") else None
    if job.svg:
        if V.n != 3:
            raise TropicalError("--svg needs n = 3")
        _write_svg(job, cplx)
    return ComplexDocument.from_complex(cplx, dual_cells=dual)


def _dual(job):
    V = _configuration(job)
    t = duality_transport(V, size_limit=job.size_limit)
    cells = dual_subdivision(V, size_limit=job.size_limit)
    out = {
        "row_f_vector": t.row_complex.f_vector(),
        "column_f_vector": t.column_complex.f_vector(),
        "problems": t.check(),
        "cell_map": [[_type_json(S), _type_json(T)] for S, T in sorted(t.cell_map.items())],
        "subdivision": sorted([[list(p) for p in sorted(c.pairs)] for c in cells]),
    }
    out["isomorphism"] = not out["problems"]
    if job.point is not None:
        z = _need_point(job, V.n)
        y = t.forward(z)
        out["forward"] = {"z": _q(z), "y": _q(y), "back": _q(t.backward(y))}
    return out


def _generic(job):
    V = _configuration(job)
    transposed = False
    if V.r < V.n:
        if not job.extra.get("transpose"):
            raise TropicalError(f"genericity needs r >= n (got {V.r}x{V.n}); pass --transpose")
        V, transposed = V.transpose(), True
    report = is_generic(V, size_limit=job.size_limit)
    return {
        "configuration": [_q(r) for r in V.rows],
        "transposed": transposed,
        "is_generic": report.is_generic,
        "witness": None if report.witness is None else [list(report.witness[0]), list(report.witness[1])],
        "triangulation": report.triangulation,
        "consistent": report.consistent,
    }


def _metric(job):
    return parse_matrix(_read_input(job), metric=True)


def _tree_check(job):
    D = _metric(job)
    report = is_tree_metric(D, size_limit=job.size_limit)
    _ok, witness = four_point_condition(D)
    return {
        "tree_metric": report.tree_metric,
        "dim": report.dim_PD,
        "conditions": report.conditions(),
        "witness": None if witness is None else list(witness),
        "skipped": list(report.skipped),
    }


def _tight_span(job):
    D = _metric(job)
    ts = tight_span(D, size_limit=job.size_limit)
    if job.svg:
        if D.n != 3:
            raise TropicalError("--svg needs a metric on 3 points")
        _write_svg(job, ts.complex)
    return {
        "dimension": ts.dimension,
        "vertices": [_q(v) for v in ts.vertices],
        "faces": sorted([[list(p) for p in sorted(f)] for f in ts.faces]),
        "envelope_vertices": len(ts.envelope_vertices),
        "off_diagonal": len(ts.off_diagonal),
        "tropical_complex_f_vector": ts.complex.f_vector(),
        "leaves": [_q(p) for p in ts.leaves],
    }


def _fvector(job):
    if job.input is None and job.rows is not None and job.cols is not None and job.seed is None:
        return {"r": job.rows, "n": job.cols, "generic_f_vector": generic_f_vector(job.rows, job.cols)}
    V = _configuration(job)
    bounded = enumerate_complex(V, bounded_only=True, size_limit=job.size_limit)
    out = {
        "r": V.r,
        "n": V.n,
        "f_vector": bounded.f_vector(),
        "generic_f_vector": generic_f_vector(V.r, V.n),
    }
    if not job.bounded_only:
        full = enumerate_complex(V, bounded_only=False, size_limit=job.size_limit)
        out["full_f_vector"] = full.f_vector()
        out["unbounded_f_vector"] = full.f_vector(bounded=False)
    return out


_HANDLERS = {
    "hull": _hull,
    "member": _member,
    "separate": _separate,
    "complex": _complex,
    "dual": _dual,
    "generic": _generic,
    "tree-check": _tree_check,
    "tight-span": _tight_span,
    "fvector": _fvector,
}


def _render(result) -> str:
    if isinstance(result, ComplexDocument):
        return result.to_json()
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


def run(job: JobSpec, stdout=None, stderr=None) -> int:
    """Execute one job; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = _render(_HANDLERS[job.command](job))
        if job.output:
            try:
                Path(job.output).write_text(text)
            except OSError as exc:
                raise UsageError(f"cannot write {job.output}: {exc.strerror}") from None
        else:
            stdout.write(text)
    except UsageError as exc:
        print(f"tropconv: usage error: {exc}", file=stderr)
        return 2
    except MatrixParseError as exc:
        print(f"tropconv: parse error: {exc}", file=stderr)
        return 1
    except TropicalError as exc:
        print(f"tropconv: error: {exc}", file=stderr)
        return 1
    return 0


def _point_arg(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(t) for t in text.replace(";", ",").split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _size_limit_arg(text: str) -> int | None:
    if text.lower() in ("none", "0"):
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("size limit must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropconv", description="Exact tropical convexity toolkit.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", "-i", help="matrix file (CSV, or distance matrix); '-' reads stdin")
    parser.add_argument("--output", "-o", help="write JSON here instead of stdout")
    parser.add_argument("--bounded-only", action="store_true", help="keep only bounded cells")
    parser.add_argument("--svg", help="also write an SVG drawing (TP^2 only)")
    parser.add_argument("--seed", type=int, help="seed for generated configurations")
    parser.add_argument(
        "--size-limit",
        type=_size_limit_arg,
        default=DEFAULT_SIZE_LIMIT,
        help=f"maximum r*n for polyhedral enumeration (default {DEFAULT_SIZE_LIMIT}; 'none' disables)",
    )
    parser.add_argument("--point", type=_point_arg, help="comma-separated coordinates, e.g. 0,0,-3")
    parser.add_argument("--rows", type=int, help="generate a random generic configuration with this many rows")
    parser.add_argument("--cols", type=int, help="columns of the generated configuration")
    parser.add_argument("--dual", action="store_true", help="complex: include dual subdivision cells")
    parser.add_argument("--transpose", action="store_true", help="generic: test the transpose when r < n")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.rows is not None and args.rows < 1 or args.cols is not None and args.cols < 1:
        print("tropconv: usage error: --rows and --cols must be positive", file=sys.stderr)
        return 2
    job = JobSpec(
        command=args.command,
        input=args.input,
        output=args.output,
        bounded_only=args.bounded_only,
        svg=args.svg,
        seed=args.seed,
        size_limit=args.size_limit,
        point=args.point,
        rows=args.rows,
        cols=args.cols,
        extra={"dual": args.dual, "transpose": args.transpose},
    )
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
