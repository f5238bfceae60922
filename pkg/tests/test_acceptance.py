"""Acceptance criteria 1-11, one recorded pass/fail line each."""

import itertools
import random
import time
from math import comb

import pytest
from oracles import perturbed_metric, random_point, random_tree_distances

from tropconv import (
    CellType,
    Configuration,
    Inside,
    MetricMatrix,
    Outside,
    ProjectivePoint,
    contains,
    duality_transport,
    enumerate_complex,
    generic_f_vector,
    is_generic,
    is_tree_metric,
    minimal_generators,
    proj_distance,
    random_generic_configuration,
    separate,
    t_comb,
    tight_span,
    tropical_segment,
    type_of,
)

T = CellType.of


@pytest.fixture(scope="module")
def metric_suites():
    rng = random.Random(2024)
    trees = [MetricMatrix(random_tree_distances(rng.randint(3, 7), rng)) for _ in range(50)]
    perturbed = [perturbed_metric(rng.randint(4, 6), rng) for _ in range(50)]
    spans = {id(D): tight_span(D) for D in trees + perturbed}
    return trees, perturbed, spans


def test_criterion_01_running_example(running, report):
    start = time.perf_counter()
    full = enumerate_complex(running)
    elapsed = time.perf_counter() - start
    f = full.f_vector()
    fb = full.f_vector(bounded=True)
    fu = full.f_vector(bounded=False)
    got = {
        "types": len(full),
        "two_cells": f[2],
        "bounded_two_cells": fb[2],
        "edges": f[1],
        "bounded_edges": fb[1],
        "unbounded_edges": fu[1],
        "vertices": f[0],
    }
    want = {
        "types": 30,
        "two_cells": 6,
        "bounded_two_cells": 1,
        "edges": 15,
        "bounded_edges": 6,
        "unbounded_edges": 9,
        "vertices": 6,
    }
    wrong = {k: (got[k], want[k]) for k in want if got[k] != want[k]}
    ok = not wrong and elapsed < 1
    detail = f"{elapsed:.2f}s; " + (", ".join(f"{k} got {g} expected {w}" for k, (g, w) in wrong.items()) or "all counts match")
    report(1, ok, detail)
    assert ok, detail


def test_criterion_02_type_spot_checks(running, report):
    cases = [
        ((0, 1, -1), T([1], [0], [2])),
        ((0, 0, 0), T([0, 1], [0], [1, 2])),
        ((0, 0, -3), T([0, 1, 2], [0], [])),
    ]
    bad = [(x, str(type_of(running, x))) for x, S in cases if type_of(running, x) != S]
    ok = report(2, not bad, "0-based types " + ", ".join(str(S) for _, S in cases) + (f"; mismatches {bad}" if bad else ""))
    assert ok


def test_criterion_03_duality(running, report):
    transport = duality_transport(running)
    y = transport.forward((0, 0, 2))
    problems = transport.check()
    rows, cols = transport.row_complex.f_vector(), transport.column_complex.f_vector()
    ok = y == ProjectivePoint((0, -2, -4)) and not problems and rows == cols
    report(3, ok, f"forward(0,0,2) = {y}; f-vectors {rows} / {cols}; problems {len(problems)}")
    assert ok


def test_criterion_04_generic_f_vectors(report):
    rng = random.Random(4)
    start = time.perf_counter()
    failures = []
    for r, n in [(3, 3), (4, 3), (3, 4), (4, 4)]:
        for _ in range(10):
            if r >= n:
                V = random_generic_configuration(r, n, rng)
            else:
                V = random_generic_configuration(n, r, rng).transpose()
            got = enumerate_complex(V, bounded_only=True).f_vector()
            if got != generic_f_vector(r, n):
                failures.append((r, n, got))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    report(4, ok, f"40 instances in {elapsed:.1f}s; mismatches {failures}")
    assert ok


def _degenerate(rng, r, n):
    V = [[0] + [rng.randint(-9, 9) for _ in range(n - 1)] for _ in range(r)]
    a, b = rng.sample(range(r), 2)
    c, d = rng.sample(range(n), 2)
    # force a tie in the 2x2 minor on rows a, b and columns c, d
    V[b][d] = V[a][d] + V[b][c] - V[a][c]
    return Configuration(V)


def test_criterion_05_minor_scan_vs_triangulation(report):
    rng = random.Random(5)
    shapes = [(3, 3), (4, 3), (4, 4), (5, 3)]
    disagreements, generic_count = [], 0
    for k in range(50):
        r, n = shapes[k % len(shapes)]
        if k % 2:
            V = _degenerate(rng, r, n)
        else:
            V = Configuration([[0] + [rng.randint(-9, 9) for _ in range(n - 1)] for _ in range(r)])
        rep = is_generic(V)
        generic_count += rep.is_generic
        if not rep.consistent:
            disagreements.append(V.rows)
    ok = not disagreements
    report(5, ok, f"50 matrices, {generic_count} generic, {len(disagreements)} disagreements")
    assert ok


def test_criterion_06_separation_exclusivity(report):
    rng = random.Random(6)
    violations, outside_count, pairs = [], 0, 0
    for _ in range(100):
        V = Configuration([random_point(4, rng, -8, 8, 1) for _ in range(5)])
        vertices = enumerate_complex(V, bounded_only=True).vertices
        hull_points = [t_comb([rng.randint(-12, 12) for _ in range(5)], V) for _ in range(100)]
        for k in range(10):
            pairs += 1
            x = random_point(4, rng, -10, 10) if k % 2 else t_comb([rng.randint(-6, 6) for _ in range(5)], V).coords
            cert = separate(V, x)
            if isinstance(cert, Inside) == isinstance(cert, Outside):
                violations.append(("variant", x))
                continue
            if cert.inside != contains(V, x):
                violations.append(("membership", x))
            if isinstance(cert, Inside):
                if t_comb(cert.lambdas, V) != ProjectivePoint(x):
                    violations.append(("recombine", x))
                continue
            outside_count += 1
            h = cert.hyperplane
            if not h.attains_at_k(x):
                violations.append(("x not on the k-sector", x))
            for y in itertools.chain(V.rows, vertices, hull_points):
                if not h.strictly_separates(y):
                    violations.append(("separation", x, y))
                    break
    ok = not violations and pairs == 1000
    report(6, ok, f"{pairs} pairs, {outside_count} outside; violations {len(violations)}")
    assert ok, violations[:3]


def test_criterion_07_segment_law(report):
    rng = random.Random(7)
    violations = 0
    for _ in range(500):
        n = rng.randint(2, 6)
        x, y = random_point(n, rng), random_point(n, rng)
        chain = tropical_segment(x, y)
        pair = Configuration([x, y])
        if chain.pieces > n - 1:
            violations += 1
        if not all(set(s) <= {0, 1} for s in chain.slopes):
            violations += 1
        if not all(contains(pair, b) for b in chain.breakpoints):
            violations += 1
    ok = report(7, violations == 0, f"500 segments, violations {violations}")
    assert ok


def test_criterion_08_cell_vertex_bound(report):
    rng = random.Random(8)
    violations, cells, worst = 0, 0, {}
    for k in range(20):
        n = 3 + k % 3
        r = rng.randint(n, 5)
        V = random_generic_configuration(r, n, rng)
        for cell in enumerate_complex(V, bounded_only=True):
            cells += 1
            worst[n] = max(worst.get(n, 0), len(cell.vertices))
            if len(cell.vertices) > comb(2 * n - 2, n - 1):
                violations += 1
    ok = report(8, violations == 0, f"20 configurations, {cells} bounded cells, largest per n {worst}, violations {violations}")
    assert ok


def test_criterion_09_tree_metric_suite(metric_suites, report):
    trees, perturbed, spans = metric_suites
    problems = []
    for D in trees:
        rep = is_tree_metric(D)
        if not (all(rep.conditions().values()) and rep.dim_PD == 1):
            problems.append(("tree", rep.conditions(), rep.dim_PD))
        span = spans[id(D)]
        if span.dimension != 1:
            problems.append(("tree span dimension", span.dimension))
        for i, j in itertools.combinations(range(D.n), 2):
            if proj_distance(span.leaves[i], span.leaves[j]) != D[i][j]:
                problems.append(("leaf distance", i, j))
    for D in perturbed:
        rep = is_tree_metric(D)
        values = set(rep.conditions().values())
        if values != {False}:
            problems.append(("perturbed", rep.conditions()))
    ok = report(9, not problems, f"{len(trees)} trees, {len(perturbed)} perturbed; problems {len(problems)}")
    assert ok, problems[:3]


def test_criterion_10_envelope_diagonal(metric_suites, report):
    trees, perturbed, spans = metric_suites
    bad = {"tree": 0, "perturbed": 0}
    off, total = 0, 0
    for label, suite in (("tree", trees), ("perturbed", perturbed)):
        for D in suite:
            span = spans[id(D)]
            off += len(span.off_diagonal)
            total += len(span.envelope_vertices)
            if not span.matches_envelope():
                bad[label] += 1
    ok = not any(bad.values())
    report(
        10,
        ok,
        f"metrics failing y = z or vertex-set equality: trees {bad['tree']}/{len(trees)}, "
        f"perturbed {bad['perturbed']}/{len(perturbed)}; off-diagonal envelope vertices {off}/{total}",
    )
    assert ok


def test_criterion_11_minimal_generators(report):
    rng = random.Random(11)
    failures = 0
    for _ in range(100):
        n = rng.randint(3, 4)
        base = Configuration([random_point(n, rng, -6, 6, 1) for _ in range(rng.randint(2, 4))])
        extra = [t_comb([rng.randint(-6, 6) for _ in range(base.r)], base).coords for _ in range(3)]
        W = Configuration(list(base.rows) + extra)
        expected = set(minimal_generators(base).points())
        for _ in range(5):
            order = list(range(W.r))
            rng.shuffle(order)
            if set(minimal_generators(W, order).points()) != expected:
                failures += 1
    ok = report(11, failures == 0, f"100 configurations x 5 orders, failures {failures}")
    assert ok
