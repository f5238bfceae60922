import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_point

from tropconv import (
    Configuration,
    Inside,
    Outside,
    ProjectivePoint,
    TropicalError,
    caratheodory_reduce,
    contains,
    enumerate_complex,
    intersect_polytopes,
    lambda_coeffs,
    minimal_generators,
    normalize,
    on_hyperplane,
    project_onto_hull,
    separate,
    t_comb,
    tropical_segment,
    type_of,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def points(n):
    return st.lists(small, min_size=n, max_size=n)


def P(*c):
    return ProjectivePoint(c)


# -- segments --


def test_segment_example():
    chain = tropical_segment((0, 0, 0), (0, 1, 2))
    assert chain.breakpoints == (P(0, 0, 0), P(0, 1, 1), P(0, 1, 2))
    assert chain.slopes == ((0, 1, 1), (0, 0, 1))


def test_degenerate_segments():
    chain = tropical_segment((0, 3, 1), (0, 3, 1))
    assert chain.breakpoints == (P(0, 3, 1),)
    assert chain.pieces == 0
    assert tropical_segment((0, 0), (0, 5)).pieces == 1
    with pytest.raises(TropicalError):
        tropical_segment((0, 0), (0, 0, 0))


def _on_piece(a, b, x):
    # x lies on the ordinary segment [a, b] of R^n (with first coordinates 0)
    d = [q - p for p, q in zip(a, b)]
    ts = {(c - p) / dk for p, c, dk in zip(a, x, d) if dk}
    if len(ts) != 1:
        return False
    t = ts.pop()
    return 0 <= t <= 1 and all(dk or c == p for p, c, dk in zip(a, x, d))


@settings(max_examples=150)
@given(st.integers(min_value=2, max_value=6).flatmap(lambda n: st.tuples(points(n), points(n), st.data())))
def test_segment_structure(args):
    x, y, data = args
    n = len(x)
    chain = tropical_segment(x, y)
    assert chain.breakpoints[0] == normalize(x)
    assert chain.breakpoints[-1] == normalize(y)
    assert chain.pieces <= n - 1
    assert all(set(s) <= {0, 1} for s in chain.slopes)
    pair = Configuration([x, y])
    assert all(contains(pair, b) for b in chain.breakpoints)
    reverse = tropical_segment(y, x)
    assert set(reverse.breakpoints) == set(chain.breakpoints)
    # every combination a ⊙ x ⊕ b ⊙ y lands on one of the ordinary pieces
    c = data.draw(small)
    z = t_comb((0, c), pair)
    pieces = list(zip(chain.breakpoints, chain.breakpoints[1:])) or [(chain.breakpoints[0],) * 2]
    assert any(_on_piece(a.coords, b.coords, z.coords) or z == a for a, b in pieces)


# -- projection and membership --


def test_lambda_and_projection_examples(running):
    assert lambda_coeffs(running, (0, 0, -3)) == (0, 0, 0)
    assert project_onto_hull(running, (0, 0, -3)) == P(0, 0, -2)
    assert project_onto_hull(running, (0, 1, -1)) == P(0, 1, -1)
    assert project_onto_hull(running, (0, 2, 0)) == P(0, 2, 0)
    lam = lambda_coeffs(running, running.rows[1])
    assert lam[1] == 0


def test_lambda_is_least_absorbed_coefficient(running):
    rng = random.Random(5)
    for _ in range(50):
        x = normalize(random_point(3, rng))
        for i, lam in enumerate(lambda_coeffs(running, x)):
            v = running.rows[i]
            assert all(min(lam + a, b) == b for a, b in zip(v, x))
            smaller = lam - Fraction(1, 7)
            assert any(min(smaller + a, b) != b for a, b in zip(v, x))


def test_lambda_shifts_with_the_point(running):
    x = (0, Fraction(1, 2), -3)
    base = lambda_coeffs(running, x)
    V = running
    shifted = tuple(max(c + 5 - v for v, c in zip(row, x)) for row in V.rows)
    assert shifted == tuple(b + 5 for b in base)


def test_contains_examples(running):
    assert contains(running, (0, 1, -1))
    assert not contains(running, (0, 0, -3))
    assert contains(running, t_comb((3, -1, 2), running))
    assert not contains(Configuration.empty(3), (0, 0, 0))


@settings(max_examples=100)
@given(st.lists(points(3), min_size=1, max_size=4), points(3))
def test_projection_is_idempotent(rows, x):
    V = Configuration(rows)
    p = project_onto_hull(V, x)
    assert project_onto_hull(V, p) == p
    assert contains(V, p)
    assert contains(V, x) == (p == normalize(x))
    # membership equals "every coordinate is claimed by some generator"
    assert contains(V, x) == all(type_of(V, x).sets)


@settings(max_examples=100)
@given(st.lists(points(4), min_size=2, max_size=4), st.data())
def test_hull_is_tropically_convex(rows, data):
    V = Configuration(rows)
    a = data.draw(st.lists(small, min_size=V.r, max_size=V.r))
    b = data.draw(st.lists(small, min_size=V.r, max_size=V.r))
    x, y = t_comb(a, V), t_comb(b, V)
    assert project_onto_hull(V, x) == x
    c, d = data.draw(small), data.draw(small)
    assert contains(V, t_comb((c, d), Configuration([x, y])))


# -- separation --


def test_separation_example(running):
    cert = separate(running, (0, 0, -3))
    assert isinstance(cert, Outside) and not cert.inside
    assert cert.hyperplane.k == 2
    assert cert.epsilon == Fraction(1, 2)
    assert cert.hyperplane.coefficients == (0, 0, Fraction(5, 2))
    assert cert.hyperplane.attains_at_k((0, 0, -3))
    inside = separate(running, (0, 1, -1))
    assert isinstance(inside, Inside)
    assert t_comb(inside.lambdas, running) == P(0, 1, -1)


@pytest.mark.parametrize("seed", range(8))
def test_outside_certificates_hold_on_the_whole_polytope(seed):
    rng = random.Random(seed)
    V = Configuration([random_point(3, rng, -6, 6, 1) for _ in range(4)])
    vertices = enumerate_complex(V, bounded_only=True).vertices
    for _ in range(25):
        x = random_point(3, rng, -10, 10)
        cert = separate(V, x)
        if cert.inside:
            assert t_comb(cert.lambdas, V) == normalize(x)
            continue
        h = cert.hyperplane
        assert h.attains_at_k(x)
        assert all(h.strictly_separates(v) for v in V.rows)
        assert all(h.strictly_separates(v) for v in vertices)
        for _ in range(20):
            y = t_comb([rng.randint(-10, 10) for _ in range(V.r)], V)
            assert h.strictly_separates(y)


def test_hyperplane_membership():
    assert on_hyperplane((0, 0, 0), (0, 0, 5))
    assert not on_hyperplane((0, 0, 0), (0, 1, 2))


@settings(max_examples=100)
@given(points(4), st.data())
def test_hyperplanes_are_tropically_convex(a, data):
    # build two points on the hyperplane by equalizing the two smallest terms
    def on(seed_pt):
        vals = [ai + xi for ai, xi in zip(a, seed_pt)]
        order = sorted(range(len(vals)), key=lambda j: vals[j])
        pt = list(seed_pt)
        pt[order[1]] -= vals[order[1]] - vals[order[0]]
        return pt

    x = on(data.draw(points(4)))
    y = on(data.draw(points(4)))
    assert on_hyperplane(a, x) and on_hyperplane(a, y)
    for b in tropical_segment(x, y).breakpoints:
        assert on_hyperplane(a, b)


# -- Carathéodory and generators --


def test_caratheodory_with_duplicates():
    rng = random.Random(2)
    base = [random_point(3, rng, -5, 5, 1) for _ in range(3)]
    V = Configuration(base + base[:2])
    for _ in range(30):
        a = [rng.randint(-6, 6) for _ in range(V.r)]
        x = t_comb(a, V)
        idx = caratheodory_reduce(V, a, x)
        assert len(idx) <= 3
        assert t_comb([a[i] for i in idx], V.subset(idx)) == x


def test_caratheodory_on_a_generator(running):
    assert caratheodory_reduce(running, (0, 50, 50)) == (0,)
    with pytest.raises(TropicalError):
        caratheodory_reduce(running, (0, 0, 0), (0, 1, 1))


@settings(max_examples=60)
@given(st.lists(points(3), min_size=6, max_size=6), st.lists(st.integers(-8, 8), min_size=6, max_size=6))
def test_caratheodory_recombines(rows, a):
    V = Configuration(rows)
    x = t_comb(a, V)
    idx = caratheodory_reduce(V, a, x)
    assert len(idx) <= 3
    assert t_comb([a[i] for i in idx], V.subset(idx)) == x


def test_minimal_generators_examples(running):
    assert minimal_generators(running) == running
    V = Configuration([[0, 1, 4], [0, 3, -2]])
    combo = t_comb((0, 0), V)
    assert minimal_generators(Configuration([*V.rows, combo.coords])) == V
    same = Configuration([[0, 1, 2], [3, 4, 5], [-1, 0, 1]])
    assert minimal_generators(same).r == 1


def test_minimal_generators_is_order_independent():
    rng = random.Random(9)
    for _ in range(10):
        rows = [random_point(4, rng, -5, 5, 1) for _ in range(4)]
        V = Configuration(rows)
        extra = [t_comb([rng.randint(-5, 5) for _ in range(4)], V).coords for _ in range(3)]
        W = Configuration(rows + extra)
        reference = set(minimal_generators(W).points())
        for _ in range(4):
            order = list(range(W.r))
            rng.shuffle(order)
            assert set(minimal_generators(W, order).points()) == reference
        # nothing removed can be needed: the reduced set still generates every row
        R = minimal_generators(W)
        assert all(contains(R, row) for row in W.rows)


# -- intersections --


def test_intersection_with_itself(running):
    assert set(intersect_polytopes(running, running).rows) == set(minimal_generators(running).rows)


def test_disjoint_intersection_is_empty():
    V = Configuration([[0, 0, 0], [0, 1, 0]])
    W = Configuration([[0, 10, 10], [0, 11, 10]])
    out = intersect_polytopes(V, W)
    assert out.r == 0 and out.n == 3


def test_crossing_segments_meet_in_one_point():
    V = Configuration([[0, -2, 0], [0, 2, 0]])
    W = Configuration([[0, 0, -2], [0, 0, 2]])
    out = intersect_polytopes(V, W)
    assert out.rows == ((0, 0, 0),)
    # grid oracle for the same intersection
    grid = [
        (0, Fraction(a, 4), Fraction(b, 4))
        for a in range(-12, 13)
        for b in range(-12, 13)
        if contains(V, (0, Fraction(a, 4), Fraction(b, 4))) and contains(W, (0, Fraction(a, 4), Fraction(b, 4)))
    ]
    assert grid == [(0, 0, 0)]


def test_intersection_generates_common_points():
    rng = random.Random(4)
    V = Configuration([[0, 0, 4], [0, 4, 0], [0, -1, -1]])
    W = Configuration([[0, 1, 1], [0, 5, 3], [0, 2, -3]])
    X = intersect_polytopes(V, W)
    assert all(contains(V, row) and contains(W, row) for row in X.rows)
    for _ in range(400):
        x = (0, Fraction(rng.randint(-24, 24), 4), Fraction(rng.randint(-24, 24), 4))
        assert (contains(V, x) and contains(W, x)) == contains(X, x)


def test_intersection_dimension_mismatch():
    with pytest.raises(TropicalError):
        intersect_polytopes(Configuration([[0, 1]]), Configuration([[0, 1, 2]]))
