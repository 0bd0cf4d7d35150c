import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilelab import lp
from tilelab.errors import DomainError, ResourceError, ShapeError, StructuralError
from tilelab.fractional import (
    FractionalTiling,
    _distinct_labelings,
    _solve,
    extended_weight_formula,
    extended_weights,
    maximize_small,
    standard_weights,
    validate,
)
from tilelab.hypergraph import Hypergraph, complete_partite, khat_extension


GRID = [(a, b, k) for b in range(2, 5) for a in range(1, b) for k in range(2, 6)]


def profile(a, b, k):
    return (a,) + (b,) * (k - 1)


def test_zero_weighting():
    v = validate(complete_partite((1, 2, 2)), (1, 2, 2), FractionalTiling())
    assert v.valid and v.weight == 0 and v.h_min is None
    assert v.to_dict()["h_min"] == "inf"


def test_standard_examples():
    h = standard_weights((1, 2, 2))
    v = validate(complete_partite((1, 2, 2)), (1, 2, 2), h)
    assert v.valid and v.weight == 5 and v.h_min == Fraction(1, 4)
    assert sorted(set(h.weights.values())) == [Fraction(1, 4), Fraction(1, 2)]
    h233 = standard_weights((2, 3, 3))
    assert sorted(set(h233.weights.values())) == [Fraction(1, 9), Fraction(1, 6)]
    with pytest.raises(ShapeError):
        standard_weights((1, 1, 2))


@pytest.mark.parametrize("a, b, k", GRID)
def test_standard_weights_grid(a, b, k):
    p = profile(a, b, k)
    h = standard_weights(p)
    v = validate(complete_partite(p), p, h)
    assert v.valid and v.weight == sum(p)
    assert set(h.vertex_sums().values()) == {1}
    assert v.h_min == Fraction(1, b ** (k - 1))


def test_extended_examples():
    assert extended_weight_formula((1, 2, 2)) == Fraction(25, 4)
    assert extended_weight_formula((2, 3, 3)) == 8 + Fraction(2, 9)
    v = validate(khat_extension((1, 2, 2)), (1, 2, 2), extended_weights((1, 2, 2)))
    assert v.valid and v.weight == Fraction(25, 4) and v.h_min == Fraction(1, 4)


@pytest.mark.parametrize("a, b, k", [g for g in GRID if g[2] >= 3])
def test_extended_weights_grid(a, b, k):
    p = profile(a, b, k)
    v = validate(khat_extension(p), p, extended_weights(p))
    m = sum(p)
    assert v.valid
    assert v.weight == extended_weight_formula(p)
    assert v.weight >= m + Fraction(1, a * b ** (k - 1))
    assert v.h_min == Fraction(1, b ** (k - 1))


def test_extended_weights_break_for_graphs_with_a_equal_one():
    # with k = 2 each new vertex would receive b/a^2 > 1
    v = validate(khat_extension((1, 2)), (1, 2), extended_weights((1, 2)))
    assert not v.valid
    assert any("total weight 2/1 > 1" in msg for msg in v.violations)


def test_overweight_vertex_is_invalid():
    L = Hypergraph(3, 3, ((0, 1, 2),))
    v = validate(L, (1, 1, 1), FractionalTiling({(0, 0): Fraction(2)}))
    assert not v.valid


def test_non_incident_weight_is_structural():
    L = complete_partite((1, 2, 2))
    with pytest.raises(StructuralError):
        validate(L, (1, 2, 2), FractionalTiling({(4, 0): Fraction(1, 2)}))
    with pytest.raises(StructuralError):
        validate(L, (1, 2, 2), FractionalTiling({(0, 9): Fraction(1, 2)}))
    with pytest.raises(DomainError):
        validate(L, (1, 2, 2, 2), FractionalTiling())


def test_condition_three_needs_some_labelling():
    L = Hypergraph(3, 3, ((0, 1, 2),))
    # weights 1/4 <= 1/2 <= 1/2 with ratios 1/4, 1/4, 1/4 for (1, 2, 2)
    ok = FractionalTiling({(0, 0): Fraction(1, 4), (1, 0): Fraction(1, 2), (2, 0): Fraction(1, 2)})
    assert validate(L, (1, 2, 2), ok).valid
    # increasing too steeply breaks the ratio chain
    bad = FractionalTiling({(0, 0): Fraction(1, 10), (1, 0): Fraction(1, 2), (2, 0): Fraction(1, 2)})
    assert not validate(L, (1, 2, 2), bad).valid


def test_stored_labelling_is_tried_before_search():
    L = Hypergraph(3, 3, ((0, 1, 2),))
    h = FractionalTiling({(2, 0): Fraction(1, 4), (0, 0): Fraction(1, 2), (1, 0): Fraction(1, 2)}, {0: (2, 0, 1)})
    v = validate(L, (1, 2, 2), h)
    assert v.valid and v.labelings[0] == (2, 0, 1)


def _labelling_ok_exhaustive(ws, sizes):
    return any(
        all(x <= y and x * b >= y * a for (x, a), (y, b) in zip(zip(p, sizes), zip(p[1:], sizes[1:])))
        for p in itertools.permutations(ws)
    )


fractions_ = st.fractions(min_value=0, max_value=1, max_denominator=12)


@settings(max_examples=150, deadline=None)
@given(st.lists(fractions_, min_size=3, max_size=3), st.sampled_from([(1, 2, 2), (1, 1, 3), (2, 3, 3), (1, 2, 3)]))
def test_single_edge_validation_matches_exhaustive(ws, sizes):
    L = Hypergraph(3, 3, ((0, 1, 2),))
    h = FractionalTiling({(v, 0): w for v, w in enumerate(ws)})
    assert validate(L, sizes, h).valid == _labelling_ok_exhaustive(ws, sizes)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GRID), st.fractions(min_value=0, max_value=1, max_denominator=20).filter(lambda c: c > 0))
def test_downscaling_preserves_validity(params, c):
    a, b, k = params
    p = profile(a, b, k)
    v = validate(complete_partite(p), p, standard_weights(p).scaled(c))
    assert v.valid and v.weight == c * sum(p)


def test_maximize_examples():
    L = Hypergraph(3, 3, ((0, 1, 2),))
    h, w = maximize_small(L, (1, 2, 2))
    assert w == 3 and validate(L, (1, 2, 2), h).valid
    K = complete_partite((1, 2, 2))
    h, w = maximize_small(K, (1, 2, 2))
    assert w == 5 and validate(K, (1, 2, 2), h).valid
    L = khat_extension((1, 2, 2))
    h, w = maximize_small(L, (1, 2, 2))
    v = validate(L, (1, 2, 2), h)
    assert v.valid and v.weight == w >= Fraction(25, 4)
    assert w <= L.n


def _exhaustive_max(L, sizes):
    options = [_distinct_labelings(e, sizes) for e in L.edges]
    return max(_solve(L, sizes, list(choice))[0] for choice in itertools.product(*options))


@pytest.mark.parametrize(
    "L, sizes",
    [
        (khat_extension((1, 2, 2)), (1, 2, 2)),
        (Hypergraph(3, 5, ((0, 1, 2), (0, 3, 4), (1, 2, 3))), (1, 2, 3)),
        (Hypergraph(3, 6, ((0, 1, 2), (2, 3, 4), (4, 5, 0), (1, 3, 5))), (1, 1, 2)),
    ],
)
def test_branch_and_bound_matches_exhaustive(L, sizes):
    _, w = maximize_small(L, sizes)
    assert w == _exhaustive_max(L, sizes)


def test_maximize_limits():
    with pytest.raises(ResourceError):
        maximize_small(complete_partite((2, 3, 3)), (2, 3, 3))


def test_json_round_trip():
    h = extended_weights((2, 3, 3))
    again = FractionalTiling.from_dict(h.to_dict())
    assert {k: v for k, v in again.weights.items()} == h.weights
    assert again.labelings == h.labelings


# ---------------------------------------------------------------------------
# exact simplex


def _vertex_enumeration(c, A, b):
    """max c.x over {Ax <= b, x >= 0} by trying every square subsystem."""
    n = len(c)
    rows = [list(map(Fraction, r)) for r in A] + [[Fraction(int(i == j)) * -1 for j in range(n)] for i in range(n)]
    rhs = list(map(Fraction, b)) + [Fraction(0)] * n
    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        M = [rows[i][:] + [rhs[i]] for i in idx]
        x = _solve_square(M, n)
        if x is None:
            continue
        if all(sum(r[j] * x[j] for j in range(n)) <= h for r, h in zip(rows, rhs)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            best = val if best is None else max(best, val)
    return best


def _solve_square(M, n):
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


@settings(max_examples=80, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(-3, 5), min_size=n, max_size=n),
            st.lists(st.lists(st.integers(-2, 4), min_size=n, max_size=n), min_size=0, max_size=3),
            st.lists(st.integers(0, 6), min_size=3, max_size=3),
        )
    )
)
def test_simplex_matches_vertex_enumeration(data):
    c, A, b = data
    n = len(c)
    # box the region so the optimum is finite
    A = A + [[int(i == j) for j in range(n)] for i in range(n)]
    b = b[: len(A) - n] + [4] * n
    value, x = lp.maximize(c, A, b)
    assert value == _vertex_enumeration(c, A, b)
    assert all(xi >= 0 for xi in x)
    assert all(sum(r[j] * x[j] for j in range(n)) <= bi for r, bi in zip(A, b))


def test_simplex_unbounded():
    with pytest.raises(lp.Unbounded):
        lp.maximize([1], [[-1]], [0])
