import itertools
import math
from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilelab.errors import DomainError
from tilelab.hypergraph import Hypergraph, PartiteProfile, complete_partite
from tilelab.lattice import (
    brute_force_contains,
    canonical_basis,
    index_vector,
    lattice_contains,
    permuted_difference_vectors,
    robust_vectors,
    transferral_complete,
)

EDGE3 = Hypergraph(3, 3, ((0, 1, 2),))


def test_index_vector_examples():
    parts = [range(0, 8, 2), range(1, 8, 2)]
    assert index_vector(parts, set()) == (0, 0)
    assert index_vector(parts, {0, 1, 2}) == (2, 1)
    assert sum(index_vector(parts, {0, 3, 4, 7})) == 4
    with pytest.raises(DomainError):
        index_vector(parts, {8})
    with pytest.raises(DomainError):
        index_vector([[0, 1], [1, 2]], {0})


def test_robust_vectors_examples():
    halves = [range(6), range(6, 12)]
    assert robust_vectors(Hypergraph.empty(3, 12), halves, EDGE3, Fraction(1, 1000)) == set()
    K = Hypergraph.complete(3, 12)
    got = robust_vectors(K, halves, EDGE3, Fraction(1, 1000))
    assert (2, 1) in got
    assert robust_vectors(K, halves, EDGE3, 0) == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_robust_vectors_count_labelled_copies():
    # (2,1): binom(6,2)*6 = 90 sets, each hosting 3! labelled copies -> 540 < 12^3 * 1/3
    halves = [range(6), range(6, 12)]
    K = Hypergraph.complete(3, 12)
    assert (2, 1) in robust_vectors(K, halves, EDGE3, Fraction(540, 12**3))
    assert (2, 1) not in robust_vectors(K, halves, EDGE3, Fraction(541, 12**3))
    # (3,0) has 20 sets, 120 labelled copies
    assert (3, 0) in robust_vectors(K, halves, EDGE3, Fraction(120, 12**3))
    assert (3, 0) not in robust_vectors(K, halves, EDGE3, Fraction(121, 12**3))


def test_robust_vectors_monotone_in_mu():
    H = complete_partite((2, 3, 3)).add_edges([(0, 1, 2), (5, 6, 7)])
    parts = [range(4), range(4, 8)]
    F = complete_partite((1, 1, 2))
    previous = None
    for mu in [Fraction(0), Fraction(1, 10**5), Fraction(1, 10**4), Fraction(1, 10**3), Fraction(1, 100)]:
        cur = robust_vectors(H, parts, F, mu)
        if previous is not None:
            assert cur <= previous
        previous = cur


def test_lattice_examples():
    gens = {(1, 2), (2, 1)}
    assert lattice_contains(gens, (1, -1))
    assert not lattice_contains(gens, (1, 0))
    assert not lattice_contains(set(), (1, 0))
    assert lattice_contains(set(), (0, 0))


def test_transferral_examples():
    assert transferral_complete({(1, -1, 0), (0, 1, -1)}, 3)
    assert not transferral_complete({(2, -2)}, 2)
    assert transferral_complete(permuted_difference_vectors((1, 2)), 2)
    with pytest.raises(DomainError):
        transferral_complete(set(), 1)


def test_canonical_basis_is_hermite_form():
    basis = canonical_basis(frozenset({(4, 6, 2), (2, 4, 0), (0, 2, 6)}), 3)
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for i, row in enumerate(basis):
        p = pivots[i]
        assert row[p] > 0
        assert all(0 <= other[p] < row[p] for other in basis[:i])


vectors = st.integers(1, 4).flatmap(
    lambda r: st.tuples(
        st.lists(st.tuples(*[st.integers(-5, 5)] * r), max_size=4),
        st.tuples(*[st.integers(-5, 5)] * r),
    )
)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_membership_agrees_with_bounded_search(case):
    gens, target = case
    found = brute_force_contains(gens, target, 10)
    decided = lattice_contains(gens, target)
    if found:
        assert decided
    if not decided:
        assert not found


@settings(max_examples=200, deadline=None)
@given(vectors, st.lists(st.integers(-3, 3), max_size=4))
def test_combinations_are_members(case, coeffs):
    gens, _ = case
    if not gens:
        return
    r = len(gens[0])
    target = [0] * r
    for c, g in zip(coeffs, gens):
        target = [x + c * y for x, y in zip(target, g)]
    assert lattice_contains(gens, target)


def _profiles_up_to(m_max):
    for k in range(2, m_max + 1):
        for sizes in itertools.combinations_with_replacement(range(1, m_max + 1), k):
            if sum(sizes) <= m_max:
                yield sizes


def test_difference_vectors_for_coprime_profiles():
    checked = 0
    for sizes in _profiles_up_to(10):
        diffs = [b - a for a, b in zip(sizes, sizes[1:])]
        g = reduce(math.gcd, diffs, 0)
        vecs = permuted_difference_vectors(PartiteProfile(sizes))
        assert transferral_complete(vecs, 2) == (g == 1)
        checked += g == 1
    assert checked > 50


def test_generator_length_mismatch():
    with pytest.raises(DomainError):
        lattice_contains({(1, 2, 3)}, (1, 2))
