"""Index vectors of vertex sets against a partition, and integer lattices they generate."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .budget import Budget, as_budget
from .errors import DomainError
from .hypergraph import Hypergraph, as_profile
from .solver import _copy_sets, _prepare, count_embeddings

IndexVector = tuple[int, ...]


def index_vector(partition: Sequence[Iterable[int]], S: Iterable[int]) -> IndexVector:
    """Coordinate i is |S ∩ V_i|."""
    part_of: dict[int, int] = {}
    for i, part in enumerate(partition):
        for v in part:
            if v in part_of:
                raise DomainError(f"vertex {v} lies in two parts")
            part_of[v] = i
    coords = [0] * len(partition)
    for v in S:
        if v not in part_of:
            raise DomainError(f"vertex {v} is not covered by the partition")
        coords[part_of[v]] += 1
    return tuple(coords)


def robust_vectors(
    H: Hypergraph,
    partition: Sequence[Iterable[int]],
    F: Hypergraph,
    mu,
    budget: Budget | int | None = None,
) -> set[IndexVector]:
    """Index vectors hit by at least mu n^m labelled copies of F.

    A copy on vertex set U counts once per edge-preserving bijection V(F) -> U,
    so the total over all vectors is the number of embeddings of F in H.
    """
    mu = Fraction(mu)
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    partition = [sorted(p) for p in partition]
    budget = _prepare(H, F, budget)
    if budget is None:
        return set()
    counts: Counter = Counter()
    for U in sorted(set(_copy_sets(H, F, budget))):
        counts[index_vector(partition, U)] += count_embeddings(H, F, U, budget)
    threshold = mu * H.n ** F.n
    return {vec for vec, c in counts.items() if c > 0 and c >= threshold}


# ---------------------------------------------------------------------------
# lattice membership


def _echelon(generators: Iterable[Sequence[int]], r: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the lattice spanned by ``generators``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    """
    rows = [list(g) for g in generators if any(g)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < r:
        active = [row for row in rows if row[col]]
        rest = [row for row in rows if not row[col]]
        if not active:
            col += 1
            continue
        # Euclid down the column until one row carries the gcd
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[col]))
            pivot = active[0]
            nxt = [pivot]
            for row in active[1:]:
                q = row[col] // pivot[col]
                row = [x - q * y for x, y in zip(row, pivot)]
                (nxt if row[col] else rest).append(row)
            active = nxt
        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        rows = [row for row in rest if any(row)]
        col += 1
    for i, row in enumerate(basis):
        c = next(j for j, x in enumerate(row) if x)
        for prev in basis[:i]:
            q = prev[c] // row[c]
            if q:
                prev[:] = [x - q * y for x, y in zip(prev, row)]
    return tuple(tuple(row) for row in basis)


@lru_cache(maxsize=256)
def canonical_basis(generators: frozenset[tuple[int, ...]], r: int) -> tuple[tuple[int, ...], ...]:
    return _echelon(sorted(generators), r)


def _normalise(generators: Iterable[Sequence[int]], r: int | None) -> tuple[frozenset, int]:
    gens = frozenset(tuple(int(x) for x in g) for g in generators)
    lengths = {len(g) for g in gens}
    if r is None:
        if len(lengths) > 1:
            raise DomainError(f"generators have mixed lengths {sorted(lengths)}")
        r = lengths.pop() if lengths else 0
    elif lengths - {r}:
        raise DomainError(f"generators must have length {r}")
    return gens, r


def lattice_contains(generators: Iterable[Sequence[int]], target: Sequence[int]) -> bool:
    """True iff ``target`` is an integer combination of ``generators``."""
    target = [int(x) for x in target]
    gens, r = _normalise(generators, len(target))
    residual = target
    for row in canonical_basis(gens, r):
        c = next(j for j, x in enumerate(row) if x)
        if residual[c] % row[c]:
            return False
        q = residual[c] // row[c]
        residual = [x - q * y for x, y in zip(residual, row)]
    return not any(residual)


def unit_difference(r: int, i: int, j: int) -> tuple[int, ...]:
    vec = [0] * r
    vec[i] += 1
    vec[j] -= 1
    return tuple(vec)


def transferral_complete(generators: Iterable[Sequence[int]], r: int) -> bool:
    """True iff every u_i - u_j lies in the lattice."""
    if r < 2:
        raise DomainError(f"need r >= 2, got {r}")
    gens, r = _normalise(generators, r)
    # u_i - u_(i+1) for consecutive i generate all transferrals
    return all(lattice_contains(gens, unit_difference(r, i, i + 1)) for i in range(r - 1))


def permuted_difference_vectors(profile) -> set[tuple[int, int]]:
    """(a_s - a_t)(u_1 - u_2) over all ordered pairs of positions of the profile."""
    sizes = as_profile(profile).sizes
    return {(x - y, y - x) for x, y in itertools.permutations(sizes, 2)}


def brute_force_contains(generators: Sequence[Sequence[int]], target: Sequence[int], bound: int = 10) -> bool:
    """Search coefficient vectors in [-bound, bound]^g; reference for small cases."""
    target = tuple(target)
    gens = [tuple(g) for g in generators]
    if not gens:
        return not any(target)
    # meet in the middle over the first half of the generators
    half = len(gens) // 2
    left: set[tuple[int, ...]] = set()
    zero = (0,) * len(target)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=half):
        vec = list(zero)
        for c, g in zip(coeffs, gens[:half]):
            if c:
                vec = [x + c * y for x, y in zip(vec, g)]
        left.add(tuple(vec))
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens) - half):
        vec = list(target)
        for c, g in zip(coeffs, gens[half:]):
            if c:
                vec = [x - c * y for x, y in zip(vec, g)]
        if tuple(vec) in left:
            return True
    return False
