"""Lower-bound constructions for tiling thresholds, each paired with a checkable certificate."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .hypergraph import Hypergraph, as_profile, min_d_degree
from .invariants import vertex_cover_number


@dataclass
class ConstructionCertificate:
    """What a construction claims about its output.

    ``freeness_claims`` lists profiles of complete k-partite graphs the host
    (or the inner graph G) is claimed to avoid; checking them is left to the
    tiling solver.
    """

    construction: str
    partition: dict[str, list[int]]
    claimed_min_codegree: int
    freeness_claims: list[list[int]] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    codegree_is_lower_bound: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ConstructionCertificate:
        return cls(**data)

    def check_codegree(self, H: Hypergraph) -> bool:
        actual = min_d_degree(H, H.k - 1)
        if self.codegree_is_lower_bound:
            return actual >= self.claimed_min_codegree
        return actual == self.claimed_min_codegree

    def check_partition(self, H: Hypergraph) -> bool:
        blocks = [set(b) for b in self.partition.values()]
        union = set().union(*blocks) if blocks else set()
        return union == set(H.vertices) and sum(map(len, blocks)) == H.n


def _meeting_edges(k: int, n: int, A: set[int], extra: Iterable[tuple[int, ...]] = ()) -> tuple:
    edges = [e for e in itertools.combinations(range(n), k) if A.intersection(e)]
    edges.extend(extra)
    return tuple(edges)


def space_barrier(F: Hypergraph, n: int, budget=None) -> tuple[Hypergraph, ConstructionCertificate]:
    """All k-sets meeting A, where |A| = tau(F) n / m - 1 and A = {0, ..., |A|-1}.

    Every copy of F needs tau(F) vertices of A, so there is no perfect F-tiling.
    """
    m = F.n
    if m == 0 or n <= 0 or n % m:
        raise DomainError(f"n = {n} must be a positive multiple of |V(F)| = {m}")
    tau = vertex_cover_number(F, budget)
    size_a = tau * n // m - 1
    if size_a < 1:
        raise DomainError(f"tau(F) n / m - 1 = {size_a}; need at least one vertex in A")
    if n - size_a < F.k - 1:
        raise DomainError("n too small for the barrier")
    A = set(range(size_a))
    H = Hypergraph(F.k, n, _meeting_edges(F.k, n, A))
    cert = ConstructionCertificate(
        "space-barrier",
        {"A": sorted(A), "B": list(range(size_a, n))},
        size_a,
        [],
        {"tau": tau, "m": m, "claim": "no perfect F-tiling"},
    )
    return H, cert


def freeness_profiles(profile) -> list[tuple[int, ...]]:
    """Profiles (b_1 <= ... <= b_k) with sum m - a_1 + 1 and b_i <= a_i."""
    profile = as_profile(profile)
    sizes = profile.sizes
    target = profile.m - sizes[0] + 1
    out = []

    def rec(i: int, lo: int, acc: list[int], total: int):
        if i == len(sizes):
            if total == target:
                out.append(tuple(acc))
            return
        for b in range(lo, sizes[i] + 1):
            if total + b > target:
                break
            acc.append(b)
            rec(i + 1, b, acc, total + b)
            acc.pop()

    rec(0, 1, [], 0)
    return out


def strengthened_barrier(profile, n: int, G: Hypergraph) -> tuple[Hypergraph, ConstructionCertificate]:
    """Space barrier for K(a_1, ..., a_k) with a graph G placed inside B.

    A = {0, ..., a_1 n/m - 2}; G's vertex i becomes host vertex |A| + i. The
    freeness of G is recorded as an obligation, not checked.
    """
    profile = as_profile(profile)
    k, m, a1 = profile.k, profile.m, profile.sizes[0]
    if n <= 0 or n % m:
        raise DomainError(f"n = {n} must be a positive multiple of m = {m}")
    size_a = a1 * n // m - 1
    if size_a < 1:
        raise DomainError(f"a_1 n / m - 1 = {size_a}; need at least one vertex in A")
    if G.k != k:
        raise DomainError(f"G is {G.k}-uniform, profile needs {k}")
    if G.n != n - size_a:
        raise DomainError(f"G has {G.n} vertices, B needs exactly {n - size_a}")
    A = set(range(size_a))
    shifted = [tuple(v + size_a for v in e) for e in G.edges]
    H = Hypergraph(k, n, _meeting_edges(k, n, A, shifted))
    inner = min_d_degree(G, k - 1) if G.n >= k - 1 else 0
    cert = ConstructionCertificate(
        "strengthened-barrier",
        {"A": sorted(A), "B": list(range(size_a, n))},
        size_a + inner,
        [list(b) for b in freeness_profiles(profile)],
        {"profile": list(profile.sizes), "inner_min_codegree": inner, "claim": "no perfect K-tiling if G is free"},
    )
    return H, cert


# ---------------------------------------------------------------------------
# finite-field construction


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def primitive_root(q: int) -> int:
    factors = {p for p in range(2, q) if (q - 1) % p == 0 and is_prime(p)}
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return g
    return 1  # q == 2


def cyclic_subgroup(q: int, order: int) -> list[int]:
    """The unique subgroup of F_q^* of the given order (it must divide q-1)."""
    if order < 1 or (q - 1) % order:
        raise DomainError(f"F_{q}^* has no subgroup of order {order}")
    g = pow(primitive_root(q), (q - 1) // order, q)
    return sorted({pow(g, i, q) for i in range(order)})


@dataclass(frozen=True)
class MubayiClasses:
    """Vertex classes <a, b> of (F_q^*)^2 modulo scaling by the subgroup S."""

    q: int
    subgroup: tuple[int, ...]
    reps: tuple[tuple[int, int], ...]
    index: dict = field(compare=False, hash=False)

    def orbit(self, a: int, b: int) -> list[tuple[int, int]]:
        return sorted({(s * a % self.q, s * b % self.q) for s in self.subgroup})

    def class_of(self, a: int, b: int) -> int:
        return self.index[(a % self.q, b % self.q)]


def mubayi_classes(q: int, t: int) -> MubayiClasses:
    S = tuple(cyclic_subgroup(q, t - 1))
    reps: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for a in range(1, q):
        for b in range(1, q):
            if (a, b) in index:
                continue
            orbit = sorted({(s * a % q, s * b % q) for s in S})
            cid = len(reps)
            reps.append(orbit[0])
            for pair in orbit:
                index[pair] = cid
    return MubayiClasses(q, S, tuple(reps), index)


def mubayi_edge(q: int, subgroup, pairs) -> bool:
    """Product condition: prod a_i + prod b_i lies in S."""
    pa = pb = 1
    for a, b in pairs:
        pa = pa * a % q
        pb = pb * b % q
    return (pa + pb) % q in set(subgroup)


def mubayi_graph(k: int, t: int, q: int) -> tuple[Hypergraph, ConstructionCertificate]:
    """Mubayi's K(1, ..., 1, 2, t)-free k-graph on (q-1)^2/(t-1) vertices.

    Vertices are numbered by the lexicographically smallest representative of
    each class.
    """
    if k < 3 or t < 2:
        raise DomainError(f"need k >= 3 and t >= 2, got k={k}, t={t}")
    if not is_prime(q):
        raise DomainError(f"q = {q} is not prime")
    if (q - 1) % (t - 1):
        raise DomainError(f"q = {q} is not 1 mod t-1 = {t - 1}")
    classes = mubayi_classes(q, t)
    S = set(classes.subgroup)
    reps = classes.reps
    n0 = len(reps)
    edges = [
        combo
        for combo in itertools.combinations(range(n0), k)
        if mubayi_edge(q, S, (reps[i] for i in combo))
    ]
    H = Hypergraph(k, n0, tuple(edges))
    cert = ConstructionCertificate(
        "mubayi",
        {"V": list(range(n0))},
        # a (k-1)-set extends by exactly q-2 classes: for each s in S every
        # first coordinate but one fixes the second. Up to k-1 of those classes
        # may already lie in the set.
        max(q - k - 1, 0),
        [[1] * (k - 2) + sorted([2, t])],
        {
            "q": q,
            "t": t,
            "subgroup": sorted(S),
            "representatives": [list(r) for r in reps],
        },
        codegree_is_lower_bound=True,
    )
    return H, cert


def mubayi_representative_independent(k: int, t: int, q: int, combos=None) -> bool:
    """Check that the edge relation does not depend on the chosen representatives.

    ``combos`` restricts the check to given k-sets of class indices; by default
    every k-set of classes is checked against every choice of representatives.
    """
    classes = mubayi_classes(q, t)
    S = classes.subgroup
    n0 = len(classes.reps)
    if combos is None:
        combos = itertools.combinations(range(n0), k)
    for combo in combos:
        orbits = [classes.orbit(*classes.reps[i]) for i in combo]
        answers = {mubayi_edge(q, S, choice) for choice in itertools.product(*orbits)}
        if len(answers) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# parity construction


def parity_construction(G: Hypergraph, A: Iterable[int]) -> Hypergraph:
    """E(G) together with every k-set meeting A in an even number of vertices."""
    A = set(A)
    if any(v < 0 or v >= G.n for v in A):
        raise DomainError("A must be a subset of V(G)")
    even = [e for e in itertools.combinations(range(G.n), G.k) if len(A.intersection(e)) % 2 == 0]
    return Hypergraph(G.k, G.n, G.edges + tuple(even))


def parity_certificate(G: Hypergraph, A: Iterable[int], a: int) -> ConstructionCertificate:
    A = sorted(set(A))
    k = G.k
    return ConstructionCertificate(
        "parity",
        {"A": A, "B": [v for v in G.vertices if v not in set(A)]},
        min_d_degree(parity_construction(G, A), k - 1),
        [[1] * (k - 2) + [2, 2]],
        {"pattern": [a] * k, "claim": f"copies meet A in a multiple of {a}", "A_mod_a": len(A) % a},
    )


def barrier_density(F: Hypergraph) -> Fraction:
    """tau(F)/|V(F)|, the codegree ratio the space barrier certifies."""
    return Fraction(vertex_cover_number(F), F.n)
