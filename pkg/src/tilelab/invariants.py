"""k-partite realizations of a pattern and the invariants S(F), D(F), gcd(F), sigma(F), tau(F)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .budget import Budget, as_budget
from .errors import DomainError, NotPartiteError, ResourceError
from .hypergraph import Hypergraph

MAX_PATTERN_VERTICES = 24


@dataclass(frozen=True, order=True)
class Realization:
    """A partition of V(F) into k nonempty classes meeting every edge once.

    Classes are sorted tuples ordered by (size, smallest element).
    """

    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @classmethod
    def from_blocks(cls, blocks) -> Realization:
        canon = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (len(b), b[0] if b else -1))
        return cls(tuple(canon))

    def is_valid_for(self, F: Hypergraph) -> bool:
        color = {}
        for i, block in enumerate(self.classes):
            if not block:
                return False
            for v in block:
                if v in color:
                    return False
                color[v] = i
        if sorted(color) != list(F.vertices):
            return False
        return all(len({color[v] for v in e}) == F.k for e in F.edges)


@dataclass(frozen=True)
class InvariantReport:
    s_set: frozenset[int]
    d_set: frozenset[int]
    gcd_f: int | None
    sigma: Fraction
    tau: int
    size_profiles: frozenset[tuple[int, ...]] = frozenset()

    @property
    def gcd_s(self) -> int:
        return reduce(math.gcd, self.s_set)

    def to_dict(self) -> dict:
        return {
            "S": sorted(self.s_set),
            "D": sorted(self.d_set),
            "gcd": self.gcd_f,
            "gcd_S": self.gcd_s,
            "sigma": format_fraction(self.sigma),
            "tau": self.tau,
            "size_profiles": [list(p) for p in sorted(self.size_profiles)],
        }


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def gcd_of(values) -> int | None:
    """gcd of the nonzero values; ``None`` when there are none."""
    nz = [abs(v) for v in values if v]
    if not nz:
        return None
    return reduce(math.gcd, nz)


def _search_order(F: Hypergraph) -> list[int]:
    deg = F.vertex_degrees()
    return sorted(F.vertices, key=lambda v: (-deg[v], v))


def realizations(F: Hypergraph, budget: Budget | int | None = None) -> set[Realization]:
    """All k-partite realizations of ``F`` with nonempty classes.

    Backtracking colouring in decreasing-degree order; a vertex may only open
    the next unused colour, so each unordered partition is produced once.
    """
    if F.num_edges == 0:
        raise DomainError("k-partiteness is undecidable for an edgeless pattern (no edge to realize)")
    if F.n > MAX_PATTERN_VERTICES:
        raise ResourceError(f"pattern has {F.n} vertices; realization search is limited to {MAX_PATTERN_VERTICES}")
    budget = as_budget(budget, "realization search")
    k = F.k
    order = _search_order(F)
    incident: list[list[tuple[int, ...]]] = [[] for _ in F.vertices]
    for e in F.edges:
        for v in e:
            incident[v].append(e)
    color = [-1] * F.n
    found: set[Realization] = set()

    def extend(i: int, used: int) -> None:
        budget.tick()
        if used + (len(order) - i) < k:
            return
        if i == len(order):
            blocks = [[] for _ in range(k)]
            for v in F.vertices:
                blocks[color[v]].append(v)
            found.add(Realization.from_blocks(blocks))
            return
        v = order[i]
        blocked = {color[u] for e in incident[v] for u in e if color[u] >= 0}
        for c in range(min(used + 1, k)):
            if c in blocked:
                continue
            color[v] = c
            extend(i + 1, max(used, c + 1))
            color[v] = -1

    extend(0, 0)
    return found


def vertex_cover_number(F: Hypergraph, budget: Budget | int | None = None) -> int:
    """tau(F): exact minimum vertex cover by branch and bound.

    Branches on the vertices of an uncovered edge of smallest remaining
    choice; the bound is a greedy packing of pairwise disjoint uncovered edges.
    """
    if F.n > MAX_PATTERN_VERTICES:
        raise ResourceError(f"pattern has {F.n} vertices; vertex cover search is limited to {MAX_PATTERN_VERTICES}")
    budget = as_budget(budget, "vertex cover search")
    masks = [sum(1 << v for v in e) for e in F.edges]
    best = [F.n]

    def disjoint_lower_bound(uncovered: list[int]) -> int:
        seen = 0
        count = 0
        for m in uncovered:
            if not m & seen:
                seen |= m
                count += 1
        return count

    def search(cover: int, size: int) -> None:
        budget.tick()
        uncovered = [m for m in masks if not m & cover]
        if not uncovered:
            best[0] = min(best[0], size)
            return
        if size + disjoint_lower_bound(uncovered) >= best[0]:
            return
        e = uncovered[0]
        v = 0
        while e:
            if e & 1:
                search(cover | (1 << v), size + 1)
            e >>= 1
            v += 1

    search(0, 0)
    return best[0] if masks else 0


def class_size_profiles(F: Hypergraph, budget: Budget | int | None = None) -> set[tuple[int, ...]]:
    """Sorted class-size vectors over all realizations, without listing them.

    A vertex lying in a single edge must take whichever colours that edge's
    other vertices leave free, so only vertices of degree at least two are
    coloured by search; vertices of degree zero are spread over the colours
    in every possible way.
    """
    if F.num_edges == 0:
        raise DomainError("k-partiteness is undecidable for an edgeless pattern (no edge to realize)")
    if F.n > MAX_PATTERN_VERTICES:
        raise ResourceError(f"pattern has {F.n} vertices; realization search is limited to {MAX_PATTERN_VERTICES}")
    budget = as_budget(budget, "realization search")
    k = F.k
    deg = F.vertex_degrees()
    shared = [v for v in _search_order(F) if deg[v] >= 2]
    isolated = sum(1 for d in deg if d == 0)
    incident: list[list[tuple[int, ...]]] = [[] for _ in F.vertices]
    for e in F.edges:
        for v in e:
            incident[v].append(e)
    spreads = [c for c in itertools.product(range(isolated + 1), repeat=k) if sum(c) == isolated]
    color = [-1] * F.n
    found: set[tuple[int, ...]] = set()

    def leaf() -> None:
        counts = [0] * k
        for v in shared:
            counts[color[v]] += 1
        for e in F.edges:
            taken = {color[v] for v in e if deg[v] >= 2}
            for c in range(k):
                if c not in taken:
                    counts[c] += 1
        for spread in spreads:
            sizes = [a + b for a, b in zip(counts, spread)]
            if all(sizes):
                found.add(tuple(sorted(sizes)))

    def extend(i: int, used: int) -> None:
        budget.tick()
        if i == len(shared):
            leaf()
            return
        v = shared[i]
        blocked = {color[u] for e in incident[v] for u in e if color[u] >= 0}
        for c in range(min(used + 1, k)):
            if c not in blocked:
                color[v] = c
                extend(i + 1, max(used, c + 1))
                color[v] = -1

    extend(0, 0)
    return found


def structural_invariants(F: Hypergraph, budget: Budget | int | None = None) -> InvariantReport:
    budget = as_budget(budget, "invariant computation")
    profiles = class_size_profiles(F, budget)
    if not profiles:
        raise NotPartiteError(
            "pattern admits no k-partite realization",
            nodes_explored=budget.used,
            vertex_order=_search_order(F),
        )
    s_set: set[int] = set()
    d_set: set[int] = set()
    for sizes in profiles:
        s_set.update(sizes)
        d_set.update(abs(x - y) for x in sizes for y in sizes)
    sigma = Fraction(min(s_set), F.n)
    tau = vertex_cover_number(F, budget)
    return InvariantReport(frozenset(s_set), frozenset(d_set), gcd_of(d_set), sigma, tau, frozenset(profiles))
