"""Exact small-instance search: copies of a pattern, perfect and maximum tilings,
Turán and codegree-Turán numbers, Steiner systems and extremality deficits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .budget import Budget, as_budget
from .errors import DomainError, ResourceError
from .hypergraph import Hypergraph, codegree_counts, min_d_degree

# ---------------------------------------------------------------------------
# embeddings


class _Pattern:
    """Search plan for embedding a pattern: vertex order and the edges each step closes."""

    def __init__(self, F: Hypergraph):
        self.F = F
        self.m = F.n
        deg = F.vertex_degrees()
        self.deg = deg
        incident = [[] for _ in F.vertices]
        for e in F.edges:
            for v in e:
                incident[v].append(e)
        order: list[int] = []
        placed: set[int] = set()
        while len(order) < F.n:
            def score(v):
                closes = sum(1 for e in incident[v] if placed.issuperset(x for x in e if x != v))
                touch = sum(1 for e in incident[v] for x in e if x in placed)
                return (closes, touch, deg[v], -v)

            v = max((u for u in F.vertices if u not in placed), key=score)
            order.append(v)
            placed.add(v)
        self.order = order
        pos = {v: i for i, v in enumerate(order)}
        self.closing: list[list[tuple[int, ...]]] = [[] for _ in order]
        for e in F.edges:
            self.closing[max(pos[v] for v in e)].append(e)
        self.sorted_deg = sorted(deg, reverse=True)
        self.twins = _twin_classes(F)


def _twin_classes(F: Hypergraph) -> list[tuple[int, ...]]:
    """For each vertex, the other vertices v with (u v) an automorphism of F.

    Twins are interchangeable, so an embedding exists iff one exists mapping
    every twin class in increasing order.
    """
    edges = F.edge_set
    parent = list(F.vertices)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in itertools.combinations(F.vertices, 2):
        if find(u) == find(v):
            continue
        swap = {u: v, v: u}
        if all(tuple(sorted(swap.get(x, x) for x in e)) in edges for e in F.edges):
            parent[find(v)] = find(u)
    classes: dict[int, list[int]] = {}
    for v in F.vertices:
        classes.setdefault(find(v), []).append(v)
    return [tuple(w for w in classes[find(v)] if w != v) for v in F.vertices]


_PATTERN_CACHE: dict[Hypergraph, _Pattern] = {}


def _pattern(F: Hypergraph) -> _Pattern:
    plan = _PATTERN_CACHE.get(F)
    if plan is None:
        if len(_PATTERN_CACHE) > 256:
            _PATTERN_CACHE.clear()
        plan = _PATTERN_CACHE[F] = _Pattern(F)
    return plan


def _embeddings(
    plan: _Pattern,
    U: tuple[int, ...],
    edge_masks,
    budget: Budget,
    fixed=None,
    ordered_twins: bool = True,
    deg=None,
) -> Iterator[list[int]]:
    """Bijections V(F) -> U mapping every edge of F to an edge of the host.

    ``edge_masks`` is the host edge set as bitmasks. ``fixed`` pins some
    pattern vertices to host vertices. With ``ordered_twins`` only embeddings
    that are increasing on every twin class are produced (enough for
    existence and for the lexicographically least embedding). ``deg`` maps
    host vertices to degree upper bounds; by default degrees inside U.
    """
    phi = [-1] * plan.m
    used: set[int] = set()
    local_deg = _local_degrees(U, edge_masks, plan.F.k) if deg is None else deg
    fixed = fixed or {}

    def rec(i: int) -> Iterator[list[int]]:
        if i == plan.m:
            yield list(phi)
            return
        budget.tick()
        v = plan.order[i]
        cands = (fixed[v],) if v in fixed else U
        for w in cands:
            if w in used or local_deg[w] < plan.deg[v]:
                continue
            if ordered_twins and any(phi[u] >= 0 and (u < v) != (phi[u] < w) for u in plan.twins[v]):
                continue
            phi[v] = w
            ok = True
            for e in plan.closing[i]:
                mask = 0
                for x in e:
                    mask |= 1 << phi[x]
                if mask not in edge_masks:
                    ok = False
                    break
            if ok:
                used.add(w)
                yield from rec(i + 1)
                used.discard(w)
        phi[v] = -1

    yield from rec(0)


def _local_degrees(U, edge_masks, k: int) -> dict[int, int]:
    deg = dict.fromkeys(U, 0)
    for combo in itertools.combinations(U, k):
        if sum(1 << w for w in combo) in edge_masks:
            for w in combo:
                deg[w] += 1
    return deg


def _least_embedding(plan: _Pattern, U, edge_masks, budget: Budget) -> list[int] | None:
    """Lexicographically least embedding (as the tuple phi(0), ..., phi(m-1)) onto U."""
    if next(_embeddings(plan, U, edge_masks, budget), None) is None:
        return None
    fixed: dict[int, int] = {}
    for v in range(plan.m):
        for w in U:
            if w in fixed.values():
                continue
            trial = dict(fixed)
            trial[v] = w
            if next(_embeddings(plan, U, edge_masks, budget, trial), None) is not None:
                fixed = trial
                break
    return [fixed[v] for v in range(plan.m)]


@dataclass(frozen=True, order=True)
class Copy:
    """A vertex m-set hosting a spanning copy of the pattern, with one witness embedding."""

    vertices: tuple[int, ...]
    embedding: tuple[int, ...]

    def embedding_map(self) -> dict[int, int]:
        return dict(enumerate(self.embedding))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "embedding": {str(v): w for v, w in enumerate(self.embedding)}}


def _check_size(H: Hypergraph, F: Hypergraph) -> None:
    if H.k != F.k:
        raise DomainError(f"host is {H.k}-uniform but pattern is {F.k}-uniform")
    if F.n > 12:
        raise ResourceError(f"pattern has {F.n} vertices; copy search is limited to 12")


def _copy_sets(H: Hypergraph, F: Hypergraph, budget: Budget) -> Iterator[tuple[int, ...]]:
    """Vertex sets of copies of F, possibly repeated, in discovery order.

    One embedding search over the whole host; twin ordering removes most of
    the automorphic repeats.
    """
    plan = _pattern(F)
    masks = H.edge_masks
    host_deg = dict(enumerate(H.vertex_degrees()))
    for phi in _embeddings(plan, tuple(H.vertices), masks, budget, deg=host_deg):
        yield tuple(sorted(phi))


def _prepare(H: Hypergraph, F: Hypergraph, budget) -> Budget | None:
    _check_size(H, F)
    budget = as_budget(budget, "copy enumeration")
    if F.n > H.n or (F.num_edges and not H.num_edges):
        return None
    budget.require(math.comb(H.n, F.n), "copy enumeration")
    return budget


def iter_copies(H: Hypergraph, F: Hypergraph, budget: Budget | int | None = None) -> Iterator[Copy]:
    """Copies of ``F`` in ``H`` in lexicographic order of their vertex sets."""
    budget = _prepare(H, F, budget)
    if budget is None:
        return
    plan = _pattern(F)
    masks = H.edge_masks
    for U in sorted(set(_copy_sets(H, F, budget))):
        phi = _least_embedding(plan, U, masks, budget)
        yield Copy(U, tuple(phi))


def enumerate_copies(H: Hypergraph, F: Hypergraph, budget: Budget | int | None = None) -> list[Copy]:
    return list(iter_copies(H, F, budget))


def count_embeddings(H: Hypergraph, F: Hypergraph, U: Iterable[int], budget: Budget | int | None = None) -> int:
    """Number of bijections V(F) -> U that are edge-preserving into H."""
    plan = _pattern(F)
    return sum(1 for _ in _embeddings(plan, tuple(sorted(U)), H.edge_masks, as_budget(budget), ordered_twins=False))


def is_subgraph_free(H: Hypergraph, F: Hypergraph, budget: Budget | int | None = None) -> bool:
    """True iff H has no copy of F; stops at the first copy found."""
    budget = _prepare(H, F, budget)
    if budget is None:
        return True
    return next(_copy_sets(H, F, budget), None) is None


# ---------------------------------------------------------------------------
# tilings


@dataclass(frozen=True)
class TilingCertificate:
    copies: tuple[Copy, ...]
    covered: int

    def verify(self, H: Hypergraph, F: Hypergraph) -> bool:
        """Re-check disjointness and every witness embedding against H."""
        seen: set[int] = set()
        for c in self.copies:
            if len(c.vertices) != F.n or len(c.embedding) != F.n:
                return False
            if sorted(c.embedding) != list(c.vertices):
                return False
            if seen.intersection(c.vertices):
                return False
            seen.update(c.vertices)
            for e in F.edges:
                if not H.has_edge(c.embedding[v] for v in e):
                    return False
        return self.covered == len(seen)

    def is_perfect(self, H: Hypergraph) -> bool:
        return self.covered == H.n

    def to_dict(self) -> dict:
        return {"copies": [c.to_dict() for c in self.copies], "covered": self.covered}


def _copy_index(copies: list[Copy], n: int) -> list[list[tuple[int, Copy]]]:
    by_vertex: list[list[tuple[int, Copy]]] = [[] for _ in range(n)]
    for c in copies:
        mask = sum(1 << v for v in c.vertices)
        for v in c.vertices:
            by_vertex[v].append((mask, c))
    return by_vertex


def has_perfect_tiling(H: Hypergraph, F: Hypergraph, budget: Budget | int | None = None) -> TilingCertificate | None:
    """Exact cover of V(H) by copies of F, or ``None``.

    Depth-first search branching on the lowest uncovered vertex with
    candidate copies in lexicographic order, so the certificate returned is
    the lexicographically least tiling. Dead cover states are memoised.
    """
    if F.n == 0 or H.n % F.n:
        raise DomainError(f"|V(F)| = {F.n} does not divide n = {H.n}")
    budget = as_budget(budget, "tiling search")
    copies = enumerate_copies(H, F, budget)
    by_vertex = _copy_index(copies, H.n)
    full = (1 << H.n) - 1
    dead: set[int] = set()
    chosen: list[Copy] = []

    def search(covered: int) -> bool:
        if covered == full:
            return True
        if covered in dead:
            return False
        budget.tick()
        free = full & ~covered
        # fail fast: every uncovered vertex needs an available copy
        v = 0
        rest = free
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if not any(not (mask & covered) for mask, _ in by_vertex[u]):
                dead.add(covered)
                return False
            rest ^= low
        v = (free & -free).bit_length() - 1
        for mask, c in by_vertex[v]:
            if mask & covered:
                continue
            chosen.append(c)
            if search(covered | mask):
                return True
            chosen.pop()
        dead.add(covered)
        return False

    if H.n == 0:
        return TilingCertificate((), 0)
    if search(0):
        return TilingCertificate(tuple(chosen), H.n)
    return None


def max_tiling(H: Hypergraph, F: Hypergraph, budget: Budget | int | None = None) -> TilingCertificate:
    """A maximum family of vertex-disjoint copies of F.

    Memoised recursion over the set of still-free vertices: the lowest free
    vertex is either covered by a copy inside the free set or left uncovered.
    Stops early once floor(free/m) copies are reached.
    """
    _check_size(H, F)
    budget = as_budget(budget, "max tiling search")
    copies = enumerate_copies(H, F, budget)
    by_vertex = _copy_index(copies, H.n)
    m = F.n
    memo: dict[int, tuple[int, tuple[Copy, ...]]] = {}

    def best(free: int) -> tuple[int, tuple[Copy, ...]]:
        if free in memo:
            return memo[free]
        budget.tick()
        cap = bin(free).count("1") // m
        if cap == 0:
            return (0, ())
        v = (free & -free).bit_length() - 1
        result = (-1, ())
        for mask, c in by_vertex[v]:
            if mask & ~free:
                continue
            cnt, fam = best(free & ~mask)
            if cnt + 1 > result[0]:
                result = (cnt + 1, (c,) + fam)
                if result[0] == cap:
                    break
        if result[0] < cap:
            cnt, fam = best(free & ~(1 << v))
            if cnt > result[0]:
                result = (cnt, fam)
        memo[free] = result
        return result

    if m == 0 or not copies:
        return TilingCertificate((), 0)
    count, family = best((1 << H.n) - 1)
    return TilingCertificate(family, count * m)


# ---------------------------------------------------------------------------
# Steiner systems and extremality


def is_steiner_system(H: Hypergraph, t: int) -> bool:
    """Every t-subset of V(H) lies in exactly one edge."""
    if not 1 <= t < H.k:
        raise DomainError(f"t must lie in [1, {H.k - 1}], got {t}")
    counts = codegree_counts(H, t)
    return len(counts) == math.comb(H.n, t) and all(c == 1 for c in counts.values())


def extremal_deficit(H: Hypergraph, sigma, B: Iterable[int] | None = None, budget: Budget | int | None = None) -> Fraction:
    """e(B) / binom(|B|, k) for |B| = floor((1 - sigma) n); minimised over B when B is None."""
    sigma = Fraction(sigma)
    if not 0 <= sigma <= 1:
        raise DomainError(f"sigma must lie in [0, 1], got {sigma}")
    size = math.floor((1 - sigma) * H.n)
    denom = math.comb(size, H.k)

    def ratio(count: int) -> Fraction:
        return Fraction(count, denom) if denom else Fraction(0)

    if B is not None:
        B = set(B)
        if len(B) != size:
            raise DomainError(f"|B| = {len(B)} but floor((1-sigma)n) = {size}")
        if any(v < 0 or v >= H.n for v in B):
            raise DomainError("B is not a subset of V(H)")
        return ratio(sum(1 for e in H.edges if B.issuperset(e)))
    if H.n > 16:
        raise ResourceError(f"exhaustive extremality check is limited to n <= 16, got {H.n}")
    budget = as_budget(budget, "extremality search")
    budget.require(math.comb(H.n, size), "extremality search")
    masks = [sum(1 << v for v in e) for e in H.edges]
    best = None
    for Bset in itertools.combinations(range(H.n), size):
        budget.tick()
        bm = sum(1 << v for v in Bset)
        cnt = sum(1 for e in masks if e & bm == e)
        if best is None or cnt < best:
            best = cnt
            if cnt == 0:
                break
    return ratio(best or 0)


# ---------------------------------------------------------------------------
# Turán numbers


def canonical_form(n: int, k: int, edges: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Canonical edge list of a k-graph on n vertices.

    Vertices are colour-refined by an isomorphism-invariant signature; the
    minimum relabelled edge list over all cell-respecting orderings is taken.
    """
    edges = [tuple(e) for e in edges]
    incident = [[] for _ in range(n)]
    for e in edges:
        for v in e:
            incident[v].append(e)
    color = [0] * n
    while True:
        sigs = [
            (color[v], tuple(sorted(tuple(sorted(color[u] for u in e if u != v)) for e in incident[v])))
            for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(color)):
            color = new
            break
        color = new
    cells = [[v for v in range(n) if color[v] == c] for c in sorted(set(color))]
    best = None
    for choice in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        label = [0] * n
        i = 0
        for block in choice:
            for v in block:
                label[v] = i
                i += 1
        form = tuple(sorted(tuple(sorted(label[v] for v in e)) for e in edges))
        if best is None or form < best:
            best = form
    return best if best is not None else ()


def _creates_copy(n: int, edge_masks: frozenset[int], new_edge: tuple[int, ...], F: Hypergraph, budget: Budget) -> bool:
    """Does adding ``new_edge`` create a copy of F (necessarily through new_edge)?"""
    plan = _pattern(F)
    others = [v for v in range(n) if v not in new_edge]
    for extra in itertools.combinations(others, F.n - F.k):
        U = tuple(sorted(new_edge + extra))
        if next(_embeddings(plan, U, edge_masks, budget), None) is not None:
            return True
    return False


@dataclass(frozen=True)
class TuranResult:
    ex: int
    coex: int
    ex_witness: Hypergraph
    coex_witness: Hypergraph
    classes: int
    mode: str


def _f_free_classes(n: int, F: Hypergraph, budget: Budget) -> Iterator[Hypergraph]:
    """All F-free k-graphs on n vertices up to isomorphism, by edge count.

    F-freeness is closed under edge deletion, so every class with e+1 edges
    is an augmentation of some class with e edges.
    """
    k = F.k
    all_edges = list(itertools.combinations(range(n), k))
    layer = {(): Hypergraph.empty(k, n)}
    while layer:
        yield from layer.values()
        nxt: dict = {}
        for form, G in layer.items():
            masks = G.edge_masks
            present = G.edge_set
            for e in all_edges:
                if e in present:
                    continue
                budget.tick()
                new_mask = sum(1 << v for v in e)
                new_masks = masks | {new_mask}
                if F.num_edges and F.n <= n and _creates_copy(n, new_masks, e, F, budget):
                    continue
                cf = canonical_form(n, k, G.edges + (e,))
                if cf not in nxt:
                    nxt[cf] = Hypergraph(k, n, cf)
        layer = nxt


def _f_free_exhaustive(n: int, F: Hypergraph, budget: Budget) -> Iterator[Hypergraph]:
    k = F.k
    all_edges = list(itertools.combinations(range(n), k))
    if len(all_edges) > 20:
        raise ResourceError(f"exhaustive Turán search over 2^{len(all_edges)} edge sets is not supported")
    for bits in range(1 << len(all_edges)):
        budget.tick()
        G = Hypergraph(k, n, tuple(e for i, e in enumerate(all_edges) if bits >> i & 1))
        if F.num_edges == 0 or F.n > n or is_subgraph_free(G, F, budget):
            yield G


def turan_search(n: int, F: Hypergraph, mode: str = "auto", budget: Budget | int | None = None) -> TuranResult:
    """ex(n, F) and coex(n, F) by enumerating F-free k-graphs on n vertices.

    ``mode`` is ``"exhaustive"`` (every labelled edge set), ``"orderly"``
    (isomorph-reduced augmentation) or ``"auto"`` (exhaustive below n = 6).
    """
    if n < F.k:
        raise DomainError(f"n = {n} is smaller than the uniformity {F.k}")
    if F.n > 12:
        raise ResourceError(f"pattern has {F.n} vertices; copy search is limited to 12")
    budget = as_budget(budget, "Turán search")
    if mode == "auto":
        mode = "exhaustive" if n <= 5 else "orderly"
    if F.num_edges == 0 and F.n <= n:
        raise DomainError("every k-graph on n vertices contains an edgeless pattern; ex is undefined")
    if mode == "exhaustive":
        source = _f_free_exhaustive(n, F, budget)
    elif mode == "orderly":
        source = _f_free_classes(n, F, budget)
    else:
        raise DomainError(f"unknown Turán search mode {mode!r}")
    ex_w = coex_w = None
    ex = coex = -1
    count = 0
    for G in source:
        count += 1
        if G.num_edges > ex:
            ex, ex_w = G.num_edges, G
        c = min_d_degree(G, F.k - 1)
        if c > coex:
            coex, coex_w = c, G
    return TuranResult(ex, coex, ex_w, coex_w, count, mode)


def turan_brute(n: int, F: Hypergraph, mode: str = "auto", budget: Budget | int | None = None) -> int:
    """ex(n, F): maximum edge count of an F-free k-graph on n vertices."""
    if F.num_edges == 1 and F.n == F.k:
        return 0
    return turan_search(n, F, mode, budget).ex


def coex_brute(n: int, F: Hypergraph, mode: str = "auto", budget: Budget | int | None = None) -> int:
    """coex(n, F): maximum minimum codegree of an F-free k-graph on n vertices."""
    if F.num_edges == 1 and F.n == F.k:
        return 0
    return turan_search(n, F, mode, budget).coex
