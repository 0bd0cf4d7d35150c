"""k-uniform hypergraphs on dense vertex ranges, pattern generators and the ``.hg`` format."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .budget import Budget, as_budget
from .errors import DomainError, FormatError, InvalidProfileError, ShapeError

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A k-graph on vertices ``0..n-1``.

    Edges are sorted tuples, stored in sorted order without duplicates, so two
    hypergraphs compare equal iff they have the same ``k``, ``n`` and edge set.
    ``parts`` is generator metadata (the vertex classes of a complete
    k-partite graph, for instance) and takes no part in equality.
    """

    k: int
    n: int
    edges: tuple[Edge, ...]
    parts: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise DomainError(f"uniformity must be at least 2, got {self.k}")
        if self.n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {self.n}")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(t) != self.k or len(set(t)) != self.k:
                raise DomainError(f"edge {e} is not a {self.k}-set")
            if t[0] < 0 or t[-1] >= self.n:
                raise DomainError(f"edge {e} has a vertex outside [0, {self.n})")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, k: int, n: int, edges: Iterable[Iterable[int]], parts=None) -> Hypergraph:
        return cls(k, n, tuple(tuple(e) for e in edges), parts)

    @classmethod
    def empty(cls, k: int, n: int) -> Hypergraph:
        return cls(k, n, ())

    @classmethod
    def complete(cls, k: int, n: int) -> Hypergraph:
        return cls(k, n, tuple(itertools.combinations(range(n), k)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return self.n

    @property
    def edge_set(self) -> frozenset[Edge]:
        try:
            return self._edge_set
        except AttributeError:
            s = frozenset(self.edges)
            object.__setattr__(self, "_edge_set", s)
            return s

    @property
    def edge_masks(self) -> frozenset[int]:
        """Edges as vertex bitmasks, for fast membership tests."""
        try:
            return self._edge_masks
        except AttributeError:
            s = frozenset(_mask(e) for e in self.edges)
            object.__setattr__(self, "_edge_masks", s)
            return s

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def vertex_degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def induced(self, vertices: Iterable[int]) -> list[Edge]:
        """Edges of the sub-hypergraph induced on ``vertices`` (original labels)."""
        vs = set(vertices)
        return [e for e in self.edges if vs.issuperset(e)]

    def relabel(self, perm: Sequence[int]) -> Hypergraph:
        """Image under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("relabeling must be a permutation of the vertex range")
        return Hypergraph(self.k, self.n, tuple(tuple(perm[v] for v in e) for e in self.edges))

    def add_edges(self, edges: Iterable[Iterable[int]]) -> Hypergraph:
        return Hypergraph(self.k, self.n, self.edges + tuple(tuple(e) for e in edges), self.parts)

    def with_isolated(self, extra: int) -> Hypergraph:
        return Hypergraph(self.k, self.n + extra, self.edges, self.parts)

    def disjoint_union(self, other: Hypergraph) -> Hypergraph:
        if other.k != self.k:
            raise DomainError("cannot join hypergraphs of different uniformity")
        shifted = tuple(tuple(v + self.n for v in e) for e in other.edges)
        return Hypergraph(self.k, self.n + other.n, self.edges + shifted)


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class PartiteProfile:
    """Part sizes a_1 <= ... <= a_k of a complete k-partite k-graph."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(a) for a in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise InvalidProfileError(f"profile needs at least 2 parts, got {sizes}")
        if any(a < 1 for a in sizes):
            raise InvalidProfileError(f"profile entries must be positive, got {sizes}")
        if list(sizes) != sorted(sizes):
            raise InvalidProfileError(f"profile must be nondecreasing, got {sizes}")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def m(self) -> int:
        return sum(self.sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __getitem__(self, i):
        return self.sizes[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.sizes)) + ")"

    def is_khat_shape(self) -> bool:
        """True for (a, b, ..., b) with a < b."""
        a, *rest = self.sizes
        return len(set(rest)) == 1 and a < rest[0]

    def require_khat_shape(self) -> tuple[int, int]:
        if not self.is_khat_shape():
            raise ShapeError(f"profile {self} is not of the form (a, b, ..., b) with a < b")
        return self.sizes[0], self.sizes[1]


def as_profile(p) -> PartiteProfile:
    if isinstance(p, PartiteProfile):
        return p
    return PartiteProfile(tuple(p))


# ---------------------------------------------------------------------------
# generators


def complete_partite(profile) -> Hypergraph:
    """K^(k)(a_1, ..., a_k) with part i on the next a_i consecutive indices."""
    profile = as_profile(profile)
    parts = []
    start = 0
    for a in profile.sizes:
        parts.append(tuple(range(start, start + a)))
        start += a
    edges = tuple(itertools.product(*parts))
    return Hypergraph(profile.k, profile.m, edges, tuple(parts))


def loose_cycle(k: int, s: int) -> Hypergraph:
    """C_s^k: s edges on s(k-1) vertices, edge j = {j(k-1), ..., j(k-1)+k-1} mod s(k-1)."""
    if k < 3 or s < 2:
        raise DomainError(f"loose cycle needs k >= 3 and s >= 2, got k={k}, s={s}")
    n = s * (k - 1)
    edges = tuple(tuple((j * (k - 1) + i) % n for i in range(k)) for j in range(s))
    return Hypergraph(k, n, edges)


def loose_path(k: int, s: int) -> Hypergraph:
    """P_s^k: s edges in a row, consecutive edges sharing exactly one vertex.

    The wrap-around edge of the loose cycle is dropped, giving s(k-1)+1 vertices.
    """
    if k < 3 or s < 1:
        raise DomainError(f"loose path needs k >= 3 and s >= 1, got k={k}, s={s}")
    n = s * (k - 1) + 1
    edges = tuple(tuple(range(j * (k - 1), j * (k - 1) + k)) for j in range(s))
    return Hypergraph(k, n, edges)


def khat_extension(profile) -> Hypergraph:
    """K' = K(a, b, ..., b) plus k-1 fresh vertices and one edge through them.

    The extra edge uses the first vertex of part 2 (a large class). Parts
    metadata keeps the K' layout; the fresh vertices are ``m..m+k-2``.
    """
    profile = as_profile(profile)
    profile.require_khat_shape()
    base = complete_partite(profile)
    k, m = profile.k, profile.m
    v = base.parts[1][0]
    extra = (v,) + tuple(range(m, m + k - 1))
    return Hypergraph(k, m + k - 1, base.edges + (extra,), base.parts)


def fano_plane() -> Hypergraph:
    """The Steiner triple system S(2, 3, 7), lines {i, i+1, i+3} mod 7."""
    return Hypergraph(3, 7, tuple((i, (i + 1) % 7, (i + 3) % 7) for i in range(7)))


# ---------------------------------------------------------------------------
# degrees


def degree_of_set(H: Hypergraph, S: Iterable[int]) -> int:
    """Number of edges of ``H`` containing ``S``."""
    S = set(S)
    if len(S) > H.k:
        raise DomainError(f"|S| = {len(S)} exceeds k = {H.k}")
    if any(v < 0 or v >= H.n for v in S):
        raise DomainError(f"S = {sorted(S)} is not a subset of the vertex set")
    return sum(1 for e in H.edges if S.issubset(e))


def codegree_counts(H: Hypergraph, d: int) -> dict[Edge, int]:
    """Degree of every d-subset that lies in at least one edge."""
    counts: dict[Edge, int] = {}
    for e in H.edges:
        for S in itertools.combinations(e, d):
            counts[S] = counts.get(S, 0) + 1
    return counts


def min_d_degree(H: Hypergraph, d: int) -> int:
    """delta_d(H): minimum degree over all d-subsets of V(H)."""
    if not 1 <= d <= H.k - 1:
        raise DomainError(f"d must lie in [1, {H.k - 1}], got {d}")
    if H.n < d:
        raise DomainError(f"no {d}-subsets in a {H.n}-vertex hypergraph")
    counts = codegree_counts(H, d)
    if len(counts) < math.comb(H.n, d):
        return 0
    return min(counts.values())


def max_d_degree(H: Hypergraph, d: int) -> int:
    if not 1 <= d <= H.k - 1:
        raise DomainError(f"d must lie in [1, {H.k - 1}], got {d}")
    counts = codegree_counts(H, d)
    return max(counts.values(), default=0)


# ---------------------------------------------------------------------------
# isomorphism (brute force, small n)


def find_isomorphism(G: Hypergraph, H: Hypergraph, budget: Budget | int | None = None) -> list[int] | None:
    """A bijection ``phi`` with ``phi(E(G)) = E(H)``, or ``None``.

    Plain backtracking with degree filtering; intended for n <= 12.
    """
    if (G.k, G.n, G.num_edges) != (H.k, H.n, H.num_edges):
        return None
    if sorted(G.vertex_degrees()) != sorted(H.vertex_degrees()):
        return None
    budget = as_budget(budget, "isomorphism search")
    dg, dh = G.vertex_degrees(), H.vertex_degrees()
    order = sorted(G.vertices, key=lambda v: -dg[v])
    pos = {v: i for i, v in enumerate(order)}
    # edges of G that become fully mapped once vertex order[i] is placed
    closing: list[list[Edge]] = [[] for _ in order]
    for e in G.edges:
        closing[max(pos[v] for v in e)].append(e)
    target = H.edge_set
    phi = [-1] * G.n
    used = [False] * H.n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        budget.tick()
        v = order[i]
        for w in H.vertices:
            if used[w] or dh[w] != dg[v]:
                continue
            phi[v] = w
            if all(tuple(sorted(phi[x] for x in e)) in target for e in closing[i]):
                used[w] = True
                if place(i + 1):
                    return True
                used[w] = False
        phi[v] = -1
        return False

    return list(phi) if place(0) else None


def is_isomorphic(G: Hypergraph, H: Hypergraph, budget=None) -> bool:
    return find_isomorphism(G, H, budget) is not None


# ---------------------------------------------------------------------------
# .hg text format

CERTIFICATE_TAG = "#certificate "


def format_hg(H: Hypergraph, certificate: dict | None = None, comments: Sequence[str] = ()) -> str:
    """Serialize to ``.hg``: ``k n`` header, then one ascending edge per line."""
    lines = [f"# {c}" for c in comments]
    if certificate is not None:
        lines.append(CERTIFICATE_TAG + json.dumps(certificate, sort_keys=True, separators=(",", ":")))
    lines.append(f"{H.k} {H.n}")
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse_hg(text: str) -> Hypergraph:
    H, _ = parse_hg_with_certificate(text)
    return H


def parse_hg_with_certificate(text: str) -> tuple[Hypergraph, dict | None]:
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline", line=text.count("\n") + 1)
    header: tuple[int, int] | None = None
    certificate = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        if line.startswith("#"):
            if line.startswith(CERTIFICATE_TAG):
                try:
                    certificate = json.loads(line[len(CERTIFICATE_TAG):])
                except json.JSONDecodeError as exc:
                    raise FormatError(f"bad certificate JSON: {exc.msg}", line=lineno) from None
            continue
        fields = line.split(" ")
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise FormatError(f"expected integers separated by single spaces, got {line!r}", line=lineno) from None
        if header is None:
            if len(nums) != 2:
                raise FormatError("header must be 'k n'", line=lineno)
            k, n = nums
            if k < 2 or n < 0:
                raise FormatError(f"invalid header k={k} n={n}", line=lineno)
            header = (k, n)
            continue
        k, n = header
        if len(nums) != k:
            raise FormatError(f"edge has {len(nums)} vertices, expected {k}", line=lineno)
        if any(b <= a for a, b in zip(nums, nums[1:])):
            raise FormatError("edge vertices must be strictly ascending", line=lineno)
        if nums[0] < 0 or nums[-1] >= n:
            raise FormatError(f"vertex out of range [0, {n})", line=lineno)
        e = tuple(nums)
        if e in seen:
            raise FormatError(f"duplicate edge (first seen on line {seen[e]})", line=lineno)
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise FormatError("missing 'k n' header")
    return Hypergraph(header[0], header[1], tuple(edges)), certificate


def read_hg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def write_hg(path, H: Hypergraph, certificate: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hg(H, certificate))
