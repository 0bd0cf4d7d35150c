"""Fractional hom(K')-tilings: validation, the standard and extended weightings,
and an exact maximiser for small hypergraphs.

A weighting h assigns a nonnegative rational to each incident (vertex, edge)
pair. It is a fractional hom(K')-tiling for a profile a_1 <= ... <= a_k when

1. h(v, e) != 0 only if v is in e,
2. every vertex has total weight at most 1, and
3. every edge can be labelled v_1 ... v_k with h(v_1,e) <= ... <= h(v_k,e)
   and h(v_1,e)/a_1 >= ... >= h(v_k,e)/a_k.

Edges are referred to by their index in ``L.edges``. Everything is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .budget import Budget, as_budget
from .errors import DomainError, ResourceError, StructuralError
from .hypergraph import Hypergraph, PartiteProfile, as_profile, complete_partite, khat_extension
from .invariants import format_fraction


@dataclass
class FractionalTiling:
    weights: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    labelings: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def vertex_sums(self) -> dict[int, Fraction]:
        sums: dict[int, Fraction] = {}
        for (v, _), w in self.weights.items():
            sums[v] = sums.get(v, Fraction(0)) + w
        return sums

    def scaled(self, c) -> FractionalTiling:
        c = Fraction(c)
        return FractionalTiling({key: w * c for key, w in self.weights.items()}, dict(self.labelings))

    def to_dict(self) -> dict:
        entries = [
            {"vertex": v, "edge": e, "weight": format_fraction(w)}
            for (v, e), w in sorted(self.weights.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            if w
        ]
        return {"entries": entries, "labelings": {str(e): list(lab) for e, lab in sorted(self.labelings.items())}}

    @classmethod
    def from_dict(cls, data: dict) -> FractionalTiling:
        weights = {(int(d["vertex"]), int(d["edge"])): Fraction(d["weight"]) for d in data.get("entries", [])}
        labelings = {int(e): tuple(lab) for e, lab in data.get("labelings", {}).items()}
        return cls(weights, labelings)


@dataclass(frozen=True)
class Validation:
    valid: bool
    weight: Fraction
    h_min: Fraction | None  # None stands for infinity (h identically zero)
    violations: tuple[str, ...] = ()
    labelings: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "weight": format_fraction(self.weight),
            "h_min": "inf" if self.h_min is None else format_fraction(self.h_min),
            "violations": list(self.violations),
        }


def _labeling_ok(weights: list[Fraction], sizes: tuple[int, ...]) -> bool:
    """Condition 3 for weights listed in labelled order."""
    for i in range(len(weights) - 1):
        x, y = weights[i], weights[i + 1]
        if x > y or x * sizes[i + 1] < y * sizes[i]:
            return False
    return True


def find_labeling(edge: tuple[int, ...], h_of, sizes: tuple[int, ...], preferred=None) -> tuple[int, ...] | None:
    """A labelling of ``edge`` satisfying condition 3, or ``None``.

    Tries ``preferred``, then the weight-sorted order, then all k! orders.
    """
    tried = []
    if preferred is not None and sorted(preferred) == sorted(edge):
        tried.append(tuple(preferred))
    tried.append(tuple(sorted(edge, key=lambda v: (h_of(v), v))))
    for lab in itertools.chain(tried, itertools.permutations(edge)):
        if _labeling_ok([h_of(v) for v in lab], sizes):
            return tuple(lab)
    return None


def validate(L: Hypergraph, profile, h: FractionalTiling) -> Validation:
    profile = as_profile(profile)
    if profile.k != L.k:
        raise DomainError(f"profile has {profile.k} parts but L is {L.k}-uniform")
    per_edge: dict[int, dict[int, Fraction]] = {}
    violations = []
    for (v, ei), w in h.weights.items():
        w = Fraction(w)
        if not 0 <= ei < L.num_edges:
            raise StructuralError(f"edge index {ei} out of range", vertex=v, edge=ei)
        if w and v not in L.edges[ei]:
            raise StructuralError(f"weight on non-incident pair ({v}, {L.edges[ei]})", vertex=v, edge=ei)
        if w < 0:
            violations.append(f"negative weight on ({v}, {ei})")
        if w:
            per_edge.setdefault(ei, {})[v] = w
    for v, total in sorted(h.vertex_sums().items()):
        if total > 1:
            violations.append(f"vertex {v} has total weight {format_fraction(total)} > 1")
    labelings = {}
    for ei, ws in sorted(per_edge.items()):
        edge = L.edges[ei]
        lab = find_labeling(edge, lambda v: ws.get(v, Fraction(0)), profile.sizes, h.labelings.get(ei))
        if lab is None:
            violations.append(f"edge {ei} {edge} admits no ordered labelling")
        else:
            labelings[ei] = lab
    nonzero = [Fraction(w) for w in h.weights.values() if w]
    return Validation(
        not violations,
        h.weight,
        min(nonzero) if nonzero else None,
        tuple(violations),
        labelings,
    )


def standard_weights(profile) -> FractionalTiling:
    """On K' = K(a, b, ..., b): each edge gets 1/b^(k-1) at its small-class vertex
    and 1/(a b^(k-2)) elsewhere, so every vertex has total weight exactly 1.
    """
    profile = as_profile(profile)
    a, b = profile.require_khat_shape()
    k = profile.k
    K = complete_partite(profile)
    small = Fraction(1, b ** (k - 1))
    large = Fraction(1, a) / Fraction(b) ** (k - 2)
    h = FractionalTiling()
    for ei, e in enumerate(K.edges):
        # edges are transversals in part order: e[0] is the small-class vertex
        h.weights[(e[0], ei)] = small
        for v in e[1:]:
            h.weights[(v, ei)] = large
        h.labelings[ei] = e
    return h


def extended_weights(profile) -> FractionalTiling:
    """Weighting of the one-edge extension of K' with total weight
    m - m/(a b^(k-1)) + m/(a^2 b^(k-2)).

    The new edge {v, u_1, ..., u_(k-1)} gets 1/(a b^(k-2)) at v and
    1/(a^2 b^(k-3)) at each u_i; the lexicographically first edge of K'
    through v is zeroed; all other edges keep the standard weights.
    """
    profile = as_profile(profile)
    a, b = profile.require_khat_shape()
    k = profile.k
    L = khat_extension(profile)
    base = standard_weights(profile)
    K = complete_partite(profile)
    new_edge = L.edges.index(next(e for e in L.edges if e not in K.edge_set))
    v = L.parts[1][0]
    e1 = next(e for e in K.edges if v in e)
    index_in_l = {e: i for i, e in enumerate(L.edges)}
    h = FractionalTiling()
    for (x, ei), w in base.weights.items():
        e = K.edges[ei]
        if e == e1:
            continue
        h.weights[(x, index_in_l[e])] = w
    for ei, lab in base.labelings.items():
        e = K.edges[ei]
        if e != e1:
            h.labelings[index_in_l[e]] = lab
    fresh = [x for x in L.edges[new_edge] if x != v]
    h.weights[(v, new_edge)] = Fraction(1, a) / Fraction(b) ** (k - 2)
    for u in fresh:
        h.weights[(u, new_edge)] = Fraction(1, a * a) / Fraction(b) ** (k - 3)
    h.labelings[new_edge] = (v, *fresh)
    return h


def extended_weight_formula(profile) -> Fraction:
    profile = as_profile(profile)
    a, b = profile.require_khat_shape()
    k, m = profile.k, profile.m
    return m - Fraction(m, a * b ** (k - 1)) + Fraction(m, a * a) / Fraction(b) ** (k - 2)


# ---------------------------------------------------------------------------
# maximisation


def _distinct_labelings(edge: tuple[int, ...], sizes: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Assignments of the edge's vertices to the groups of equal part sizes.

    Positions holding equal a_i are forced to carry equal weight, so only the
    group each vertex lands in matters.
    """
    groups = [len(list(g)) for _, g in itertools.groupby(sizes)]
    out = []

    def rec(remaining: tuple[int, ...], gi: int, acc: list):
        if gi == len(groups):
            out.append(tuple(acc))
            return
        for chosen in itertools.combinations(remaining, groups[gi]):
            rest = tuple(x for x in remaining if x not in chosen)
            acc.append(chosen)
            rec(rest, gi + 1, acc)
            acc.pop()

    rec(tuple(edge), 0, [])
    return out


def _solve(L: Hypergraph, sizes, assignment: list) -> tuple[Fraction, FractionalTiling]:
    """LP for a partial assignment; unassigned edges drop condition 3 (a relaxation)."""
    alphas = [s for s, _ in itertools.groupby(sizes)]
    columns: list[tuple] = []  # (edge index, vertices sharing this variable)
    rows: list[list] = []
    rhs: list = []
    for ei, e in enumerate(L.edges):
        if ei < len(assignment):
            group_cols = []
            for g in assignment[ei]:
                group_cols.append(len(columns))
                columns.append((ei, g))
            for gi in range(len(group_cols) - 1):
                x, y = group_cols[gi], group_cols[gi + 1]
                r = {x: 1, y: -1}  # y_g <= y_(g+1)
                rows.append(r)
                rhs.append(0)
                rows.append({y: alphas[gi], x: -alphas[gi + 1]})  # y_g/a_g >= y_(g+1)/a_(g+1)
                rhs.append(0)
        else:
            for v in e:
                columns.append((ei, (v,)))
    for v in L.vertices:
        r = {j: 1 for j, (_, vs) in enumerate(columns) if v in vs}
        if r:
            rows.append(r)
            rhs.append(1)
    c = [len(vs) for _, vs in columns]
    A = [[r.get(j, 0) for j in range(len(columns))] for r in rows]
    value, x = lp.maximize(c, A, rhs)
    h = FractionalTiling()
    for j, (ei, vs) in enumerate(columns):
        for v in vs:
            h.weights[(v, ei)] = x[j]
    for ei in range(min(len(assignment), L.num_edges)):
        h.labelings[ei] = tuple(v for g in assignment[ei] for v in g)
    return value, h


def maximize_small(L: Hypergraph, profile, budget: Budget | int | None = None) -> tuple[FractionalTiling, Fraction]:
    """Maximum-weight fractional hom(K')-tiling of a small L, exactly.

    Branch and bound over per-edge labellings (edges in index order, labellings
    in lexicographic order); each node solves the LP with condition 3 imposed
    on the decided edges only, which bounds every completion. Ties keep the
    lexicographically least assignment.
    """
    profile = as_profile(profile)
    if profile.k != L.k:
        raise DomainError(f"profile has {profile.k} parts but L is {L.k}-uniform")
    if L.num_edges > 12 or L.k > 5:
        raise ResourceError(f"maximize_small is limited to 12 edges and k <= 5, got {L.num_edges} edges, k={L.k}")
    budget = as_budget(budget, "fractional maximisation")
    sizes = profile.sizes
    options = [_distinct_labelings(e, sizes) for e in L.edges]
    cap = sum(1 for d in L.vertex_degrees() if d)
    best: list = [Fraction(-1), None]

    def search(assignment: list) -> None:
        budget.tick()
        value, h = _solve(L, sizes, assignment)
        if value <= best[0]:
            return
        if len(assignment) == L.num_edges:
            best[0], best[1] = value, h
            return
        for lab in options[len(assignment)]:
            assignment.append(lab)
            search(assignment)
            assignment.pop()
            if best[0] == cap:
                return

    search([])
    h = best[1]
    h.weights = {key: w for key, w in h.weights.items() if w}
    return h, best[0]
