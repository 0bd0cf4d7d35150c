import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilelab.errors import DomainError, FormatError, InvalidProfileError, ShapeError
from tilelab.hypergraph import (
    Hypergraph,
    PartiteProfile,
    complete_partite,
    degree_of_set,
    fano_plane,
    format_hg,
    is_isomorphic,
    khat_extension,
    loose_cycle,
    loose_path,
    min_d_degree,
    parse_hg,
    parse_hg_with_certificate,
    read_hg,
    write_hg,
)


@pytest.mark.parametrize("sizes, n, e", [((1, 1, 2), 4, 2), ((1, 2, 2), 5, 4), ((2, 3, 3), 8, 18)])
def test_complete_partite_counts(sizes, n, e):
    H = complete_partite(sizes)
    assert (H.n, H.num_edges) == (n, e)
    assert H.num_edges == math.prod(sizes)


def test_complete_partite_parts_are_consecutive():
    H = complete_partite((1, 2, 3))
    assert H.parts == ((0,), (1, 2), (3, 4, 5))
    for e in H.edges:
        assert [len(set(e) & set(p)) for p in H.parts] == [1, 1, 1]


@pytest.mark.parametrize("bad", [(2, 1, 1), (0, 1, 1), (1,), (1, -1, 2)])
def test_invalid_profiles(bad):
    with pytest.raises(InvalidProfileError):
        PartiteProfile(bad)


def test_loose_cycle_examples():
    C = loose_cycle(3, 4)
    assert (C.n, C.num_edges) == (8, 4)
    C42 = loose_cycle(4, 2)
    assert (C42.n, C42.num_edges) == (6, 2)
    assert len(set(C42.edges[0]) & set(C42.edges[1])) == 2
    assert is_isomorphic(loose_cycle(3, 2), complete_partite((1, 1, 2)))


@pytest.mark.parametrize("k, s", [(2, 3), (3, 1)])
def test_loose_cycle_domain(k, s):
    with pytest.raises(DomainError):
        loose_cycle(k, s)


def test_loose_path_examples():
    P = loose_path(4, 2)
    assert (P.n, P.num_edges) == (7, 2)
    assert len(set(P.edges[0]) & set(P.edges[1])) == 1
    assert loose_path(3, 1).edges == ((0, 1, 2),)
    P32 = loose_path(3, 2)
    assert P32.n == 5 and len(set(P32.edges[0]) & set(P32.edges[1])) == 1
    with pytest.raises(DomainError):
        loose_path(3, 0)


def test_khat_extension():
    L = khat_extension((1, 2, 2))
    assert (L.n, L.num_edges) == (7, 5)
    L4 = khat_extension((2, 3, 3, 3))
    assert (L4.n, L4.num_edges) == (14, 55)
    new = set(L.edges) - set(complete_partite((1, 2, 2)).edges)
    assert new == {(1, 5, 6)}
    with pytest.raises(ShapeError):
        khat_extension((1, 1, 2))


def test_degrees():
    K5 = Hypergraph.complete(3, 5)
    assert degree_of_set(K5, {0, 1}) == 3
    assert min_d_degree(K5, 2) == 3
    C = loose_cycle(3, 4)
    assert degree_of_set(C, {0, 1}) == 1
    assert min_d_degree(C, 2) == 0
    assert degree_of_set(C, C.edges[0]) == 1
    with pytest.raises(DomainError):
        degree_of_set(C, {0, 1, 2, 3})
    with pytest.raises(DomainError):
        min_d_degree(C, 3)


def _brute_min_degree(H, d):
    return min(sum(1 for e in H.edges if set(S) <= set(e)) for S in itertools.combinations(range(H.n), d))


@st.composite
def hypergraphs(draw, max_n=8):
    k = draw(st.integers(2, 4))
    n = draw(st.integers(k, max_n))
    all_edges = list(itertools.combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(all_edges), max_size=15))
    return Hypergraph(k, n, tuple(edges))


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_min_d_degree_matches_brute_force(H):
    for d in range(1, H.k):
        assert min_d_degree(H, d) == _brute_min_degree(H, d)


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_hg_round_trip(H):
    assert parse_hg(format_hg(H)) == H
    assert H.add_edges(H.edges) == H


def test_canonical_storage():
    H = Hypergraph(3, 4, ((2, 1, 0), (0, 1, 2), (3, 1, 0)))
    assert H.edges == ((0, 1, 2), (0, 1, 3))
    with pytest.raises(DomainError):
        Hypergraph(3, 4, ((0, 1, 4),))
    with pytest.raises(DomainError):
        Hypergraph(3, 4, ((0, 1, 1),))


def test_file_round_trip_with_certificate(tmp_path):
    H = fano_plane()
    path = tmp_path / "fano.hg"
    write_hg(path, H, {"name": "fano", "value": 1})
    assert read_hg(path) == H
    G, cert = parse_hg_with_certificate(path.read_text())
    assert G == H and cert == {"name": "fano", "value": 1}


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 4\n0 1 2", 2),  # no trailing newline
        ("3 4\n0 1 4\n", 2),
        ("3 4\n0 1 2\n0 1 2\n", 3),
        ("3 4\n0  1 2\n", 2),
        ("3 4\n2 1 0\n", 2),
        ("3 4\n0 1\n", 2),
        ("# hi\nthree 4\n", 2),
    ],
)
def test_parser_rejections(text, line):
    with pytest.raises(FormatError) as info:
        parse_hg(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_parser_accepts_comments():
    H = parse_hg("# comment\n3 4\n# mid\n0 1 2\n")
    assert H.edges == ((0, 1, 2),)
