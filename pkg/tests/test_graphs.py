import pytest

from hexbrace.graphs import (
    CORPUS,
    GraphError,
    LabeledGraph,
    Matching,
    NotBipartiteError,
    NotCubicError,
    bipartition,
    bridged10_graph,
    check_matching,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    edge,
    enumerate_perfect_matchings,
    find_bridges,
    find_bridges_bruteforce,
    find_perfect_matching,
    parse_graph,
    perfect_matching_exists_bipartite,
    petersen_graph,
    prism_graph,
    validate_cubic,
)


K4_TEXT = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def test_parse_k4():
    g = parse_graph(K4_TEXT)
    assert g.n() == 4 and g.m() == 6
    assert g == complete_graph(4)


def test_parse_comments_and_whitespace():
    g = parse_graph("# header\n3 2\n0 1  # edge\n\n 1 2 \n")
    assert g.edges == [(0, 1), (1, 2)]


def test_parse_rejects_loop():
    with pytest.raises(GraphError, match="loop"):
        parse_graph("2 1\n0 0\n")


def test_parse_rejects_duplicate():
    with pytest.raises(GraphError, match="duplicate"):
        parse_graph("3 2\n0 1\n0 1\n")


def test_parse_rejects_out_of_range():
    with pytest.raises(GraphError, match="range"):
        parse_graph("2 1\n0 5\n")


def test_parse_rejects_bad_count():
    with pytest.raises(GraphError):
        parse_graph("3 3\n0 1\n1 2\n")


def test_validate_cubic_k4_and_petersen():
    assert validate_cubic(complete_graph(4)).n == 4
    w = validate_cubic(petersen_graph())
    assert (w.n, w.m) == (10, 15)


def test_validate_cubic_rejects_c6():
    with pytest.raises(NotCubicError) as exc:
        validate_cubic(cycle_graph(6))
    assert exc.value.vertex == 0 and exc.value.degree == 2


def test_corpus_graphs_cubic():
    for name, g in CORPUS.items():
        validate_cubic(g)


def test_bridges_k4_empty():
    assert find_bridges(complete_graph(4)) == set()


def test_bridges_path():
    g = LabeledGraph([0, 1, 2], [(0, 1), (1, 2)])
    assert find_bridges(g) == {(0, 1), (1, 2)}


def test_bridges_bridged10_exactly_one():
    g = bridged10_graph()
    bridges = find_bridges(g)
    assert bridges == {(4, 9)}
    assert bridges == find_bridges_bruteforce(g)


def test_bridges_match_bruteforce_on_corpus():
    for g in CORPUS.values():
        assert find_bridges(g) == find_bridges_bruteforce(g)


def test_bipartition_c6():
    b = bipartition(cycle_graph(6))
    assert sorted(map(len, (b.class_a, b.class_b))) == [3, 3]
    assert 0 in b.class_a


def test_bipartition_k4_fails_with_witness():
    with pytest.raises(NotBipartiteError) as exc:
        bipartition(complete_graph(4))
    cyc = exc.value.odd_cycle
    assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)


def test_bipartition_edges_cross_classes():
    g = complete_bipartite(3, 3)
    b = bipartition(g)
    for u, v in g.edges:
        assert b.side(u) != b.side(v)


def test_find_perfect_matching_c6():
    m = find_perfect_matching(cycle_graph(6))
    assert m is not None and m.edges == frozenset({(0, 1), (2, 3), (4, 5)})


def test_find_perfect_matching_c5_none():
    assert find_perfect_matching(cycle_graph(5)) is None


def test_find_perfect_matching_petersen_valid():
    g = petersen_graph()
    m = find_perfect_matching(g)
    assert m is not None and len(m.edges) == 5
    assert check_matching(g, m, perfect=True)


def test_enumerate_c6_two():
    assert len(enumerate_perfect_matchings(cycle_graph(6))) == 2


def test_enumerate_k4_three():
    assert len(enumerate_perfect_matchings(complete_graph(4))) == 3


def test_enumerate_k33_six():
    assert len(enumerate_perfect_matchings(complete_bipartite(3, 3))) == 6


def test_forced_pair_c6():
    g = cycle_graph(6)
    assert not perfect_matching_exists_bipartite(g, ((0, 1), (3, 4)))
    assert perfect_matching_exists_bipartite(g, ((0, 1), (2, 3)))


def test_forced_pair_k33_all_disjoint_pairs():
    g = complete_bipartite(3, 3)
    es = g.edges
    for i, e in enumerate(es):
        for f in es[i + 1 :]:
            if set(e) & set(f):
                continue
            assert perfect_matching_exists_bipartite(g, (e, f))


def test_forced_pair_agrees_with_enumeration():
    for g in (cycle_graph(6), cycle_graph(8), complete_bipartite(3, 3), cube_graph()):
        pms = enumerate_perfect_matchings(g)
        es = g.edges
        for i, e in enumerate(es):
            for f in es[i + 1 :]:
                if set(e) & set(f):
                    continue
                expected = any(e in pm.edges and f in pm.edges for pm in pms)
                assert perfect_matching_exists_bipartite(g, (e, f)) == expected


def test_forced_pair_rejects_sharing_vertex():
    with pytest.raises(GraphError, match="share"):
        perfect_matching_exists_bipartite(cycle_graph(6), ((0, 1), (1, 2)))
