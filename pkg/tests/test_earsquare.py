import pytest

from hexbrace.earsquare import (
    Ear,
    NotMatchingCoveredError,
    OddEarDecomposition,
    canonical_path,
    check_ear_square,
    graph_paths,
    matching_paths,
    odd_ear_decomposition,
    verify_decomposition,
)
from hexbrace.graphs import (
    CORPUS,
    LabeledGraph,
    Matching,
    bridged10_graph,
    complete_graph,
    edge,
    find_perfect_matching,
)

BRIDGELESS = ["k4", "k33", "cube", "prism", "petersen"]


def test_k4_decomposition_matches_hand_computation():
    g = complete_graph(4)
    m = Matching(frozenset({(0, 1), (2, 3)}))
    d = odd_ear_decomposition(g, m)
    assert len(d.g0) == 4
    assert set(d.g0) == {0, 1, 2, 3}
    assert d.stages() == 2
    assert all(len(e.edges()) == 1 for e in d.ears)
    ok, problems = verify_decomposition(g, m, d)
    assert ok, problems


@pytest.mark.parametrize("name", BRIDGELESS)
def test_decomposition_corpus(name):
    g = CORPUS[name]
    m = find_perfect_matching(g)
    d = odd_ear_decomposition(g, m)
    ok, problems = verify_decomposition(g, m, d)
    assert ok, problems
    for ear in d.ears:
        assert len(ear.edges()) % 2 == 1


def test_bridged10_rejected():
    g = bridged10_graph()
    m = find_perfect_matching(g)
    assert m is not None
    with pytest.raises(NotMatchingCoveredError):
        odd_ear_decomposition(g, m)


def test_verify_rejects_even_ear():
    g = complete_graph(4)
    m = Matching(frozenset({(0, 1), (2, 3)}))
    d = odd_ear_decomposition(g, m)
    bad = OddEarDecomposition(d.g0, [Ear((0, 2)), Ear((1, 0, 3))])
    ok, problems = verify_decomposition(g, m, bad)
    assert not ok
    assert any("even" in p or "reuses" in p or "not in" in p for p in problems)


def test_verify_rejects_non_absolute():
    g = complete_graph(4)
    m = Matching(frozenset({(0, 2), (1, 3)}))
    # base cycle 0-1-2-3 is not alternating for this matching
    d = OddEarDecomposition((0, 1, 2, 3), [Ear((0, 2)), Ear((1, 3))])
    ok, problems = verify_decomposition(g, m, d)
    assert not ok
    assert any("absoluteness" in p for p in problems)


def test_matching_paths_k4_stage1():
    g = complete_graph(4)
    m = Matching(frozenset({(0, 1), (2, 3)}))
    d = odd_ear_decomposition(g, m)
    g1 = d.stage_graph(1)
    paths = graph_paths(g1)
    deg3 = sorted(v for v in g1.vertices if g1.degree(v) == 3)
    assert len(paths) == 3
    ends = {p.ends for p in paths}
    assert all(set(e) == set(deg3) for e in ends)
    info = matching_paths(g1, m)
    for v in deg3:
        assert len(info[v]["paths"]) == 3
        mp = info[v]["matching_path"]
        assert mp.end_edge(v) in m.edges


def test_ear_is_cycle_path_of_both_ends():
    for name in BRIDGELESS:
        g = CORPUS[name]
        m = find_perfect_matching(g)
        d = odd_ear_decomposition(g, m)
        for i in range(1, d.stages() + 1):
            g_i = d.stage_graph(i)
            info = matching_paths(g_i, m)
            ear = d.ears[i - 1]
            key = canonical_path(ear.vertices)
            for end in (ear.alpha, ear.beta):
                if g_i.degree(end) == 3:
                    assert info[end]["matching_path"].vertices != key
