import itertools
import json
from collections import Counter

import pytest

from hexbrace.graphs import (
    CORPUS,
    bipartition,
    complete_bipartite,
    complete_graph,
    edge,
    petersen_graph,
)
from hexbrace.hexagon import (
    BlueMatching,
    all_rotation_systems,
    blue_matchings,
    build_hexagon_graph,
    check_hexagon_invariants,
    euler_genus,
    extract_dcdc,
    find_safe_matching,
    hexagon_to_dot,
    hexagon_to_json,
    induced_face,
    is_safe,
    matching_to_rotation,
    mdw_cycles,
    rotation_from_json,
    rotation_to_json,
    rotation_to_matching,
    trace_faces,
    verify_dcdc,
)

BRIDGELESS = ["k4", "k33", "cube", "prism", "petersen"]


@pytest.fixture(scope="module")
def hk4():
    return build_hexagon_graph(complete_graph(4))


def test_k4_hexagon_counts(hk4):
    assert hk4.graph.n() == 24
    assert hk4.graph.m() == 48
    assert len(hk4.edges_of_color("blue")) == 24
    assert len(hk4.edges_of_color("red")) == 12
    assert len(hk4.edges_of_color("white")) == 12


@pytest.mark.parametrize("name", BRIDGELESS + ["bridged10"])
def test_hexagon_invariants_corpus(name):
    h = build_hexagon_graph(CORPUS[name])
    assert check_hexagon_invariants(h) == []


def test_hexagon_k33_bipartition_sizes():
    h = build_hexagon_graph(complete_bipartite(3, 3))
    b = bipartition(h.graph)
    assert sorted(map(len, (b.class_a, b.class_b))) == [18, 18]


def test_blue_matchings_k4(hk4):
    ms = list(blue_matchings(hk4))
    assert len(ms) == 16
    assert ms[0].bits == (False,) * 4
    for m in ms:
        covered = sorted(v for e in m.edges(hk4) for v in e)
        assert covered == hk4.graph.vertices
        assert all(hk4.color[e] == "blue" for e in m.edges(hk4))


def test_bijection_roundtrip_k4(hk4):
    for m in blue_matchings(hk4):
        r = matching_to_rotation(hk4, m)
        assert rotation_to_matching(hk4, r).bits == m.bits


def test_bijection_roundtrip_rotations_k4(hk4):
    g = complete_graph(4)
    seen = set()
    for r in all_rotation_systems(g):
        m = rotation_to_matching(hk4, r)
        r2 = matching_to_rotation(hk4, m)
        assert r2.rot == r.rot
        seen.add(m.bits)
    assert len(seen) == 16


def test_rotation_rule_explicit(hk4):
    # all-false bits: at each v with sorted neighbors u, w, z the successor of
    # uv is wv; all-true bits give uv -> zv.
    m0 = BlueMatching((False,) * 4)
    r0 = matching_to_rotation(hk4, m0)
    g = complete_graph(4)
    for v in g.vertices:
        u, w, z = g.sorted_neighbors(v)
        assert r0.rot[v][edge(v, u)] == edge(v, w)
    m1 = BlueMatching((True,) * 4)
    r1 = matching_to_rotation(hk4, m1)
    for v in g.vertices:
        u, w, z = g.sorted_neighbors(v)
        assert r1.rot[v][edge(v, u)] == edge(v, z)


def test_trace_faces_total_length_and_planar_k4():
    g = complete_graph(4)
    counts = set()
    for r in all_rotation_systems(g):
        fs = trace_faces(g, r)
        assert fs.total_length() == 12
        counts.add(len(fs.faces))
    # The sixteen rotation systems of K4 realize both the planar embedding
    # (4 triangular faces) and toroidal ones (2 faces).
    assert counts == {2, 4}


def test_euler_genus_k4():
    g = complete_graph(4)
    genera = Counter()
    for r in all_rotation_systems(g):
        genera[euler_genus(g, r)] += 1
    assert set(genera) == {0, 1}
    planar = [r for r in all_rotation_systems(g) if euler_genus(g, r) == 0]
    fs = trace_faces(g, planar[0])
    assert sorted(len(f) for f in fs.faces) == [3, 3, 3, 3]


def test_k33_minimum_genus_is_one():
    g = complete_bipartite(3, 3)
    best = min(euler_genus(g, r) for r in all_rotation_systems(g))
    assert best == 1


def test_mdw_cycles_structure(hk4):
    whites = set(hk4.edges_of_color("white"))
    blues = set(hk4.edges_of_color("blue"))
    for m in blue_matchings(hk4):
        cycles = mdw_cycles(hk4, m)
        seen = [v for c in cycles for v in c]
        assert sorted(seen) == hk4.graph.vertices
        for c in cycles:
            assert len(c) % 2 == 0
            for i in range(len(c)):
                e = edge(c[i], c[(i + 1) % len(c)])
                assert e in whites or e in blues


def test_face_cycle_correspondence_k4(hk4):
    # Induced faces of the M-delta-W cycles coincide with the traced face
    # boundaries of the corresponding rotation system, as edge multisets.
    g = complete_graph(4)
    for m in blue_matchings(hk4):
        induced = sorted(
            tuple(sorted(induced_face(hk4, c))) for c in mdw_cycles(hk4, m)
        )
        traced = trace_faces(g, matching_to_rotation(hk4, m)).edge_multisets()
        assert induced == traced


def test_dual_loop_equivalence_counts():
    # Safe blue matchings are exactly the no-dual-loop rotation systems.
    for name in ("k4", "k33"):
        g = CORPUS[name]
        h = build_hexagon_graph(g)
        safe_count = sum(1 for m in blue_matchings(h) if is_safe(h, m)[0])
        no_dual_loop = 0
        for r in all_rotation_systems(g):
            fs = trace_faces(g, r)
            per_edge = Counter()
            for i, f in enumerate(fs.faces):
                for e in set(f.edge_multiset()):
                    per_edge[e] += 1 if f.edge_multiset().count(e) == 1 else 2
            if all(per_edge[e] == 2 and sum(1 for f in fs.faces if e in f.edge_multiset()) == 2 for e in g.edges):
                no_dual_loop += 1
        assert safe_count == no_dual_loop and safe_count > 0


def test_safety_witness(hk4):
    for m in blue_matchings(hk4):
        ok, witness = is_safe(hk4, m)
        if not ok:
            assert hk4.color[witness.red_edge] == "red"
            assert set(witness.red_edge) <= set(witness.cycle)


def test_find_safe_matching_is_lex_smallest(hk4):
    best = find_safe_matching(hk4)
    assert best is not None
    expected = next(m for m in blue_matchings(hk4) if is_safe(hk4, m)[0])
    assert best.bits == expected.bits


@pytest.mark.parametrize("name", BRIDGELESS)
def test_safe_matching_and_dcdc_corpus(name):
    g = CORPUS[name]
    h = build_hexagon_graph(g)
    m = find_safe_matching(h)
    assert m is not None
    cert = extract_dcdc(h, m)
    ok, problems = verify_dcdc(g, cert)
    assert ok, problems
    assert len(cert.cycles) == len(mdw_cycles(h, m))


def test_verify_dcdc_catches_missing_cycle():
    g = complete_graph(4)
    h = build_hexagon_graph(g)
    cert = extract_dcdc(h, find_safe_matching(h))
    broken = type(cert)(cert.cycles[1:])
    ok, problems = verify_dcdc(g, broken)
    assert not ok
    assert any("covered" in p for p in problems)


def test_verify_dcdc_is_orientation_set_based():
    g = complete_graph(4)
    h = build_hexagon_graph(g)
    cert = extract_dcdc(h, find_safe_matching(h))
    same = type(cert)(tuple(reversed(cert.cycles)))
    ok, _ = verify_dcdc(g, same)
    assert ok


def test_extract_requires_safe(hk4):
    unsafe = next(m for m in blue_matchings(hk4) if not is_safe(hk4, m)[0])
    with pytest.raises(Exception, match="not safe"):
        extract_dcdc(hk4, unsafe)


def test_white_pairs_emit_opposite_arcs(hk4):
    m = find_safe_matching(hk4)
    cert = extract_dcdc(hk4, m)
    arcs = [a for cyc in cert.cycles for a in cyc]
    for u, v in complete_graph(4).edges:
        assert (u, v) in arcs and (v, u) in arcs


def test_euler_parity_property():
    for name in BRIDGELESS:
        g = CORPUS[name]
        h = build_hexagon_graph(g)
        for bits in itertools.islice(itertools.product((False, True), repeat=g.n()), 8):
            r = matching_to_rotation(h, BlueMatching(bits))
            f = len(trace_faces(g, r).faces)
            assert (g.n() - g.m() + f) % 2 == 0


def test_json_export_roundtrip(hk4):
    data = json.loads(hexagon_to_json(hk4))
    assert len(data["vertices"]) == 24
    assert len(data["edges"]) == 48
    assert {e["color"] for e in data["edges"]} == {"red", "blue", "white"}


def test_dot_export_palette(hk4):
    dot = hexagon_to_dot(hk4)
    assert 'color="red"' in dot and 'color="blue"' in dot and 'color="black"' in dot


def test_rotation_json_roundtrip(hk4):
    r = matching_to_rotation(hk4, BlueMatching((True, False, True, False)))
    r2 = rotation_from_json(rotation_to_json(r))
    assert r2.rot == r.rot
