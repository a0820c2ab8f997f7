"""Hexagon graphs of cubic graphs and their embedding machinery.

Every vertex of a cubic graph becomes a hexagon (a K3,3 drawn as a six-cycle
of blue edges plus three red diameters); every edge becomes a pair of white
edges placed by a parity rule.  Blue perfect matchings of the hexagon graph
are in bijection with rotation systems of the source graph, and a matching is
"safe" exactly when the encoded embedding has no dual loop, which is the
combinatorial core of the directed-cycle-double-cover reformulation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .graphs import (
    Bipartition,
    Edge,
    GraphError,
    LabeledGraph,
    bipartition,
    edge,
    validate_cubic,
)

Arc = Tuple[int, int]

RED, BLUE, WHITE = "red", "blue", "white"


@dataclass(frozen=True)
class HexagonGraph:
    """A hexagon graph plus its bookkeeping.

    ``hexmap[v][i]`` is the label of vertex v_i (canonically ``6*v + i``);
    ``index_assignment[(v, u)]`` is the index i_v(u) in {0, 1, 2} chosen for
    neighbor u at v; ``color`` tags every edge red/blue/white.
    """

    graph: LabeledGraph
    source: LabeledGraph
    hexmap: Dict[int, Tuple[int, ...]]
    index_assignment: Dict[Tuple[int, int], int]
    color: Dict[Edge, str]
    white_pairs: Dict[Edge, Tuple[Edge, Edge]]  # G-edge uv -> (e_uv, e'_uv)

    def hex_vertices(self, v: int) -> Tuple[int, ...]:
        return self.hexmap[v]

    def source_of(self, hv: int) -> Tuple[int, int]:
        """Map a hexagon-graph vertex back to (source vertex, index)."""
        return self._reverse()[hv]

    def _reverse(self) -> Dict[int, Tuple[int, int]]:
        rev = getattr(self, "_rev_cache", None)
        if rev is None:
            rev = {}
            for v, labels in self.hexmap.items():
                for i, hv in enumerate(labels):
                    rev[hv] = (v, i)
            object.__setattr__(self, "_rev_cache", rev)
        return rev

    def edges_of_color(self, c: str) -> List[Edge]:
        return sorted(e for e, col in self.color.items() if col == c)

    def classes(self) -> Bipartition:
        x = frozenset(hv for v in self.hexmap for i, hv in enumerate(self.hexmap[v]) if i % 2 == 0)
        y = frozenset(hv for v in self.hexmap for i, hv in enumerate(self.hexmap[v]) if i % 2 == 1)
        return Bipartition(x, y)


def build_hexagon_graph(
    g: LabeledGraph,
    index_assignment: Optional[Dict[Tuple[int, int], int]] = None,
    hexmap: Optional[Dict[int, Tuple[int, ...]]] = None,
) -> HexagonGraph:
    """Construct the hexagon graph of a cubic graph.

    The canonical index assignment gives neighbor u of v the index equal to
    u's rank in v's sorted neighbor list; any assignment with pairwise
    distinct indices per vertex is accepted (all choices give isomorphic
    results).  ``hexmap`` can override the default labels ``6*v + i``.
    """
    validate_cubic(g)
    if index_assignment is None:
        index_assignment = {}
        for v in g.vertices:
            for i, u in enumerate(g.sorted_neighbors(v)):
                index_assignment[(v, u)] = i
    else:
        for v in g.vertices:
            idx = sorted(index_assignment[(v, u)] for u in g.neighbors(v))
            if idx != [0, 1, 2]:
                raise GraphError(f"index assignment at vertex {v} is not a permutation of 0,1,2")
    if hexmap is None:
        hexmap = {v: tuple(6 * v + i for i in range(6)) for v in g.vertices}

    vertices = [hv for v in sorted(hexmap) for hv in hexmap[v]]
    edges: List[Edge] = []
    color: Dict[Edge, str] = {}
    for v in g.vertices:
        lab = hexmap[v]
        for i in range(6):
            b = edge(lab[i], lab[(i + 1) % 6])
            edges.append(b)
            color[b] = BLUE
        for i in range(3):
            r = edge(lab[i], lab[i + 3])
            edges.append(r)
            color[r] = RED

    white_pairs: Dict[Edge, Tuple[Edge, Edge]] = {}
    for u, v in g.edges:
        i = index_assignment[(v, u)]
        j = index_assignment[(u, v)]
        lv, lu = hexmap[v], hexmap[u]
        # X holds even indices, Y odd; the parity rule of the construction.
        if i % 2 == j % 2:
            e1 = edge(lv[i], lu[(j + 3) % 6])
            e2 = edge(lv[(i + 3) % 6], lu[j])
        else:
            e1 = edge(lv[i], lu[j])
            e2 = edge(lv[(i + 3) % 6], lu[(j + 3) % 6])
        white_pairs[edge(u, v)] = (e1, e2)
        for w in (e1, e2):
            edges.append(w)
            color[w] = WHITE

    h = LabeledGraph(vertices, edges)
    return HexagonGraph(h, g, hexmap, dict(index_assignment), color, white_pairs)


def check_hexagon_invariants(h: HexagonGraph) -> List[str]:
    """Structural checks from the construction's basic properties; returns a
    list of violations (empty = all good)."""
    bad: List[str] = []
    g = h.graph
    n = h.source.n()
    if g.n() != 6 * n:
        bad.append(f"expected {6 * n} vertices, found {g.n()}")
    for v in g.vertices:
        if g.degree(v) != 4:
            bad.append(f"vertex {v} has degree {g.degree(v)}, expected 4")
    try:
        cls = bipartition(g)
        for u, v in g.edges:
            if cls.same_class(u, v):
                bad.append(f"edge {(u, v)} inside one class")
    except GraphError as exc:
        bad.append(f"not bipartite: {exc}")
    for col in (RED, WHITE):
        es = h.edges_of_color(col)
        covered = [v for e in es for v in e]
        if len(covered) != len(set(covered)) or len(set(covered)) != g.n():
            bad.append(f"{col} edges are not a perfect matching")
    for uv, (e1, e2) in h.white_pairs.items():
        if set(e1) & set(e2):
            bad.append(f"white pair for {uv} shares a vertex")
    rev = {hv: v for v, labs in h.hexmap.items() for hv in labs}
    for e in h.edges_of_color(WHITE):
        if rev[e[0]] == rev[e[1]]:
            bad.append(f"white edge {e} inside hexagon of {rev[e[0]]}")
    return bad


# -- blue matchings and rotation systems -------------------------------------


@dataclass(frozen=True)
class BlueMatching:
    """One bit per source vertex: False selects {v0v1, v2v3, v4v5}, True the
    complementary blue triple {v1v2, v3v4, v5v0}."""

    bits: Tuple[bool, ...]

    def edges(self, h: HexagonGraph) -> FrozenSet[Edge]:
        out: Set[Edge] = set()
        for k, v in enumerate(sorted(h.hexmap)):
            lab = h.hexmap[v]
            start = 1 if self.bits[k] else 0
            for i in range(start, 6, 2):
                out.add(edge(lab[i], lab[(i + 1) % 6]))
        return frozenset(out)


def blue_matchings(h: HexagonGraph) -> Iterator[BlueMatching]:
    """All 2^n blue perfect matchings, lexicographic in the bit vector
    (False < True, vertices in sorted order)."""
    n = h.source.n()
    for bits in itertools.product((False, True), repeat=n):
        yield BlueMatching(bits)


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic successor maps: ``rot[v]`` maps each edge at v to the next one."""

    rot: Dict[int, Dict[Edge, Edge]]

    def next_edge(self, v: int, e: Edge) -> Edge:
        return self.rot[v][e]


def matching_to_rotation(h: HexagonGraph, m: BlueMatching) -> RotationSystem:
    """The bijection direction blue matching -> rotation system.

    With neighbors u, w, z of v at indices 0, 1, 2, the restriction
    {v0v1, v2v3, v4v5} maps to the cyclic order (uv wv zv) and the other
    restriction to (uv zv wv).
    """
    g = h.source
    rot: Dict[int, Dict[Edge, Edge]] = {}
    verts = sorted(h.hexmap)
    for k, v in enumerate(verts):
        by_index = {h.index_assignment[(v, u)]: u for u in g.neighbors(v)}
        u, w, z = by_index[0], by_index[1], by_index[2]
        order = (u, w, z) if not m.bits[k] else (u, z, w)
        cyc = {}
        for a, b in zip(order, order[1:] + order[:1]):
            cyc[edge(v, a)] = edge(v, b)
        rot[v] = cyc
    return RotationSystem(rot)


def rotation_to_matching(h: HexagonGraph, r: RotationSystem) -> BlueMatching:
    """Inverse of :func:`matching_to_rotation`."""
    g = h.source
    bits: List[bool] = []
    for v in sorted(h.hexmap):
        by_index = {h.index_assignment[(v, u)]: u for u in g.neighbors(v)}
        u, w, z = by_index[0], by_index[1], by_index[2]
        cyc = r.rot[v]
        incident = {edge(v, x) for x in (u, w, z)}
        if set(cyc) != incident:
            raise GraphError(f"rotation at {v} is not over the incident edges")
        nxt = cyc[edge(v, u)]
        if nxt == edge(v, w):
            bits.append(False)
        elif nxt == edge(v, z):
            bits.append(True)
        else:
            raise GraphError(f"rotation at {v} is not a 3-cycle")
    return BlueMatching(tuple(bits))


def all_rotation_systems(g: LabeledGraph) -> Iterator[RotationSystem]:
    """All rotation systems of a cubic graph (two cyclic orders per vertex)."""
    validate_cubic(g)
    verts = sorted(g.vertices)
    for bits in itertools.product((0, 1), repeat=len(verts)):
        rot: Dict[int, Dict[Edge, Edge]] = {}
        for v, bit in zip(verts, bits):
            u, w, z = g.sorted_neighbors(v)
            order = (u, w, z) if bit == 0 else (u, z, w)
            rot[v] = {
                edge(v, a): edge(v, b) for a, b in zip(order, order[1:] + order[:1])
            }
        yield RotationSystem(rot)


# -- face tracing and genus ---------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A closed walk as its vertex sequence v0, v1, ..., v_{k-1} (edges wrap)."""

    vertices: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_multiset(self) -> Tuple[Edge, ...]:
        k = len(self.vertices)
        return tuple(sorted(edge(self.vertices[i], self.vertices[(i + 1) % k]) for i in range(k)))


@dataclass(frozen=True)
class FaceSet:
    faces: Tuple[Face, ...]

    def total_length(self) -> int:
        return sum(len(f) for f in self.faces)

    def edge_multisets(self) -> List[Tuple[Edge, ...]]:
        return sorted(f.edge_multiset() for f in self.faces)


def trace_faces(g: LabeledGraph, r: RotationSystem) -> FaceSet:
    """Face boundaries of the embedding encoded by a rotation system.

    Walk directed edges: from arc (a, b), the next edge is the rotation's
    successor of {a,b} at b; each directed edge lies on exactly one face.
    """
    unused: Set[Arc] = set()
    for u, v in g.edges:
        unused.add((u, v))
        unused.add((v, u))
    faces: List[Face] = []
    while unused:
        start = min(unused)
        walk: List[int] = []
        arc = start
        while True:
            unused.discard(arc)
            walk.append(arc[0])
            a, b = arc
            nxt = r.next_edge(b, edge(a, b))
            c = nxt[0] if nxt[1] == b else nxt[1]
            arc = (b, c)
            if arc == start:
                break
        faces.append(Face(tuple(walk)))
    fs = FaceSet(tuple(faces))
    if fs.total_length() != 2 * g.m():
        raise GraphError("face tracing lost directed edges")
    return fs


def euler_genus(g: LabeledGraph, r: RotationSystem) -> int:
    """Genus of the encoded orientable embedding: (2 - V + E - F) / 2."""
    f = len(trace_faces(g, r).faces)
    val = 2 - g.n() + g.m() - f
    if val % 2 != 0 or val < 0:
        raise GraphError(f"Euler count 2 - V + E - F = {val} is not an even nonneg integer")
    return val // 2


# -- M delta W cycles, safety, DCDC ------------------------------------------


def mdw_cycles(h: HexagonGraph, m: BlueMatching) -> List[List[int]]:
    """Cycles of M (blue matching) union W (white edges); they partition V(H).

    Deterministic orientation: each cycle starts at its smallest vertex and
    steps first to that vertex's blue-matching partner.
    """
    blue = {}
    for a, b in m.edges(h):
        blue[a] = b
        blue[b] = a
    white = {}
    for e1, e2 in h.white_pairs.values():
        for a, b in (e1, e2):
            white[a] = b
            white[b] = a
    seen: Set[int] = set()
    cycles: List[List[int]] = []
    for start in sorted(h.graph.vertices):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur, use_blue = blue[start], False
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = blue[cur] if use_blue else white[cur]
            use_blue = not use_blue
        cycles.append(cyc)
    return cycles


def induced_face(h: HexagonGraph, cycle: Sequence[int]) -> List[Edge]:
    """The closed walk in G read off a hexagon-graph cycle: every white edge
    on the cycle maps to its source edge, in cycle order."""
    white_of: Dict[Edge, Edge] = {}
    for uv, (e1, e2) in h.white_pairs.items():
        white_of[e1] = uv
        white_of[e2] = uv
    out: List[Edge] = []
    k = len(cycle)
    for i in range(k):
        e = edge(cycle[i], cycle[(i + 1) % k])
        if e in white_of:
            out.append(white_of[e])
    return out


@dataclass(frozen=True)
class SafetyWitness:
    red_edge: Edge
    cycle: Tuple[int, ...]


def is_safe(h: HexagonGraph, m: BlueMatching) -> Tuple[bool, Optional[SafetyWitness]]:
    """A blue matching is safe when no M-delta-W cycle contains both endpoints
    of a red edge; returns the offending red edge and cycle otherwise."""
    red_partner: Dict[int, int] = {}
    for a, b in h.edges_of_color(RED):
        red_partner[a] = b
        red_partner[b] = a
    for cyc in mdw_cycles(h, m):
        members = set(cyc)
        for v in cyc:
            w = red_partner[v]
            if w in members:
                return False, SafetyWitness(edge(v, w), tuple(cyc))
    return True, None


def find_safe_matching(h: HexagonGraph) -> Optional[BlueMatching]:
    """Lexicographically smallest safe blue matching, or None.

    Exhaustive in bit-vector order with early pruning: partial bit prefixes
    whose already-closed cycles are unsafe are discarded wholesale.
    """
    verts = sorted(h.hexmap)
    n = len(verts)
    red_partner: Dict[int, int] = {}
    for a, b in h.edges_of_color(RED):
        red_partner[a] = b
        red_partner[b] = a
    white: Dict[int, int] = {}
    for e1, e2 in h.white_pairs.values():
        for a, b in (e1, e2):
            white[a] = b
            white[b] = a
    owner = {hv: v for v, labs in h.hexmap.items() for hv in labs}
    hex_index = {v: k for k, v in enumerate(verts)}

    def blue_partner(hv: int, bits: Sequence[Optional[bool]]) -> Optional[int]:
        v, i = h.source_of(hv)
        bit = bits[hex_index[v]]
        if bit is None:
            return None
        lab = h.hexmap[v]
        if not bit:
            j = i + 1 if i % 2 == 0 else i - 1
        else:
            j = (i + 1) % 6 if i % 2 == 1 else (i - 1) % 6
        return lab[j % 6]

    def closed_cycles_safe(bits: List[Optional[bool]]) -> bool:
        # Trace every fully-decided alternating cycle; reject on a red clash.
        seen: Set[int] = set()
        for start in h.graph.vertices:
            if start in seen or bits[hex_index[owner[start]]] is None:
                continue
            cyc = []
            cur, use_blue, ok = start, True, True
            while True:
                cyc.append(cur)
                nxt = blue_partner(cur, bits) if use_blue else white[cur]
                if nxt is None:
                    ok = False
                    break
                use_blue = not use_blue
                cur = nxt
                if cur == start and use_blue:
                    break
            if not ok:
                continue
            members = set(cyc)
            seen |= members
            for v in cyc:
                if red_partner[v] in members:
                    return False
        return True

    def search(bits: List[Optional[bool]], k: int) -> Optional[Tuple[bool, ...]]:
        if k == n:
            return tuple(b for b in bits if b is not None)
        for b in (False, True):
            bits[k] = b
            if closed_cycles_safe(bits):
                res = search(bits, k + 1)
                if res is not None:
                    return res
        bits[k] = None
        return None

    res = search([None] * n, 0)
    return BlueMatching(res) if res is not None else None


# -- DCDC certificates ---------------------------------------------------------


@dataclass(frozen=True)
class DcdcCertificate:
    cycles: Tuple[Tuple[Arc, ...], ...]

    def to_json(self) -> str:
        return json.dumps({"cycles": [[list(a) for a in cyc] for cyc in self.cycles]}, indent=2)

    @staticmethod
    def from_json(text: str) -> "DcdcCertificate":
        data = json.loads(text)
        return DcdcCertificate(tuple(tuple((int(a), int(b)) for a, b in cyc) for cyc in data["cycles"]))


def extract_dcdc(h: HexagonGraph, m: BlueMatching) -> DcdcCertificate:
    """Turn a safe blue matching into a directed cycle double cover of G.

    Each M-delta-W cycle, traversed in its canonical direction, emits one arc
    of G per white edge it crosses (from the hexagon it leaves to the hexagon
    it enters).
    """
    ok, witness = is_safe(h, m)
    if not ok:
        raise GraphError(f"matching is not safe: red edge {witness.red_edge}")
    owner = {hv: v for v, labs in h.hexmap.items() for hv in labs}
    white_edges = {e for pair in h.white_pairs.values() for e in pair}
    x_class = h.classes().class_a
    walks: List[Tuple[Arc, ...]] = []
    for cyc in mdw_cycles(h, m):
        # Orient so that every white edge is crossed from class Y into class
        # X; the antipodal placement of each white pair then guarantees the
        # two copies of a source edge are emitted as opposite arcs.
        if cyc[0] not in x_class:
            cyc = [cyc[0]] + list(reversed(cyc[1:]))
        arcs: List[Arc] = []
        k = len(cyc)
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            if edge(a, b) in white_edges:
                arcs.append((owner[a], owner[b]))
        walks.append(tuple(arcs))
    return DcdcCertificate(tuple(walks))


def verify_dcdc(g: LabeledGraph, cert: DcdcCertificate) -> Tuple[bool, List[str]]:
    """Independent check: closed walks over existing edges, no repeated arc,
    and every edge covered by exactly one arc in each direction."""
    problems: List[str] = []
    seen_arcs: Set[Arc] = set()
    for idx, walk in enumerate(cert.cycles):
        if not walk:
            problems.append(f"cycle {idx} is empty")
            continue
        for j, (a, b) in enumerate(walk):
            if not g.has_edge(a, b):
                problems.append(f"cycle {idx}: arc {(a, b)} is not an edge of G")
            if (a, b) in seen_arcs:
                problems.append(f"arc {(a, b)} repeated")
            seen_arcs.add((a, b))
            nxt = walk[(j + 1) % len(walk)]
            if nxt[0] != b:
                problems.append(f"cycle {idx}: arc {(a, b)} not followed by an arc out of {b}")
    for u, v in g.edges:
        fwd, bwd = (u, v) in seen_arcs, (v, u) in seen_arcs
        if not (fwd and bwd):
            covered = int(fwd) + int(bwd)
            problems.append(f"edge {(u, v)} covered {covered} time(s), expected once per direction")
    return (not problems), problems


# -- exports -------------------------------------------------------------------


def hexagon_to_json(h: HexagonGraph) -> str:
    rev = {hv: (v, i) for v, labs in h.hexmap.items() for i, hv in enumerate(labs)}
    data = {
        "source": {"n": h.source.n(), "edges": [list(e) for e in h.source.edges]},
        "vertices": [
            {"label": hv, "source_vertex": rev[hv][0], "index": rev[hv][1]}
            for hv in h.graph.vertices
        ],
        "edges": [
            {"u": u, "v": v, "color": h.color[edge(u, v)]} for u, v in h.graph.edges
        ],
        "index_assignment": [
            {"vertex": v, "neighbor": u, "index": i}
            for (v, u), i in sorted(h.index_assignment.items())
        ],
    }
    return json.dumps(data, indent=2)


def hexagon_to_dot(h: HexagonGraph) -> str:
    palette = {RED: "red", BLUE: "blue", WHITE: "black"}
    lines = ["graph hexagon {"]
    for u, v in h.graph.edges:
        c = palette[h.color[edge(u, v)]]
        lines.append(f'  {u} -- {v} [color="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def rotation_to_json(r: RotationSystem) -> str:
    data = {}
    for v, cyc in sorted(r.rot.items()):
        e0 = min(cyc)
        order = [list(e0)]
        e = cyc[e0]
        while e != e0:
            order.append(list(e))
            e = cyc[e]
        data[str(v)] = order
    return json.dumps(data, indent=2)


def rotation_from_json(text: str) -> RotationSystem:
    data = json.loads(text)
    rot: Dict[int, Dict[Edge, Edge]] = {}
    for v_str, order in data.items():
        v = int(v_str)
        es = [edge(int(a), int(b)) for a, b in order]
        rot[v] = {es[i]: es[(i + 1) % len(es)] for i in range(len(es))}
    return RotationSystem(rot)
