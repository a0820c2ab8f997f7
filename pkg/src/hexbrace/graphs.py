"""Core undirected-graph machinery: labeled graphs, parsing, connectivity,
bridges, bipartitions and perfect-matching algorithms.

Everything downstream (hexagon graphs, braces, ear generation) is built on
:class:`LabeledGraph`.  Graphs are immutable after construction and all
iteration orders are deterministic, so identical construction sequences give
identical results across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

Edge = Tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalized undirected edge (smaller endpoint first)."""
    if u == v:
        raise GraphError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    """Malformed graph data (loops, duplicates, bad indices, parse errors)."""


class NotCubicError(GraphError):
    def __init__(self, vertex: int, degree: int):
        super().__init__(f"vertex {vertex} has degree {degree}, expected 3")
        self.vertex = vertex
        self.degree = degree


class DisconnectedError(GraphError):
    def __init__(self, components: int):
        super().__init__(f"graph is disconnected ({components} components)")
        self.components = components


class NotBipartiteError(GraphError):
    def __init__(self, odd_cycle: List[int]):
        super().__init__(f"graph contains an odd cycle: {odd_cycle}")
        self.odd_cycle = odd_cycle


class CapExceededError(GraphError):
    pass


class LabeledGraph:
    """Simple undirected graph with stable non-negative integer labels.

    Neighbor lists preserve insertion order; ``sorted_neighbors`` gives the
    canonical sorted view used by deterministic algorithms.
    """

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Sequence[int], edges: Sequence[Edge] = ()):
        self._vertices: List[int] = []
        self._adj: Dict[int, List[int]] = {}
        for v in vertices:
            if v < 0:
                raise GraphError(f"negative vertex label {v}")
            if v in self._adj:
                raise GraphError(f"duplicate vertex {v}")
            self._vertices.append(v)
            self._adj[v] = []
        self._edges: Set[Edge] = set()
        for u, v in edges:
            self._add_edge(u, v)

    def _add_edge(self, u: int, v: int) -> None:
        e = edge(u, v)
        if e in self._edges:
            raise GraphError(f"duplicate edge {e}")
        if u not in self._adj or v not in self._adj:
            raise GraphError(f"edge {e} references unknown vertex")
        self._edges.add(e)
        self._adj[u].append(v)
        self._adj[v].append(u)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> List[int]:
        return list(self._vertices)

    @property
    def edges(self) -> List[Edge]:
        return sorted(self._edges)

    def n(self) -> int:
        return len(self._vertices)

    def m(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edges

    def neighbors(self, v: int) -> List[int]:
        return list(self._adj[v])

    def sorted_neighbors(self, v: int) -> List[int]:
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._edges == other._edges

    def __hash__(self):
        return hash((frozenset(self._vertices), frozenset(self._edges)))

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n()}, m={self.m()})"

    # -- derived graphs ---------------------------------------------------

    def with_edge(self, u: int, v: int) -> "LabeledGraph":
        g = LabeledGraph(self._vertices)
        g._edges = set(self._edges)
        g._adj = {w: list(nb) for w, nb in self._adj.items()}
        g._add_edge(u, v)
        return g

    def without_edge(self, u: int, v: int) -> "LabeledGraph":
        e = edge(u, v)
        if e not in self._edges:
            raise GraphError(f"no such edge {e}")
        g = LabeledGraph(self._vertices)
        g._edges = set(self._edges)
        g._edges.discard(e)
        g._adj = {w: [x for x in nb if edge(w, x) != e] for w, nb in self._adj.items()}
        return g

    def without_vertices(self, drop: Set[int]) -> "LabeledGraph":
        keep = [v for v in self._vertices if v not in drop]
        kept_edges = [e for e in sorted(self._edges) if e[0] not in drop and e[1] not in drop]
        return LabeledGraph(keep, kept_edges)

    def subgraph_edges(self, edges: Sequence[Edge]) -> "LabeledGraph":
        vs = sorted({v for e in edges for v in e})
        return LabeledGraph(vs, [edge(*e) for e in edges])


# -- parsing ---------------------------------------------------------------


def parse_graph(text: str) -> LabeledGraph:
    """Parse the edge-list format: first line ``n m``, then ``m`` lines ``u v``.

    ``#`` starts a comment; blank lines are skipped.  Loops, duplicate edges
    and out-of-range labels are rejected with the offending line number.
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Edge] = []
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        if header is None:
            header = (a, b)
            n, m = a, b
            if n < 0 or m < 0:
                raise GraphError(f"line {lineno}: negative counts in header")
            continue
        if a == b:
            raise GraphError(f"line {lineno}: loop edge at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex index out of range 0..{n - 1}")
        e = edge(a, b)
        if e in edges or e in set(edges):
            raise GraphError(f"line {lineno}: duplicate edge {e}")
        edges.append(e)
    if header is None:
        raise GraphError("empty document")
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return LabeledGraph(range(n), edges)


def format_graph(g: LabeledGraph) -> str:
    lines = [f"{g.n()} {g.m()}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# -- connectivity and bridges ----------------------------------------------


def connected_components(g: LabeledGraph) -> List[List[int]]:
    seen: Set[int] = set()
    comps: List[List[int]] = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.sorted_neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: LabeledGraph) -> bool:
    return g.n() == 0 or len(connected_components(g)) == 1


@dataclass(frozen=True)
class CubicWitness:
    n: int
    m: int


def validate_cubic(g: LabeledGraph) -> CubicWitness:
    """Check 3-regularity and connectedness; returns the vertex/edge counts."""
    for v in g.vertices:
        if g.degree(v) != 3:
            raise NotCubicError(v, g.degree(v))
    comps = connected_components(g)
    if len(comps) != 1:
        raise DisconnectedError(len(comps))
    return CubicWitness(g.n(), g.m())


def find_bridges(g: LabeledGraph) -> Set[Edge]:
    """All edges whose removal disconnects the graph (iterative lowpoint DFS)."""
    if not is_connected(g):
        raise DisconnectedError(len(connected_components(g)))
    order: Dict[int, int] = {}
    low: Dict[int, int] = {}
    bridges: Set[Edge] = set()
    counter = itertools.count()
    for root in g.vertices:
        if root in order:
            continue
        # stack entries: (vertex, parent, neighbor iterator)
        order[root] = next(counter)
        low[root] = order[root]
        stack: List[Tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.sorted_neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in order:
                    order[w] = next(counter)
                    low[w] = order[w]
                    stack.append((w, v, iter(g.sorted_neighbors(w))))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], order[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > order[pv]:
                        bridges.add(edge(pv, v))
        # parallel edges cannot occur: simple graphs only
    return bridges


def find_bridges_bruteforce(g: LabeledGraph) -> Set[Edge]:
    """Oracle: remove each edge in turn and test connectivity."""
    if not is_connected(g):
        raise DisconnectedError(len(connected_components(g)))
    return {e for e in g.edges if not is_connected(g.without_edge(*e))}


# -- bipartition -------------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    class_a: FrozenSet[int]
    class_b: FrozenSet[int]

    def side(self, v: int) -> int:
        if v in self.class_a:
            return 0
        if v in self.class_b:
            return 1
        raise KeyError(v)

    def same_class(self, u: int, v: int) -> bool:
        return self.side(u) == self.side(v)


def bipartition(g: LabeledGraph) -> Bipartition:
    """BFS 2-coloring; class A contains the smallest vertex label.

    Raises :class:`NotBipartiteError` with an odd-cycle witness otherwise.
    """
    if g.n() == 0:
        return Bipartition(frozenset(), frozenset())
    color: Dict[int, int] = {}
    parent: Dict[int, int] = {}
    for start in sorted(g.vertices):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in g.sorted_neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    raise NotBipartiteError(_odd_cycle_witness(parent, v, w))
    a = frozenset(v for v, c in color.items() if c == 0)
    b = frozenset(v for v, c in color.items() if c == 1)
    smallest = min(g.vertices)
    if smallest in b:
        a, b = b, a
    return Bipartition(a, b)


def _odd_cycle_witness(parent: Dict[int, int], u: int, v: int) -> List[int]:
    def path_to_root(x: int) -> List[int]:
        out = [x]
        while x in parent:
            x = parent[x]
            out.append(x)
        return out

    pu, pv = path_to_root(u), path_to_root(v)
    su, sv = set(pu), set(pv)
    meet = next(x for x in pu if x in sv)
    cyc = pu[: pu.index(meet) + 1] + list(reversed(pv[: pv.index(meet)]))
    return cyc


# -- matchings ---------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    edges: FrozenSet[Edge]

    def covers(self) -> Set[int]:
        return {v for e in self.edges for v in e}

    def partner(self, v: int) -> Optional[int]:
        for a, b in self.edges:
            if a == v:
                return b
            if b == v:
                return a
        return None

    def as_sorted(self) -> List[Edge]:
        return sorted(self.edges)


def check_matching(g: LabeledGraph, m: Matching, perfect: bool = False) -> bool:
    seen: Set[int] = set()
    for u, v in m.edges:
        if not g.has_edge(u, v):
            return False
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    if perfect and seen != set(g.vertices):
        return False
    return True


def find_perfect_matching(g: LabeledGraph) -> Optional[Matching]:
    """First perfect matching found by backtracking on the lowest unmatched
    vertex, branching over its sorted neighbors.  Deterministic; handles
    general (non-bipartite) graphs at desk scale.
    """
    if g.n() % 2 != 0:
        return None
    matched: Dict[int, int] = {}
    order = sorted(g.vertices)
    chosen: List[Edge] = []

    def bt() -> bool:
        free = next((v for v in order if v not in matched), None)
        if free is None:
            return True
        for w in g.sorted_neighbors(free):
            if w in matched:
                continue
            matched[free] = w
            matched[w] = free
            chosen.append(edge(free, w))
            if bt():
                return True
            chosen.pop()
            del matched[free]
            del matched[w]
        return False

    if bt():
        return Matching(frozenset(chosen))
    return None


def enumerate_perfect_matchings(g: LabeledGraph, cap: int = 100000) -> List[Matching]:
    """All perfect matchings, in lexicographic order of their sorted edge lists."""
    if g.n() % 2 != 0:
        return []
    out: List[Matching] = []
    matched: Dict[int, int] = {}
    order = sorted(g.vertices)
    chosen: List[Edge] = []

    def bt() -> None:
        free = next((v for v in order if v not in matched), None)
        if free is None:
            out.append(Matching(frozenset(chosen)))
            if len(out) > cap:
                raise CapExceededError(f"more than {cap} perfect matchings")
            return
        for w in g.sorted_neighbors(free):
            if w in matched:
                continue
            matched[free] = w
            matched[w] = free
            chosen.append(edge(free, w))
            bt()
            chosen.pop()
            del matched[free]
            del matched[w]

    bt()
    return out


class BipartiteMatcher:
    """Maximum matching on a bipartite graph by augmenting paths, with support
    for re-solving after temporarily deleting vertices (the brace inner query).

    A base maximum matching is computed once; each query removes the four
    endpoints of a forced edge pair and re-augments only the damaged part,
    which keeps the all-pairs brace scan near-linear per query.
    """

    def __init__(self, g: LabeledGraph, classes: Bipartition):
        self.g = g
        self.left = sorted(classes.class_a)
        self.classes = classes
        self.base = self._solve(excluded=frozenset())

    def _solve(self, excluded: FrozenSet[int], seed: Optional[Dict[int, int]] = None) -> Dict[int, int]:
        match: Dict[int, int] = dict(seed) if seed else {}
        for v in list(match):
            if v in match and (v in excluded or match[v] in excluded):
                w = match.pop(v)
                match.pop(w, None)

        def augment(v: int, seen: Set[int]) -> bool:
            for w in self.g.sorted_neighbors(v):
                if w in excluded or w in seen:
                    continue
                seen.add(w)
                if w not in match or augment(match[w], seen):
                    match[v] = w
                    match[w] = v
                    return True
            return False

        for v in self.left:
            if v in excluded or v in match:
                continue
            augment(v, set())
        return match

    def max_matching_size(self, excluded: FrozenSet[int] = frozenset()) -> int:
        match = self._solve(excluded, seed=self.base)
        return len(match) // 2

    def has_perfect_matching_avoiding(self, excluded: FrozenSet[int]) -> bool:
        remaining = self.g.n() - len(excluded)
        if remaining % 2 != 0:
            return False
        return self.max_matching_size(excluded) * 2 == remaining


def perfect_matching_exists_bipartite(g: LabeledGraph, forced: Tuple[Edge, Edge]) -> bool:
    """True iff some perfect matching of bipartite ``g`` contains both forced
    edges.  The forced edges must be vertex-disjoint edges of ``g``.
    """
    e, f = edge(*forced[0]), edge(*forced[1])
    for x in (e, f):
        if not g.has_edge(*x):
            raise GraphError(f"forced edge {x} not in graph")
    if set(e) & set(f):
        raise GraphError(f"forced edges {e} and {f} share a vertex")
    classes = bipartition(g)
    matcher = BipartiteMatcher(g, classes)
    return matcher.has_perfect_matching_avoiding(frozenset(e) | frozenset(f))


# -- fixture graphs ----------------------------------------------------------


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph(range(n), [edge(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> LabeledGraph:
    return LabeledGraph(range(n), [edge(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> LabeledGraph:
    return LabeledGraph(range(a + b), [edge(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> LabeledGraph:
    outer = [edge(i, (i + 1) % 5) for i in range(5)]
    inner = [edge(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [edge(i, 5 + i) for i in range(5)]
    return LabeledGraph(range(10), outer + inner + spokes)


def prism_graph() -> LabeledGraph:
    """Triangular prism C3 x K2: triangles 0-1-2 and 3-4-5 plus rungs."""
    tri1 = [edge(0, 1), edge(1, 2), edge(0, 2)]
    tri2 = [edge(3, 4), edge(4, 5), edge(3, 5)]
    rungs = [edge(i, i + 3) for i in range(3)]
    return LabeledGraph(range(6), tri1 + tri2 + rungs)


def cube_graph() -> LabeledGraph:
    """The 3-cube as the ladder on 8 vertices: two 4-cycles joined by rungs."""
    outer = [edge(i, (i + 1) % 4) for i in range(4)]
    inner = [edge(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    rungs = [edge(i, 4 + i) for i in range(4)]
    return LabeledGraph(range(8), outer + inner + rungs)


def bridged10_graph() -> LabeledGraph:
    """Cubic 10-vertex graph with exactly one bridge.

    Two copies of K4 with one subdivided edge; the two degree-2 subdivision
    vertices are joined by the bridge 4-9.
    """

    def half(base: int) -> List[Edge]:
        a, b, c, d, s = base, base + 1, base + 2, base + 3, base + 4
        return [edge(a, b), edge(a, c), edge(a, d), edge(b, c), edge(b, d), edge(c, s), edge(d, s)]

    return LabeledGraph(range(10), half(0) + half(5) + [edge(4, 9)])


CORPUS = {
    "k4": complete_graph(4),
    "k33": complete_bipartite(3, 3),
    "cube": cube_graph(),
    "prism": prism_graph(),
    "petersen": petersen_graph(),
    "bridged10": bridged10_graph(),
}
