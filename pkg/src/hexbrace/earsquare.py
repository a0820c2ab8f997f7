"""Odd ear decompositions, matching-paths, and the square-graph checkers.

An odd ear decomposition grows a cubic bridgeless graph from an even cycle by
attaching odd paths; a perfect matching is absolute when its restriction to
every intermediate graph is perfect.  Ear square graphs are the intermediate
artifacts of the generation pipeline: one square per degree-3 vertex, one
two-edge projection per path through degree-2 vertices, with supporting-edge
bookkeeping.  The checkers here validate those structures independently of
whatever constructed them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .graphs import Edge, GraphError, LabeledGraph, Matching, edge

PathKey = Tuple[int, ...]


def canonical_path(vertices: Sequence[int]) -> PathKey:
    vs = tuple(vertices)
    rev = tuple(reversed(vs))
    return min(vs, rev)


@dataclass(frozen=True)
class Ear:
    """An odd path attached at alpha and beta; ``vertices`` runs alpha..beta."""

    vertices: Tuple[int, ...]

    @property
    def alpha(self) -> int:
        return self.vertices[0]

    @property
    def beta(self) -> int:
        return self.vertices[-1]

    def edges(self) -> List[Edge]:
        return [edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]


@dataclass
class OddEarDecomposition:
    g0: Tuple[int, ...]  # even cycle, as a vertex sequence
    ears: List[Ear]

    def g0_edges(self) -> List[Edge]:
        k = len(self.g0)
        return [edge(self.g0[i], self.g0[(i + 1) % k]) for i in range(k)]

    def stage_edges(self, i: int) -> Set[Edge]:
        """Edge set of G_i (stage 0 = the base cycle)."""
        out = set(self.g0_edges())
        for ear in self.ears[:i]:
            out.update(ear.edges())
        return out

    def stage_graph(self, i: int) -> LabeledGraph:
        es = sorted(self.stage_edges(i))
        vs = sorted({v for e in es for v in e})
        return LabeledGraph(vs, es)

    def stages(self) -> int:
        return len(self.ears)


class NotMatchingCoveredError(GraphError):
    pass


def _alternating_cycle_through(g: LabeledGraph, m: Matching, v0: int) -> Optional[Tuple[int, ...]]:
    """M-alternating even cycle through v0, found by DFS that leaves v0 along
    its matching edge and must return via a non-matching edge."""
    mate = {a: b for a, b in ((x, y) for e in m.edges for x, y in (e, reversed(e)))}
    mate = {}
    for a, b in m.edges:
        mate[a] = b
        mate[b] = a

    path = [v0]
    on_path = {v0}

    def dfs(cur: int, need_matched: bool) -> bool:
        if need_matched:
            nxt = mate[cur]
            if nxt == v0:
                return False  # closing on a matched edge gives an odd seam
            if nxt in on_path:
                return False
            path.append(nxt)
            on_path.add(nxt)
            if dfs(nxt, False):
                return True
            path.pop()
            on_path.discard(nxt)
            return False
        for nxt in g.sorted_neighbors(cur):
            if edge(cur, nxt) in m.edges:
                continue
            if nxt == v0 and len(path) >= 4:
                return True
            if nxt in on_path:
                continue
            path.append(nxt)
            on_path.add(nxt)
            if dfs(nxt, True):
                return True
            path.pop()
            on_path.discard(nxt)
        return False

    if dfs(v0, True):
        return tuple(path)
    return None


def odd_ear_decomposition(g: LabeledGraph, m: Matching) -> OddEarDecomposition:
    """Build an odd ear decomposition of a cubic bridgeless graph in which the
    given perfect matching is absolute.

    The base cycle is the M-alternating cycle through the smallest vertex;
    ears are shortest-first M-alternating odd paths with unmatched end edges,
    ties broken by smallest labels.  A backtracking layer re-orders ear
    choices in the rare case greedy selection dead-ends.
    """
    if not m or not m.edges or {v for e in m.edges for v in e} != set(g.vertices):
        raise GraphError("matching is not perfect")
    v0 = min(g.vertices)
    g0 = _alternating_cycle_through(g, m, v0)
    if g0 is None:
        raise NotMatchingCoveredError(f"no alternating cycle through vertex {v0}")

    def ear_candidates(used_edges: Set[Edge], verts: Set[int]) -> List[Ear]:
        """All shortest valid ears, sorted canonically."""
        found: List[Ear] = []
        best_len: Optional[int] = None
        # BFS over alternating walks leaving verts on an unmatched edge.
        # State: (current, needs_matched_next, path)
        start_states = []
        for a in sorted(verts):
            for b in g.sorted_neighbors(a):
                e = edge(a, b)
                if e in used_edges or e in m.edges:
                    continue
                start_states.append((a, b))
        frontier: List[Tuple[int, ...]] = []
        for a, b in start_states:
            if b in verts:
                found.append(Ear((a, b)))
            else:
                frontier.append((a, b))
        if found:
            return sorted(set(found), key=lambda e: e.vertices)
        mate = {}
        for a, b in m.edges:
            mate[a] = b
            mate[b] = a
        while frontier and not found:
            nxt_frontier: List[Tuple[int, ...]] = []
            for path in frontier:
                cur = path[-1]
                # matched step (interior vertices must pair up inside the ear)
                w = mate[cur]
                if w in verts or w in path or edge(cur, w) in used_edges:
                    continue
                path2 = path + (w,)
                # then an unmatched step; may close into verts
                for z in g.sorted_neighbors(w):
                    e = edge(w, z)
                    if e in m.edges or e in used_edges:
                        continue
                    if z in verts:
                        found.append(Ear(path2 + (z,)))
                    elif z not in path2:
                        nxt_frontier.append(path2 + (z,))
            frontier = nxt_frontier
        return sorted(set(found), key=lambda e: e.vertices)

    target_edges = set(g.edges)

    def solve(ears: List[Ear], used: Set[Edge], verts: Set[int]) -> Optional[List[Ear]]:
        if used == target_edges:
            return ears
        for ear in ear_candidates(used, verts):
            solve_used = used | set(ear.edges())
            res = solve(ears + [ear], solve_used, verts | set(ear.vertices))
            if res is not None:
                return res
        return None

    base_edges = set()
    k = len(g0)
    for i in range(k):
        base_edges.add(edge(g0[i], g0[(i + 1) % k]))
    ears = solve([], base_edges, set(g0))
    if ears is None:
        raise NotMatchingCoveredError("no odd ear decomposition extends the base cycle")
    return OddEarDecomposition(g0, ears)


def verify_decomposition(g: LabeledGraph, m: Matching, d: OddEarDecomposition) -> Tuple[bool, List[str]]:
    """Independent re-check of every decomposition and absoluteness invariant."""
    problems: List[str] = []
    k = len(d.g0)
    if k % 2 != 0 or k < 4:
        problems.append(f"base cycle has odd or tiny length {k}")
    if len(set(d.g0)) != k:
        problems.append("base cycle repeats a vertex")
    for e in d.g0_edges():
        if not g.has_edge(*e):
            problems.append(f"base cycle edge {e} not in G")
    seen_vertices = set(d.g0)
    seen_edges = set(d.g0_edges())
    for idx, ear in enumerate(d.ears, start=1):
        if len(ear.edges()) % 2 == 0:
            problems.append(f"ear {idx} even (length {len(ear.edges())})")
        if ear.alpha not in seen_vertices or ear.beta not in seen_vertices:
            problems.append(f"ear {idx} endpoints not in the previous stage")
        for v in ear.interior():
            if v in seen_vertices:
                problems.append(f"ear {idx} interior vertex {v} already present")
        for e in ear.edges():
            if not g.has_edge(*e):
                problems.append(f"ear {idx} edge {e} not in G")
            if e in seen_edges:
                problems.append(f"ear {idx} reuses edge {e}")
        seen_vertices |= set(ear.vertices)
        seen_edges |= set(ear.edges())
    if seen_edges != set(g.edges) or seen_vertices != set(g.vertices):
        problems.append("decomposition does not exhaust G")
    # absoluteness: restriction of M to each stage is a perfect matching of it
    for i in range(d.stages() + 1):
        es = d.stage_edges(i)
        vs = {v for e in es for v in e}
        restricted = [e for e in m.edges if e in es]
        covered = [v for e in restricted for v in e]
        if len(covered) != len(set(covered)) or set(covered) != vs:
            problems.append(f"absoluteness fails at stage {i}")
    return (not problems), problems


# -- matching-paths ------------------------------------------------------------


@dataclass(frozen=True)
class PathInfo:
    vertices: PathKey  # canonical orientation

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edges(self) -> List[Edge]:
        return [edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def end_edge(self, v: int) -> Edge:
        if v == self.vertices[0]:
            return edge(self.vertices[0], self.vertices[1])
        if v == self.vertices[-1]:
            return edge(self.vertices[-1], self.vertices[-2])
        raise KeyError(v)


def graph_paths(g_i: LabeledGraph) -> List[PathInfo]:
    """All paths between degree-3 vertices whose interiors are degree-2, i.e.
    the projection carriers of an intermediate ear-decomposition graph."""
    deg3 = {v for v in g_i.vertices if g_i.degree(v) == 3}
    if not deg3:
        raise GraphError("graph has no degree-3 vertices")
    paths: Set[PathKey] = set()
    for v in sorted(deg3):
        for w in g_i.sorted_neighbors(v):
            walk = [v, w]
            prev = v
            cur = w
            while cur not in deg3:
                nbs = [x for x in g_i.sorted_neighbors(cur) if x != prev]
                if len(nbs) != 1:
                    raise GraphError(f"vertex {cur} is neither degree 2 nor 3")
                prev, cur = cur, nbs[0]
                walk.append(cur)
            if walk[0] == walk[-1]:
                raise GraphError(f"closed path attached at single vertex {v}")
            paths.add(canonical_path(walk))
    return [PathInfo(p) for p in sorted(paths)]


def matching_paths(g_i: LabeledGraph, m: Matching) -> Dict[int, Dict[str, object]]:
    """Per degree-3 vertex: its pseudo-neighbors, incident paths, and the
    unique matching-path (the path whose end edge at v lies in M)."""
    paths = graph_paths(g_i)
    out: Dict[int, Dict[str, object]] = {}
    deg3 = [v for v in g_i.vertices if g_i.degree(v) == 3]
    for v in sorted(deg3):
        incident = [p for p in paths if v in p.ends]
        # a path with both ends at v cannot occur (rejected in graph_paths)
        expanded: List[PathInfo] = []
        for p in incident:
            expanded.append(p)
            if p.ends[0] == v and p.ends[1] == v:
                expanded.append(p)
        if len(incident) != 3:
            # both ends of some path may be v's pseudo-neighbors twice over
            # (two distinct paths with the same end pair are distinct objects)
            pass
        matching = [p for p in incident if p.end_edge(v) in m.edges]
        if len(matching) != 1:
            raise GraphError(f"vertex {v} has {len(matching)} matching-paths")
        out[v] = {
            "paths": incident,
            "matching_path": matching[0],
            "pseudo_neighbors": sorted({p.ends[0] if p.ends[1] == v else p.ends[1] for p in incident}),
        }
    return out


# -- ear square graphs -----------------------------------------------------------


@dataclass
class EarSquareGraph:
    """Squares plus projected paths over an intermediate graph G_i.

    ``squares[t]`` is the 4-cycle of square s_t in cyclic order;
    ``projections[path]`` holds the two edges projecting that path.
    """

    graph: LabeledGraph
    squares: Dict[int, Tuple[int, int, int, int]]
    projections: Dict[PathKey, Tuple[Edge, Edge]]

    def square_edges(self, t: int) -> List[Edge]:
        q = self.squares[t]
        return [edge(q[i], q[(i + 1) % 4]) for i in range(4)]

    def owner_map(self) -> Dict[int, int]:
        return {hv: t for t, q in self.squares.items() for hv in q}

    def support(self, path: PathKey, t: int) -> Edge:
        """Supporting edge of a projection inside square s_t."""
        q = set(self.squares[t])
        ends = [v for e in self.projections[path] for v in e if v in q]
        if len(ends) != 2 or ends[0] == ends[1]:
            raise GraphError(f"projection {path} does not land twice in square {t}")
        return edge(ends[0], ends[1])


def check_ear_square(
    q: EarSquareGraph,
    g_i: LabeledGraph,
    m: Matching,
) -> Tuple[bool, List[str]]:
    """The full ear-square-graph checker: square shape, exact edge
    decomposition, K2,2 projections with supports, the matching-path
    disjointness rule, and the unique adjacent degree-4 pair per square."""
    problems: List[str] = []
    deg3 = sorted(v for v in g_i.vertices if g_i.degree(v) == 3)
    paths = graph_paths(g_i)
    path_keys = {p.vertices for p in paths}

    if sorted(q.squares) != deg3:
        problems.append("squares are not indexed by the degree-3 vertices")
        return False, problems
    if set(q.projections) != path_keys:
        problems.append("projections are not indexed by the degree-2 paths")
        return False, problems

    owner: Dict[int, int] = {}
    for t, quad in q.squares.items():
        if len(set(quad)) != 4:
            problems.append(f"square {t} repeats vertices")
        for hv in quad:
            if hv in owner:
                problems.append(f"squares {owner[hv]} and {t} share vertex {hv}")
            owner[hv] = t
        for e in q.square_edges(t):
            if not q.graph.has_edge(*e):
                problems.append(f"square {t} missing edge {e}")
        for d in (edge(quad[0], quad[2]), edge(quad[1], quad[3])):
            if q.graph.has_edge(*d):
                problems.append(f"square {t} has diagonal {d}")
    if set(owner) != set(q.graph.vertices):
        problems.append("graph vertices are not exactly the square vertices")

    declared: Set[Edge] = set()
    for t in q.squares:
        declared.update(q.square_edges(t))
    for key, (e1, e2) in q.projections.items():
        for e in (e1, e2):
            if e in declared:
                problems.append(f"edge {e} used twice (projection {key})")
            declared.add(e)
    if declared != set(q.graph.edges):
        extra = set(q.graph.edges) - declared
        missing = declared - set(q.graph.edges)
        problems.append(f"edge decomposition mismatch (extra={sorted(extra)}, missing={sorted(missing)})")

    if problems:
        return False, problems

    # projection structure: two edges forming K2,2 with one support per side
    path_by_key = {p.vertices: p for p in paths}
    for key, (e1, e2) in q.projections.items():
        p = path_by_key[key]
        a, b = p.ends
        sa, sb = set(q.squares[a]), set(q.squares[b])
        ends_a = [v for e in (e1, e2) for v in e if v in sa]
        ends_b = [v for e in (e1, e2) for v in e if v in sb]
        if sorted(len(x) for x in (ends_a, ends_b)) != [2, 2] or set(ends_a) & set(ends_b):
            problems.append(f"projection {key} does not join squares {a} and {b}")
            continue
        if len(set(ends_a)) != 2 or len(set(ends_b)) != 2:
            problems.append(f"projection {key} lands twice on one vertex")
            continue
        ea, eb = edge(*ends_a), edge(*ends_b)
        if ea not in q.square_edges(a) or eb not in q.square_edges(b):
            problems.append(f"projection {key}: supports {ea}, {eb} are not square edges")
        # induced K2,2: exactly the two projection edges cross; the other two
        # cross pairs must be absent
        cross = {e1, e2}
        for x in ends_a:
            for y in ends_b:
                e = edge(x, y)
                if q.graph.has_edge(x, y) and e not in cross:
                    problems.append(f"projection {key}: extra cross edge {e}")

    # matching-path rule (clause for each degree-3 vertex)
    info = matching_paths(g_i, m)
    for v in deg3:
        mp: PathInfo = info[v]["matching_path"]  # type: ignore[assignment]
        cycles = [p for p in info[v]["paths"] if p.vertices != mp.vertices]  # type: ignore[union-attr]
        if len(cycles) != 2:
            problems.append(f"vertex {v}: expected 2 cycle-paths, got {len(cycles)}")
            continue
        try:
            s1 = q.support(cycles[0].vertices, v)
            s2 = q.support(cycles[1].vertices, v)
            q.support(mp.vertices, v)
        except GraphError as exc:
            problems.append(f"vertex {v}: {exc}")
            continue
        if set(s1) & set(s2):
            problems.append(f"vertex {v}: cycle-path supports {s1} and {s2} intersect")

    # unique adjacent degree-4 pair per square
    for t, quad in q.squares.items():
        degs = [q.graph.degree(x) for x in quad]
        fours = [j for j, d in enumerate(degs) if d == 4]
        threes = [j for j, d in enumerate(degs) if d == 3]
        ok = (
            len(fours) == 2
            and len(threes) == 2
            and (abs(fours[0] - fours[1]) in (1, 3))
        )
        if not ok:
            problems.append(f"square {t}: degree pattern {degs} is not 4,4,3,3 with adjacent 4s")

    return (not problems), problems


def check_square_graph(
    q: EarSquareGraph, g: LabeledGraph, m: Matching
) -> Tuple[bool, List[str]]:
    """Definition of M-square graphs plus the ladder-components property:
    removing the projections of matching edges leaves one ladder per cycle of
    G - M, spanning exactly the squares of that cycle's vertices."""
    ok, problems = check_ear_square(q, g, m)
    if {v for v in g.vertices if g.degree(v) == 3} != set(g.vertices):
        problems.append("not every vertex has degree 3")
        return False, problems

    matched_paths = [key for key in q.projections if edge(key[0], key[-1]) in m.edges and len(key) == 2]
    drop: Set[Edge] = set()
    for key in matched_paths:
        drop.update(q.projections[key])
    remaining = [e for e in q.graph.edges if e not in drop]
    rest = LabeledGraph(q.graph.vertices, remaining)

    # cycles of G - M
    gm = LabeledGraph(g.vertices, [e for e in g.edges if e not in m.edges])
    cycles: List[Set[int]] = []
    seen: Set[int] = set()
    for v in sorted(gm.vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in gm.sorted_neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        cycles.append(comp)

    comps: List[Set[int]] = []
    seen2: Set[int] = set()
    for v in sorted(rest.vertices):
        if v in seen2:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in rest.sorted_neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen2 |= comp
        comps.append(comp)

    if len(comps) != len(cycles):
        problems.append(f"{len(comps)} ladder components vs {len(cycles)} cycles of G - M")
    owner = q.owner_map()
    for comp in comps:
        owners = {owner[x] for x in comp}
        match = [c for c in cycles if c == owners]
        if not match:
            problems.append(f"component over squares {sorted(owners)} matches no cycle of G - M")
            continue
        if len(comp) != 4 * len(owners):
            problems.append(f"ladder component has {len(comp)} vertices, expected {4 * len(owners)}")
        for x in comp:
            if len([y for y in rest.neighbors(x) if y in comp]) != 3:
                problems.append(f"ladder component vertex {x} has degree != 3")
                break
        # contracting each square must give the cycle itself
        quotient_edges = set()
        for x in comp:
            for y in rest.neighbors(x):
                if owner[x] != owner[y]:
                    quotient_edges.add(edge(owner[x], owner[y]))
        if len(owners) >= 3:
            deg = {t: 0 for t in owners}
            for a, b in quotient_edges:
                deg[a] += 1
                deg[b] += 1
            if any(d != 2 for d in deg.values()) or len(quotient_edges) != len(owners):
                problems.append(f"component over {sorted(owners)} does not contract to a cycle")
    return (not problems), problems
