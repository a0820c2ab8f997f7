"""Braces, McCuaig expansions/augmentations, base families, and traces.

A brace is a connected simple bipartite graph on at least six vertices with a
perfect matching in which every pair of vertex-disjoint edges extends to a
perfect matching.  All braces arise from the Moebius ladder / ladder / biwheel
base families by four augmentation operations; the two "simple" ones (adding
an edge, and expanding a vertex while adding one edge at the new middle
vertex) are the only ones the generation pipeline needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from .graphs import (
    BipartiteMatcher,
    Bipartition,
    Edge,
    GraphError,
    LabeledGraph,
    bipartition,
    edge,
    enumerate_perfect_matchings,
    find_perfect_matching,
    is_connected,
)


@dataclass(frozen=True)
class BraceReport:
    is_brace: bool
    reason: str = ""
    witness_pair: Optional[Tuple[Edge, Edge]] = None


def is_brace(g: LabeledGraph) -> BraceReport:
    """Full brace test: simple/connected/bipartite/>=6 vertices/perfectly
    matchable, plus the extendability of every vertex-disjoint edge pair.

    The witness on failure is the lexicographically first failing pair.
    """
    if g.n() < 6:
        return BraceReport(False, f"only {g.n()} vertices, need at least 6")
    if not is_connected(g):
        return BraceReport(False, "not connected")
    try:
        classes = bipartition(g)
    except GraphError as exc:
        return BraceReport(False, f"not bipartite: {exc}")
    matcher = BipartiteMatcher(g, classes)
    if not matcher.has_perfect_matching_avoiding(frozenset()):
        return BraceReport(False, "no perfect matching")
    es = g.edges
    for i, e in enumerate(es):
        for f in es[i + 1 :]:
            if set(e) & set(f):
                continue
            if not matcher.has_perfect_matching_avoiding(frozenset(e) | frozenset(f)):
                return BraceReport(False, f"pair {e}, {f} extends to no perfect matching", (e, f))
    return BraceReport(True)


# -- expansion and augmentations ----------------------------------------------


def expand(
    g: LabeledGraph,
    x: int,
    n1: Sequence[int],
    n2: Sequence[int],
    fresh: Tuple[int, int, int],
) -> LabeledGraph:
    """Expansion of x to the path x1 - v - x2.

    x (degree >= 4) is deleted; N1 attaches to x1, N2 to x2, and {N1, N2}
    must partition N(x) with both sides of size >= 2.  ``fresh`` supplies the
    labels (x1, v, x2), which must be unused.
    """
    if not g.has_vertex(x):
        raise GraphError(f"no vertex {x}")
    if g.degree(x) < 4:
        raise GraphError(f"vertex {x} has degree {g.degree(x)}, expansion needs at least 4")
    s1, s2 = set(n1), set(n2)
    if len(s1) < 2 or len(s2) < 2:
        raise GraphError("both partition classes need at least 2 neighbors")
    if s1 & s2 or (s1 | s2) != set(g.neighbors(x)):
        raise GraphError(f"{sorted(s1)} / {sorted(s2)} is not a partition of N({x})")
    x1, v, x2 = fresh
    for lab in fresh:
        if g.has_vertex(lab):
            raise GraphError(f"fresh label {lab} already in use")
    if len(set(fresh)) != 3:
        raise GraphError("fresh labels must be distinct")
    vertices = [w for w in g.vertices if w != x] + [x1, v, x2]
    edges = [e for e in g.edges if x not in e]
    edges += [edge(x1, v), edge(v, x2)]
    edges += [edge(w, x1) for w in sorted(s1)]
    edges += [edge(w, x2) for w in sorted(s2)]
    return LabeledGraph(vertices, edges)


def augment_type1(g: LabeledGraph, u: int, v: int) -> LabeledGraph:
    """Add a new edge across the bipartition classes."""
    classes = bipartition(g)
    if classes.same_class(u, v):
        raise GraphError(f"{u} and {v} lie in the same partition class")
    if g.has_edge(u, v):
        raise GraphError(f"edge {edge(u, v)} already present")
    return g.with_edge(u, v)


def augment_type2(
    g: LabeledGraph,
    x: int,
    n1: Sequence[int],
    n2: Sequence[int],
    fresh: Tuple[int, int, int],
    w: int,
) -> LabeledGraph:
    """Expand x and join the new middle vertex to w (same class as x)."""
    classes = bipartition(g)
    if w == x:
        raise GraphError("w must differ from x")
    if not classes.same_class(x, w):
        raise GraphError(f"{w} is not in the partition class of {x}")
    g2 = expand(g, x, n1, n2, fresh)
    return g2.with_edge(fresh[1], w)


def augment_type3_4(
    g: LabeledGraph,
    x: int,
    part_x: Tuple[Sequence[int], Sequence[int]],
    fresh_x: Tuple[int, int, int],
    y: int,
    part_y: Tuple[Sequence[int], Sequence[int]],
    fresh_y: Tuple[int, int, int],
) -> Tuple[LabeledGraph, str]:
    """Double expansion plus middle-to-middle edge; returns (graph, kind)
    where kind is "type3" (x, y nonadjacent) or "type4" (adjacent)."""
    classes = bipartition(g)
    if classes.same_class(x, y):
        raise GraphError(f"{x} and {y} lie in the same partition class")
    kind = "type4" if g.has_edge(x, y) else "type3"
    g2 = expand(g, x, part_x[0], part_x[1], fresh_x)
    # y keeps its neighbors except that an x-y edge now attaches y to x1 or x2.
    g3 = expand(g2, y, part_y[0], part_y[1], fresh_y)
    return g3.with_edge(fresh_x[1], fresh_y[1]), kind


# -- base families --------------------------------------------------------------


def generate_base(family: str, size: int) -> LabeledGraph:
    """Bipartite base-family member: moebius_ladder (6, 10, 14, ...),
    ladder (8, 12, 16, ...) or biwheel (10, 12, 14, ...)."""
    if family == "moebius_ladder":
        if size < 6 or size % 4 != 2:
            raise GraphError("bipartite Moebius ladders have sizes 6, 10, 14, ...")
        k = size // 2
        es = [edge(i, (i + 1) % size) for i in range(size)]
        es += [edge(i, i + k) for i in range(k)]
        return LabeledGraph(range(size), es)
    if family == "ladder":
        if size < 8 or size % 4 != 0:
            raise GraphError("bipartite ladders have sizes 8, 12, 16, ...")
        k = size // 2
        outer = [edge(i, (i + 1) % k) for i in range(k)]
        inner = [edge(k + i, k + (i + 1) % k) for i in range(k)]
        rungs = [edge(i, k + i) for i in range(k)]
        return LabeledGraph(range(size), outer + inner + rungs)
    if family == "biwheel":
        if size < 10 or size % 2 != 0:
            raise GraphError("biwheels have even sizes 10, 12, 14, ...")
        rim = size - 2
        hub_even, hub_odd = size - 2, size - 1
        es = [edge(i, (i + 1) % rim) for i in range(rim)]
        es += [edge(hub_even, i) for i in range(0, rim, 2)]
        es += [edge(hub_odd, i) for i in range(1, rim, 2)]
        return LabeledGraph(range(size), es)
    raise GraphError(f"unknown base family {family!r}")


BASE_FAMILIES = ("moebius_ladder", "ladder", "biwheel")


def base_sizes(family: str, up_to: int) -> List[int]:
    start = {"moebius_ladder": 6, "ladder": 8, "biwheel": 10}[family]
    step = {"moebius_ladder": 4, "ladder": 4, "biwheel": 2}[family]
    return list(range(start, up_to + 1, step))


# -- augmentation traces ---------------------------------------------------------


@dataclass(frozen=True)
class AugmentationStep:
    """One replayable step.  Payload fields by kind:

    - type1: edge=(u, v)
    - expand: x, n1, n2, x1, v, x2
    - type2: the expand payload plus w
    - type3 / type4: x, n1, n2, x1, v, x2 describe the first expansion and
      y, m1, m2, y1, u, y2 the second; the middle vertices get joined.
    """

    kind: str
    payload: Dict[str, object]

    def to_obj(self) -> Dict[str, object]:
        obj: Dict[str, object] = {"kind": self.kind}
        obj.update(self.payload)
        return obj

    @staticmethod
    def from_obj(obj: Dict[str, object]) -> "AugmentationStep":
        kind = obj["kind"]
        payload = {k: v for k, v in obj.items() if k != "kind"}
        return AugmentationStep(str(kind), payload)


def step_type1(u: int, v: int) -> AugmentationStep:
    return AugmentationStep("type1", {"edge": [u, v]})


def step_type2(x: int, n1: Sequence[int], n2: Sequence[int], x1: int, v: int, x2: int, w: int) -> AugmentationStep:
    return AugmentationStep(
        "type2",
        {"x": x, "n1": sorted(n1), "n2": sorted(n2), "x1": x1, "v": v, "x2": x2, "w": w},
    )


def step_expand(x: int, n1: Sequence[int], n2: Sequence[int], x1: int, v: int, x2: int) -> AugmentationStep:
    return AugmentationStep(
        "expand",
        {"x": x, "n1": sorted(n1), "n2": sorted(n2), "x1": x1, "v": v, "x2": x2},
    )


@dataclass
class AugmentationTrace:
    base: Union[str, LabeledGraph]
    steps: List[AugmentationStep] = field(default_factory=list)

    def to_json(self) -> str:
        if isinstance(self.base, str):
            base_obj: object = self.base
        else:
            base_obj = {"n": self.base.n(), "edges": [list(e) for e in self.base.edges]}
        return json.dumps(
            {"base": base_obj, "steps": [s.to_obj() for s in self.steps]}, indent=2
        )

    @staticmethod
    def from_json(text: str) -> "AugmentationTrace":
        data = json.loads(text)
        base = data["base"]
        if isinstance(base, dict):
            base_graph = LabeledGraph(
                range(int(base["n"])), [edge(int(a), int(b)) for a, b in base["edges"]]
            )
            return AugmentationTrace(base_graph, [AugmentationStep.from_obj(s) for s in data["steps"]])
        return AugmentationTrace(str(base), [AugmentationStep.from_obj(s) for s in data["steps"]])


NAMED_BASES = {
    "L8": lambda: generate_base("ladder", 8),
    "L12": lambda: generate_base("ladder", 12),
    "M6": lambda: generate_base("moebius_ladder", 6),
    "M10": lambda: generate_base("moebius_ladder", 10),
    "B10": lambda: generate_base("biwheel", 10),
}


def resolve_base(base: Union[str, LabeledGraph]) -> LabeledGraph:
    if isinstance(base, LabeledGraph):
        return base
    if base in NAMED_BASES:
        return NAMED_BASES[base]()
    raise GraphError(f"unknown named base {base!r}")


@dataclass
class ReplayReport:
    ok: bool
    graph: Optional[LabeledGraph]
    log: List[str]
    failed_step: Optional[int] = None


def apply_step(g: LabeledGraph, step: AugmentationStep) -> LabeledGraph:
    p = step.payload
    if step.kind == "type1":
        u, v = p["edge"]  # type: ignore[misc]
        return augment_type1(g, int(u), int(v))
    if step.kind == "expand":
        return expand(g, int(p["x"]), list(p["n1"]), list(p["n2"]), (int(p["x1"]), int(p["v"]), int(p["x2"])))
    if step.kind == "type2":
        return augment_type2(
            g,
            int(p["x"]),
            list(p["n1"]),
            list(p["n2"]),
            (int(p["x1"]), int(p["v"]), int(p["x2"])),
            int(p["w"]),
        )
    if step.kind in ("type3", "type4"):
        g2, kind = augment_type3_4(
            g,
            int(p["x"]),
            (list(p["n1"]), list(p["n2"])),
            (int(p["x1"]), int(p["v"]), int(p["x2"])),
            int(p["y"]),
            (list(p["m1"]), list(p["m2"])),
            (int(p["y1"]), int(p["u"]), int(p["y2"])),
        )
        if kind != step.kind:
            raise GraphError(f"step declared {step.kind} but classification is {kind}")
        return g2
    raise GraphError(f"unknown step kind {step.kind!r}")


def replay_trace(
    trace: AugmentationTrace,
    spot_check_brace: Optional[int] = None,
    collect_intermediates: bool = False,
) -> ReplayReport:
    """Apply the steps in order, validating preconditions and bipartiteness at
    every stage.  ``spot_check_brace=K`` additionally runs the full brace test
    on every K-th intermediate graph."""
    log: List[str] = []
    g = resolve_base(trace.base)
    try:
        bipartition(g)
    except GraphError as exc:
        return ReplayReport(False, None, [f"base is not bipartite: {exc}"], failed_step=-1)
    log.append(f"base: n={g.n()} m={g.m()}")
    intermediates: List[LabeledGraph] = [g]
    for i, step in enumerate(trace.steps):
        try:
            g = apply_step(g, step)
            bipartition(g)
        except GraphError as exc:
            log.append(f"step {i} ({step.kind}): FAILED: {exc}")
            return ReplayReport(False, None, log, failed_step=i)
        log.append(f"step {i} ({step.kind}): ok, n={g.n()} m={g.m()}")
        if collect_intermediates:
            intermediates.append(g)
        if spot_check_brace and (i + 1) % spot_check_brace == 0:
            rep = is_brace(g)
            if not rep.is_brace:
                log.append(f"step {i}: brace spot check FAILED: {rep.reason}")
                return ReplayReport(False, None, log, failed_step=i)
            log.append(f"step {i}: brace spot check ok")
    report = ReplayReport(True, g, log)
    if collect_intermediates:
        report.intermediates = intermediates  # type: ignore[attr-defined]
    return report


def is_brace_bruteforce(g: LabeledGraph) -> BraceReport:
    """Enumeration-based oracle for small graphs: checks each disjoint pair
    against the full perfect-matching list."""
    if g.n() < 6:
        return BraceReport(False, f"only {g.n()} vertices, need at least 6")
    if not is_connected(g):
        return BraceReport(False, "not connected")
    try:
        bipartition(g)
    except GraphError as exc:
        return BraceReport(False, f"not bipartite: {exc}")
    pms = enumerate_perfect_matchings(g)
    if not pms:
        return BraceReport(False, "no perfect matching")
    es = g.edges
    for i, e in enumerate(es):
        for f in es[i + 1 :]:
            if set(e) & set(f):
                continue
            if not any(e in pm.edges and f in pm.edges for pm in pms):
                return BraceReport(False, f"pair {e}, {f} extends to no perfect matching", (e, f))
    return BraceReport(True)
