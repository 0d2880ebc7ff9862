"""The two-fold covering of a framed 4-graph and the projection to one sheet.

Edges of a spanning tree are good.  A non-tree edge is good when its
fundamental cycle goes straight through (from a half-edge to the opposite
one) at an even number of vertices.  Good edges lift sheet-preserving, bad
edges swap sheets.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .diagram import FramedGraph, HalfEdge, LinkDiagram, Word, framed_graph
from .errors import NotAKnot, SelfDualComponent
from .parity import gaussian_parities


@dataclass(frozen=True)
class CycleClass:
    edge: int
    cycle: Tuple[int, ...]
    rotating: int
    transversal: int

    @property
    def good(self) -> bool:
        return self.transversal % 2 == 0


@dataclass(frozen=True)
class EdgeClassification:
    tree: FrozenSet[int]
    cycles: Dict[int, CycleClass]

    def is_good(self, e: int) -> bool:
        return e in self.tree or self.cycles[e].good

    def bad_edges(self) -> List[int]:
        return sorted(e for e, c in self.cycles.items() if not c.good)

    def to_json(self) -> dict:
        return {
            "tree": sorted(self.tree),
            "edges": {
                str(e): {
                    "good": c.good,
                    "cycle": list(c.cycle),
                    "rotating": c.rotating,
                    "transversal": c.transversal,
                }
                for e, c in sorted(self.cycles.items())
            },
        }


def spanning_forest(g: FramedGraph, order: Sequence[int]) -> FrozenSet[int]:
    parent = {v: v for v in g.vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for e in order:
        a, b = find(g.ends[e][0]), find(g.ends[e][1])
        if a != b:
            parent[a] = b
            tree.append(e)
    return frozenset(tree)


def all_spanning_trees(g: FramedGraph) -> Iterable[FrozenSet[int]]:
    """Every spanning forest of ``g`` (a spanning tree when ``g`` is connected)."""
    size = len(spanning_forest(g, range(len(g.ends))))
    for combo in itertools.combinations(range(len(g.ends)), size):
        if len(spanning_forest(g, combo)) == size:
            yield frozenset(combo)


def _end_at(g: FramedGraph, e: int, v: str) -> int:
    return 0 if g.ends[e][0] == v else 1


def _tree_path(g: FramedGraph, tree: FrozenSet[int], a: str, b: str) -> List[int]:
    """Tree edges from ``a`` to ``b``, in walking order."""
    adj: Dict[str, List[Tuple[str, int]]] = {v: [] for v in g.vertices}
    for e in sorted(tree):
        x, y = g.ends[e]
        adj[x].append((y, e))
        adj[y].append((x, e))
    prev: Dict[str, Optional[Tuple[str, int]]] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y, e in adj[x]:
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    path = []
    while b != a:
        b, e = prev[b]
        path.append(e)
    return path[::-1]


def _classify(g: FramedGraph, tree: FrozenSet[int], e: int) -> CycleClass:
    v, w = g.ends[e]
    # walk e from v to w, then back to v along the tree
    arrive: HalfEdge = (e, 1)
    here = w
    rotating = transversal = 0
    path = _tree_path(g, tree, w, v)
    for f in path + [None]:
        leave = (e, 0) if f is None else (f, _end_at(g, f, here))
        if g.opposite[arrive] == leave:
            transversal += 1
        else:
            rotating += 1
        if f is not None:
            arrive = (f, 1 - leave[1])
            here = g.vertex_of(arrive)
    return CycleClass(e, tuple([e] + path), rotating, transversal)


def classify_edges(
    g: FramedGraph, tree_seed: Optional[int] = None, tree: Optional[Iterable[int]] = None
) -> EdgeClassification:
    """Good/bad label for every edge relative to a spanning tree.

    The tree is taken greedily in edge order, in a shuffled order when
    ``tree_seed`` is given, or as passed in ``tree``.
    """
    if tree is None:
        order = list(range(len(g.ends)))
        if tree_seed is not None:
            random.Random(tree_seed).shuffle(order)
        tree = spanning_forest(g, order)
    tree = frozenset(tree)
    cycles = {e: _classify(g, tree, e) for e in range(len(g.ends)) if e not in tree}
    return EdgeClassification(tree, cycles)


# ---------------------------------------------------------------- covering


def lift_label(v: str, sheet: int) -> str:
    return f"{v}_{sheet}"


@dataclass
class CoveringGraph:
    graph: FramedGraph
    classification: EdgeClassification
    vertex_dual: Dict[str, str]
    edge_dual: Dict[int, int]
    components: List[Word] = field(default_factory=list)
    dual: List[int] = field(default_factory=list)  # dual[i] = index of the dual component

    @property
    def diagram(self) -> LinkDiagram:
        return LinkDiagram(tuple(self.components))

    def self_dual(self) -> List[int]:
        return [i for i, j in enumerate(self.dual) if i == j]

    def to_json(self) -> dict:
        from .diagram import serialize

        return {
            "diagram": serialize(self.diagram),
            "involution": dict(sorted(self.vertex_dual.items())),
            "dual_components": self.dual,
            "bad_edges": self.classification.bad_edges(),
        }


def _walk(g: FramedGraph) -> List[Tuple[Word, FrozenSet[int]]]:
    """Unicursal components as (word, edge set); same walk as ``traverse``."""
    used = set()
    out = []
    for e0 in range(len(g.ends)):
        if e0 in used:
            continue
        word, edges = [], set()
        e, k = e0, 0
        while True:
            used.add(e)
            edges.add(e)
            h = (e, 1 - k)
            word.append(g.vertex_of(h))
            e, k = g.opposite[h]
            if e == e0 and k == 0:
                break
        out.append((tuple(word), frozenset(edges)))
    return out


def covering_K2(d: LinkDiagram, tree_seed: Optional[int] = None, tree: Optional[Iterable[int]] = None) -> CoveringGraph:
    """Doubled graph: lifted edge ``2e + s`` starts on sheet ``s + 1``."""
    g = framed_graph(d)
    cls = classify_edges(g, tree_seed, tree)
    sheet_of_head = {}
    ends = []
    for e, (v, w) in enumerate(g.ends):
        for s in (1, 2):
            head = s if cls.is_good(e) else 3 - s
            sheet_of_head[(e, s)] = head
            ends.append((lift_label(v, s), lift_label(w, head)))

    def lift(h: HalfEdge, sheet: int) -> HalfEdge:
        """The lift of half-edge ``h`` that sits on the given sheet."""
        e, k = h
        if k == 0:
            return (2 * e + sheet - 1, 0)
        s = sheet if cls.is_good(e) else 3 - sheet
        return (2 * e + s - 1, 1)

    opposite = {}
    for h, o in g.opposite.items():
        for sheet in (1, 2):
            opposite[lift(h, sheet)] = lift(o, sheet)
    vertices = [lift_label(v, s) for v in g.vertices for s in (1, 2)]
    g2 = FramedGraph(vertices, ends, opposite, 2 * g.circles)
    vertex_dual = {lift_label(v, s): lift_label(v, 3 - s) for v in g.vertices for s in (1, 2)}
    edge_dual = {2 * e + s: 2 * e + 1 - s for e in range(len(g.ends)) for s in (0, 1)}

    walked = _walk(g2)
    owner = {e: i for i, (_, es) in enumerate(walked) for e in es}
    dual = [owner[edge_dual[min(es)]] for _, es in walked]
    components = [w for w, _ in walked]
    n = len(components)
    for k in range(g.circles):
        components += [(), ()]
        dual += [n + 2 * k + 1, n + 2 * k]
    return CoveringGraph(g2, cls, vertex_dual, edge_dual, components, dual)


def kprime_from_k2(c: CoveringGraph) -> LinkDiagram:
    """Keep the first-walked component of each dual pair."""
    bad = c.self_dual()
    if bad:
        raise SelfDualComponent(f"components {bad} are self-dual", components=bad)
    keep = [i for i, j in enumerate(c.dual) if i < j]
    return c.diagram.sublink(keep)


def projection_Kprime(d: LinkDiagram) -> LinkDiagram:
    """Delete both occurrences of every Gaussian-odd crossing."""
    if len(d.components) != 1:
        raise NotAKnot(f"diagram has {len(d.components)} components")
    odd = set(gaussian_parities(d).odd())
    return LinkDiagram((tuple(x for x in d.components[0] if x not in odd),))
