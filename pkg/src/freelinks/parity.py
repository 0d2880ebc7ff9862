"""Crossing parities: Gaussian, relative to a second component, and homological."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .diagram import LinkDiagram, halves
from .errors import InvalidCycle, NotPure, OddComponentLength, OddMixedCount, WrongComponentCount
from .moves import DEC, INC, R1, R2, R3, MoveApplication, apply_move

GAUSSIAN = "gaussian"
P_L = "pL"


@dataclass(frozen=True)
class ParityAssignment:
    rule: str
    values: Dict[str, int]
    scope: Optional[int] = None  # component whose pure crossings are covered; None = all

    def odd(self) -> List[str]:
        return [x for x, b in self.values.items() if b]


def _require_pure(d: LinkDiagram, v: str, component: Optional[int] = None) -> int:
    (c1, _), (c2, _) = d.occurrences(v)
    if c1 != c2 or (component is not None and c1 != component):
        raise NotPure(f"crossing {v!r} is not a pure crossing of component {component}", crossing=v)
    return c1


def gaussian_parity(d: LinkDiagram, v: str) -> int:
    """Parity of the passages strictly inside a half at ``v``.

    On a knot this is the number of chords linked with ``v`` mod 2.
    """
    c = _require_pure(d, v)
    if len(d.components[c]) % 2:
        raise OddComponentLength(f"component {c} has odd length", component=c)
    return len(halves(d, v)[0]) % 2


def gaussian_parities(d: LinkDiagram, component: Optional[int] = None) -> ParityAssignment:
    vals = {}
    for v in d.pure_crossings(component):
        vals[v] = gaussian_parity(d, v)
    return ParityAssignment(GAUSSIAN, vals, component)


def mixed_between(d: LinkDiagram, k: int, l: int) -> FrozenSet[str]:
    return frozenset(d.mixed_crossings(k, l)) if k != l else frozenset()


def p_L(d: LinkDiagram, v: str, k: int = 0, l: int = 1) -> int:
    """Parity of crossings with component ``l`` inside a half of ``v`` on component ``k``."""
    if len(d.components) < 2:
        raise WrongComponentCount("p_L needs two components")
    _require_pure(d, v, k)
    mixed = mixed_between(d, k, l)
    if len(mixed) % 2:
        raise OddMixedCount(f"{len(mixed)} mixed crossings between {k} and {l}", count=len(mixed))
    h1, _ = halves(d, v)
    return sum(1 for x in h1 if x in mixed) % 2


def p_L_parities(d: LinkDiagram, k: int = 0, l: int = 1) -> ParityAssignment:
    return ParityAssignment(P_L, {v: p_L(d, v, k, l) for v in d.pure_crossings(k)}, k)


# ---------------------------------------------------------------- homology cycles


@dataclass(frozen=True)
class Cycle:
    edges: FrozenSet[int]
    markers: FrozenSet[str]  # crossings with the other component lying on the cycle

    @property
    def intersections(self) -> int:
        return len(self.markers)

    @property
    def valid(self) -> bool:
        return self.intersections % 2 == 0


@dataclass(frozen=True)
class CycleBasis:
    component: int
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, Tuple[str, ...]], ...]  # (tail, head, markers)
    tree: FrozenSet[int]
    cycles: Tuple[Cycle, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.cycles)


def component_graph(d: LinkDiagram, l: int = 1):
    """Graph of component ``l`` alone: pure crossings of ``l`` as vertices.

    Edges run between consecutive pure occurrences in the word; passages of
    mixed crossings become markers on the edge that carries them.
    """
    w = d.components[l]
    pure = set(d.pure_crossings(l))
    idx = [i for i, x in enumerate(w) if x in pure]
    edges = []
    for a, i in enumerate(idx):
        j = idx[(a + 1) % len(idx)]
        span = w[i + 1 : j] if j > i else w[i + 1 :] + w[:j]
        edges.append((w[i], w[j], tuple(x for x in span if x not in pure)))
    return tuple(sorted(pure, key=w.index)), tuple(edges)


def cycle_basis(d: LinkDiagram, l: int = 1) -> CycleBasis:
    """Fundamental cycles of the first spanning tree found in edge order.

    A component without pure crossings gives an empty basis.
    """
    vertices, edges = component_graph(d, l)
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    tree = []
    for e, (a, b, _) in enumerate(edges):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.append(e)
    adj: Dict[str, List[Tuple[str, int]]] = {v: [] for v in vertices}
    for e in tree:
        a, b, _ = edges[e]
        adj[a].append((b, e))
        adj[b].append((a, e))

    def tree_path(a: str, b: str) -> List[int]:
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            for y, e in adj[x]:
                if y not in prev:
                    prev[y] = (x, e)
                    stack.append(y)
        out = []
        while b != a:
            b, e = prev[b]
            out.append(e)
        return out

    cycles = []
    tree_set = frozenset(tree)
    for e, (a, b, _) in enumerate(edges):
        if e in tree_set:
            continue
        es = frozenset([e, *tree_path(a, b)])
        markers = frozenset(x for f in es for x in edges[f][2])
        cycles.append(Cycle(es, markers))
    return CycleBasis(l, vertices, edges, tree_set, tuple(cycles))


def homology_parity(d: LinkDiagram, v: str, cycle: Cycle, k: int = 0) -> int:
    """Parity of crossings in a half of ``v`` (on component ``k``) lying on ``cycle``."""
    if not cycle.valid:
        raise InvalidCycle(f"cycle meets the other component {cycle.intersections} times")
    _require_pure(d, v, k)
    h1, _ = halves(d, v)
    return sum(1 for x in h1 if x in cycle.markers) % 2


# ---------------------------------------------------------------- axiom checks


@dataclass
class AxiomReport:
    rule: str
    move: MoveApplication
    applicable: bool = True
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def parity_values(rule: str, d: LinkDiagram) -> Optional[Dict[str, int]]:
    """Parities under ``rule``, or None where the rule does not apply to ``d``."""
    try:
        if rule == GAUSSIAN:
            if any(len(w) % 2 for w in d.components):
                return None
            return gaussian_parities(d).values
        if rule == P_L:
            if len(d.components) != 2:
                return None
            return p_L_parities(d).values
    except OddMixedCount:
        return None
    raise ValueError(f"unknown parity rule {rule!r}")


def check_parity_axioms(rule: str, d: LinkDiagram, m: MoveApplication) -> AxiomReport:
    """Check one move against the parity axioms, comparing crossings by label."""
    e = apply_move(d, m)
    return compare_parities(rule, m, parity_values(rule, d), parity_values(rule, e))


def compare_parities(
    rule: str, m: MoveApplication, before: Optional[Dict[str, int]], after: Optional[Dict[str, int]]
) -> AxiomReport:
    """Axiom check from parity values on both sides of ``m``; None means not applicable."""
    report = AxiomReport(rule, m)
    if before is None or after is None:
        report.applicable = False
        return report
    big = after if m.direction == INC else before
    involved = set(m.labels)
    bad = report.violations
    if m.kind == R1:
        (x,) = m.labels
        if x in big and big[x] != 0:
            bad.append(f"R1 crossing {x} is odd")
    elif m.kind == R2 and m.direction in (DEC, INC):
        u, w = m.labels
        if u in big and w in big and big[u] != big[w]:
            bad.append(f"R2 crossings {u},{w} differ: {big[u]} vs {big[w]}")
        elif (u in big) != (w in big):
            bad.append(f"R2 crossings {u},{w}: only one is in scope")
    elif m.kind == R3:
        for x in m.labels:
            if (x in before) != (x in after):
                bad.append(f"R3 crossing {x} changed scope")
            elif x in before and before[x] != after[x]:
                bad.append(f"R3 crossing {x}: {before[x]} -> {after[x]}")
        if all(x in before for x in m.labels):
            n_odd = sum(before[x] for x in m.labels)
            if n_odd % 2:
                bad.append(f"R3 triangle has {n_odd} odd crossings")
    for x in set(before) & set(after) - involved:
        if before[x] != after[x]:
            bad.append(f"untouched crossing {x}: {before[x]} -> {after[x]}")
    return report
