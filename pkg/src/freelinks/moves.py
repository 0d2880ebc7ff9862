"""Reidemeister moves on Gauss codes and bounded searches over the move graph."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .diagram import (
    LinkDiagram,
    parse_gauss,
    canonical_diagram,
    canonicalize,
    has_trivial_split_component,
    is_split_diagram,
    mixed_count_matrix,
)
from .errors import FewerThanTwoComponents, InvalidSite

R1, R2, R3 = "R1", "R2", "R3"
DEC, INC, NEUTRAL = "decreasing", "increasing", "neutral"

Pos = Tuple[int, int]
Pair = Tuple[Pos, Pos]


@dataclass(frozen=True)
class MoveApplication:
    """One move instance.

    Decreasing and neutral moves name their ``labels`` and the adjacent
    occurrence ``pairs`` they act on.  Increasing moves name insertion
    ``gaps`` (component, index before which to insert), the new ``labels``
    and, for R2, whether the second strand runs the ``same`` way.
    """

    kind: str
    direction: str
    labels: Tuple[str, ...]
    pairs: Tuple[Pair, ...] = ()
    gaps: Tuple[Pos, ...] = ()
    same: bool = False

    def to_json(self) -> dict:
        out = {"kind": self.kind, "direction": self.direction, "labels": list(self.labels)}
        if self.pairs:
            out["pairs"] = [[list(a), list(b)] for a, b in self.pairs]
        if self.gaps:
            out["gaps"] = [list(g) for g in self.gaps]
            if self.kind == R2:
                out["same"] = self.same
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MoveApplication":
        return cls(
            kind=data["kind"],
            direction=data["direction"],
            labels=tuple(data["labels"]),
            pairs=tuple((tuple(a), tuple(b)) for a, b in data.get("pairs", ())),
            gaps=tuple(tuple(g) for g in data.get("gaps", ())),
            same=data.get("same", False),
        )


@dataclass(frozen=True)
class Caps:
    """Limits on increasing-move enumeration."""

    increasing: bool = True
    max_crossings: Optional[int] = None
    r1: bool = True
    r2: bool = True


NO_INCREASE = Caps(increasing=False)


def _adjacent_pairs(d: LinkDiagram) -> Dict[frozenset, List[Pair]]:
    """Map each unordered label pair to the cyclically adjacent position pairs realizing it."""
    out: Dict[frozenset, List[Pair]] = {}
    for c, w in enumerate(d.components):
        n = len(w)
        if n < 2:
            continue
        for i in range(n):
            j = (i + 1) % n
            a, b = w[i], w[j]
            if a != b:
                out.setdefault(frozenset((a, b)), []).append(((c, i), (c, j)))
    return out


def _disjoint(*pairs: Pair) -> bool:
    flat = [p for pair in pairs for p in pair]
    return len(set(flat)) == len(flat)


def decreasing_r1_sites(d: LinkDiagram) -> List[MoveApplication]:
    out = []
    for c, w in enumerate(d.components):
        n = len(w)
        for i in range(n):
            j = (i + 1) % n
            if n >= 2 and w[i] == w[j] and (n > 2 or i == 0):
                out.append(MoveApplication(R1, DEC, (w[i],), (((c, i), (c, j)),)))
    return out


def decreasing_r2_sites(d: LinkDiagram) -> List[MoveApplication]:
    """Two crossings joined by two disjoint adjacent occurrence pairs, either order."""
    out = []
    for key, pairs in sorted(_adjacent_pairs(d).items(), key=lambda kv: sorted(kv[0])):
        for p, q in itertools.combinations(pairs, 2):
            if _disjoint(p, q):
                out.append(MoveApplication(R2, DEC, tuple(sorted(key)), (p, q)))
                break  # every choice deletes the same four occurrences
    return out


def r3_sites(d: LinkDiagram) -> List[MoveApplication]:
    adj = _adjacent_pairs(d)
    labels = d.crossings()
    out = []
    seen = set()
    for a, b, c in itertools.combinations(labels, 3):
        ab, bc, ac = adj.get(frozenset((a, b))), adj.get(frozenset((b, c))), adj.get(frozenset((a, c)))
        if not (ab and bc and ac):
            continue
        for p, q, r in itertools.product(ab, bc, ac):
            if _disjoint(p, q, r):
                key = frozenset((p, q, r))
                if key not in seen:
                    seen.add(key)
                    out.append(MoveApplication(R3, NEUTRAL, (a, b, c), (p, q, r)))
    return out


def _gaps(d: LinkDiagram) -> List[Pos]:
    return [(c, i) for c, w in enumerate(d.components) for i in range(max(len(w), 1))]


def increasing_sites(d: LinkDiagram, caps: Caps) -> List[MoveApplication]:
    if not caps.increasing:
        return []
    out = []
    gaps = _gaps(d)
    n = d.n_crossings
    if caps.r1 and (caps.max_crossings is None or n + 1 <= caps.max_crossings):
        (x,) = d.fresh_labels(1)
        out.extend(MoveApplication(R1, INC, (x,), gaps=(g,)) for g in gaps)
    if caps.r2 and (caps.max_crossings is None or n + 2 <= caps.max_crossings):
        u, w = d.fresh_labels(2)
        for g1, g2 in itertools.combinations_with_replacement(gaps, 2):
            for same in (False, True):
                out.append(MoveApplication(R2, INC, (u, w), gaps=(g1, g2), same=same))
    return out


def enumerate_moves(d: LinkDiagram, caps: Caps = Caps()) -> List[MoveApplication]:
    """All decreasing and neutral sites, then increasing sites allowed by ``caps``."""
    return decreasing_r1_sites(d) + decreasing_r2_sites(d) + r3_sites(d) + increasing_sites(d, caps)


def _check_pairs(d: LinkDiagram, m: MoveApplication) -> None:
    try:
        for (c1, i), (c2, j) in m.pairs:
            w = d.components[c1]
            if c1 != c2 or j != (i + 1) % len(w) or {w[i], w[j]} - set(m.labels):
                raise InvalidSite(f"pair {(c1, i), (c2, j)} does not match {m.labels}")
    except IndexError:
        raise InvalidSite("pair position out of range") from None
    if not _disjoint(*m.pairs):
        raise InvalidSite("pairs overlap")


def apply_move(d: LinkDiagram, m: MoveApplication) -> LinkDiagram:
    if m.direction in (DEC, NEUTRAL):
        _check_pairs(d, m)
    words = [list(w) for w in d.components]
    if m.kind in (R1, R2) and m.direction == DEC:
        if m.kind == R1 and len(m.pairs) != 1 or m.kind == R2 and len(m.pairs) != 2:
            raise InvalidSite("wrong number of pairs")
        labels_hit = [d.components[c][i] for pair in m.pairs for c, i in pair]
        if sorted(labels_hit) != sorted(m.labels * 2):
            raise InvalidSite("site does not use both occurrences of each crossing")
        drop = {p for pair in m.pairs for p in pair}
        return LinkDiagram(
            tuple(tuple(x for i, x in enumerate(w) if (c, i) not in drop) for c, w in enumerate(words))
        )
    if m.kind == R3:
        if len(m.pairs) != 3 or len(set(m.labels)) != 3:
            raise InvalidSite("R3 needs three crossings and three pairs")
        realized = {frozenset((words[a[0]][a[1]], words[b[0]][b[1]])) for a, b in m.pairs}
        if len(realized) != 3:
            raise InvalidSite("R3 pairs must realize all three crossing pairs")
        for (c, i), (_, j) in m.pairs:
            words[c][i], words[c][j] = words[c][j], words[c][i]
        return LinkDiagram(tuple(tuple(w) for w in words))
    if m.direction == INC:
        used = set(d.crossings())
        if set(m.labels) & used:
            raise InvalidSite("new labels collide with existing crossings")
        for c, i in m.gaps:
            if not (0 <= c < len(words) and 0 <= i <= max(len(words[c]) - 1, 0)):
                raise InvalidSite(f"bad gap {(c, i)}")
        if m.kind == R1:
            (c, i), = m.gaps
            x, = m.labels
            words[c][i:i] = [x, x]
        else:
            u, w = m.labels
            (c1, i1), (c2, i2) = m.gaps
            first = [u, w]
            second = [u, w] if m.same else [w, u]
            if (c1, i1) == (c2, i2):
                words[c1][i1:i1] = first + second
            elif (c1, i1) < (c2, i2):
                # insert the later gap first so earlier indices stay valid
                words[c2][i2:i2] = second
                words[c1][i1:i1] = first
            else:
                words[c1][i1:i1] = first
                words[c2][i2:i2] = second
        return LinkDiagram(tuple(tuple(w) for w in words))
    raise InvalidSite(f"unknown move {m.kind}/{m.direction}")


def crossing_delta(m: MoveApplication) -> int:
    if m.direction == NEUTRAL:
        return 0
    size = 1 if m.kind == R1 else 2
    return size if m.direction == INC else -size


def inverse(d: LinkDiagram, m: MoveApplication) -> MoveApplication:
    """A move on ``apply_move(d, m)`` that returns to ``d`` up to canonical form."""
    e = apply_move(d, m)
    target = canonicalize(d, ordered=True, oriented=True)
    if m.direction == DEC:
        caps = Caps(r1=m.kind == R1, r2=m.kind == R2)
        cands = [x for x in increasing_sites(e, caps) if x.kind == m.kind]
    elif m.direction == INC:
        cands = [x for x in (decreasing_r1_sites(e) if m.kind == R1 else decreasing_r2_sites(e))]
        cands = [x for x in cands if set(x.labels) == set(m.labels)] + cands
    else:
        cands = [x for x in r3_sites(e) if set(x.labels) == set(m.labels)]
    for x in cands:
        if canonicalize(apply_move(e, x), ordered=True, oriented=True) == target:
            return x
    raise InvalidSite("no inverse move found")  # pragma: no cover


# ---------------------------------------------------------------- search


@dataclass(frozen=True)
class Budget:
    max_crossings: Optional[int] = None
    max_depth: int = 4
    max_states: int = 20000
    # extra crossings allowed above the larger input when max_crossings is unset
    headroom: int = 2


@dataclass
class Step:
    move: MoveApplication
    result: str  # canonical form (ordered, oriented) of the diagram after the move

    def to_json(self) -> dict:
        return {**self.move.to_json(), "result": self.result}


@dataclass
class SearchVerdict:
    outcome: str  # "Equivalent" | "Distinct" | "Unknown"
    path: List[Step] = field(default_factory=list)
    invariant: Optional[str] = None
    states: int = 0

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "states": self.states}
        if self.outcome == "Equivalent":
            out["path"] = [s.to_json() for s in self.path]
        if self.invariant:
            out["invariant"] = self.invariant
        return out


def state_of(d: LinkDiagram) -> LinkDiagram:
    """Search state: the canonical representative, component order and orientation kept."""
    return canonical_diagram(d, ordered=True, oriented=True)


def _bfs(
    start: LinkDiagram,
    caps_for: Callable[[LinkDiagram], Caps],
    max_depth: int,
    max_states: int,
    stop: Callable[[LinkDiagram], bool] = lambda d: False,
) -> Tuple[Dict[str, Tuple[Optional[str], Optional[MoveApplication], LinkDiagram]], Optional[str], bool]:
    """Breadth-first search over canonical states.

    Returns the parent table ``form -> (parent form, move on parent, state)``,
    the first form satisfying ``stop`` (or None), and whether every state
    within ``max_depth`` was visited (False when ``max_states`` cut it short).
    """
    s0 = state_of(start)
    f0 = str(s0)
    table = {f0: (None, None, s0)}
    if stop(s0):
        return table, f0, True
    frontier = [f0]
    for _ in range(max_depth):
        nxt = []
        for f in frontier:
            d = table[f][2]
            for m in enumerate_moves(d, caps_for(d)):
                e = state_of(apply_move(d, m))
                g = str(e)
                if g in table:
                    continue
                if len(table) >= max_states:
                    return table, None, False
                table[g] = (f, m, e)
                if stop(e):
                    return table, g, True
                nxt.append(g)
        frontier = nxt
        if not frontier:
            break
    return table, None, True


def _trace(table, form: str) -> List[Step]:
    steps = []
    while True:
        parent, move, _ = table[form]
        if parent is None:
            return steps[::-1]
        steps.append(Step(move, form))
        form = parent


def invert_path(start: LinkDiagram, path: Sequence[Step]) -> List[Step]:
    """Reverse a path so it runs from its end back to ``start``."""
    states = [state_of(start)]
    for s in path:
        states.append(state_of(apply_move(states[-1], s.move)))
    out = []
    for i in range(len(path), 0, -1):
        prev, cur = states[i - 1], states[i]
        back = inverse(prev, path[i - 1].move)
        out.append(Step(back, str(prev)))
    return out


def replay(start: LinkDiagram, path: Sequence[Step]) -> LinkDiagram:
    d = state_of(start)
    for s in path:
        d = state_of(apply_move(d, s.move))
        if str(d) != s.result:
            raise InvalidSite(f"replay diverged: {d} != {s.result}")
    return d


def _follow(start: LinkDiagram, steps: Sequence[Step], key) -> Optional[List[Step]]:
    """Replay ``steps`` from an isomorphic copy of their start.

    Each step is matched by kind, direction and resulting form under ``key``,
    which absorbs relabeling and (for unordered keys) component order.
    """
    cur = state_of(start)
    out = []
    for s in steps:
        target = key(parse_gauss(s.result))
        for m in enumerate_moves(cur, Caps()):
            if m.kind != s.move.kind or m.direction != s.move.direction:
                continue
            e = state_of(apply_move(cur, m))
            if key(e) == target:
                out.append(Step(m, str(e)))
                cur = e
                break
        else:
            return None
    return out


def _search_path(d1: LinkDiagram, d2: LinkDiagram, budget: Budget, ordered: bool):
    """Forward search from d1 until it meets the non-increasing closure of d2."""
    key = lambda d: canonicalize(d, ordered=ordered)
    cap = budget.max_crossings
    if cap is None:
        cap = max(d1.n_crossings, d2.n_crossings) + budget.headroom
    back, _, _ = _bfs(d2, lambda d: NO_INCREASE, max_depth=10**6, max_states=budget.max_states)
    meet = {key(entry[2]): f for f, entry in back.items()}
    fwd, hit, _ = _bfs(
        d1,
        lambda d: Caps(max_crossings=cap),
        budget.max_depth,
        budget.max_states,
        stop=lambda d: key(d) in meet,
    )
    states = len(back) + len(fwd)
    if hit is None:
        return None, states
    down = _trace(back, meet[key(fwd[hit][2])])
    up = _follow(fwd[hit][2], invert_path(d2, down), key)
    if up is None:
        return None, states
    return _trace(fwd, hit) + up, states


def bounded_equiv(
    d1: LinkDiagram, d2: LinkDiagram, budget: Budget = Budget(), ordered: bool = False
) -> SearchVerdict:
    """Sound, incomplete equivalence check.

    ``Equivalent`` comes with a replayable path from ``d1``; ``Distinct``
    names an invariant that separates the two; otherwise ``Unknown``.
    """
    from .invariants import separating_invariant

    if len(d1.components) != len(d2.components):
        return SearchVerdict("Distinct", invariant="component-count")
    key = lambda d: canonicalize(d, ordered=ordered)
    if key(d1) == key(d2):
        return SearchVerdict("Equivalent", [], states=1)
    name = separating_invariant(d1, d2, ordered=ordered)
    if name:
        return SearchVerdict("Distinct", invariant=name)
    path, states = _search_path(d1, d2, budget, ordered)
    if path is not None:
        return SearchVerdict("Equivalent", path, states=states)
    path, more = _search_path(d2, d1, budget, ordered)
    states += more
    if path is not None:
        back = _follow(d1, invert_path(d2, path), key)
        if back is not None:
            return SearchVerdict("Equivalent", back, states=states)
    return SearchVerdict("Unknown", states=states)


# ---------------------------------------------------------------- splitness


@dataclass
class SplitVerdict:
    outcome: str  # "Nonsplit" | "Split" | "Unknown"
    certificate: Optional[str] = None
    path: List[Step] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.certificate:
            out["certificate"] = self.certificate
        if self.outcome == "Split":
            out["path"] = [s.to_json() for s in self.path]
        return out


def odd_mixed_graph_connected(d: LinkDiagram) -> bool:
    """Components joined when they share an odd number of mixed crossings."""
    m = mixed_count_matrix(d)
    n = len(m)
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in range(n):
            if b not in seen and m[a][b] % 2:
                seen.add(b)
                stack.append(b)
    return len(seen) == n


def relative_odd_count(d: LinkDiagram, c: int, others: Sequence[int]) -> Optional[int]:
    """Number of pure crossings of ``c`` that are odd relative to ``others``, mod 2.

    A crossing is odd relative to ``others`` when a half of it holds an odd
    number of crossings with those components.  Returns None when ``c`` meets
    ``others`` an odd number of times (the halves then disagree).  The value
    is unchanged by every move, and is 0 when ``c`` meets none of ``others``.
    """
    other = set(others)
    occ = {}
    for ci, w in enumerate(d.components):
        for x in w:
            occ.setdefault(x, []).append(ci)
    across = {x for x, cs in occ.items() if c in cs and any(o in other for o in cs) and cs[0] != cs[1]}
    if len(across) % 2:
        return None
    w = d.components[c]
    first = {}
    total = 0
    for i, x in enumerate(w):
        if occ[x] == [c, c]:
            if x in first:
                inside = sum(1 for y in w[first[x] + 1 : i] if y in across)
                total += inside % 2
            else:
                first[x] = i
    return total % 2


def partition_obstruction(d: LinkDiagram, side: Sequence[int]) -> Optional[str]:
    """Why ``d`` cannot be split into ``side`` and the rest, if a reason is known."""
    a = list(side)
    b = [i for i in range(len(d.components)) if i not in side]
    m = mixed_count_matrix(d)
    if sum(m[i][j] for i in a for j in b) % 2:
        return "mixed-parity"
    for group, rest in ((a, b), (b, a)):
        for c in group:
            if relative_odd_count(d, c, rest) == 1:
                return f"relative-parity:{c}"
    return None


def bipartitions(n: int):
    """Each unordered split of range(n) into two nonempty sides, as the side holding 0."""
    for mask in range(1 << (n - 1)):
        side = [0] + [i for i in range(1, n) if mask >> (i - 1) & 1]
        if len(side) < n:
            yield side


def nonsplit_certificate(d: LinkDiagram) -> Optional[str]:
    reasons = []
    for side in bipartitions(len(d.components)):
        r = partition_obstruction(d, side)
        if r is None:
            return None
        reasons.append(r)
    return "mixed-parity" if all(r == "mixed-parity" for r in reasons) else "relative-parity"


def no_trivial_certificate(d: LinkDiagram) -> Optional[str]:
    """Reason why no component can be a split-off trivial circle, if known."""
    from .invariants import component_brackets

    reasons = []
    brackets = None
    for c in range(len(d.components)):
        r = partition_obstruction(d, [c])
        if r is None:
            if brackets is None:
                brackets = component_brackets(d)
            if brackets[c] == frozenset({"()"}):
                return None
            r = "component-bracket"
        reasons.append(r)
    return "mixed-parity" if all(r == "mixed-parity" for r in reasons) else "+".join(sorted(set(reasons)))


def _search_for(d: LinkDiagram, budget: Budget, target: Callable[[LinkDiagram], bool]):
    # decreasing and neutral moves first: exhaustive closure
    table, hit, _ = _bfs(d, lambda e: NO_INCREASE, 10**6, budget.max_states, stop=target)
    if hit is not None:
        return _trace(table, hit)
    if budget.max_depth <= 0:
        return None
    cap = budget.max_crossings if budget.max_crossings is not None else d.n_crossings + budget.headroom
    table, hit, _ = _bfs(d, lambda e: Caps(max_crossings=cap), budget.max_depth, budget.max_states, stop=target)
    if hit is not None:
        return _trace(table, hit)
    return None


def certified_nonsplit(d: LinkDiagram, budget: Budget = Budget(max_depth=2)) -> SplitVerdict:
    if len(d.components) < 2:
        raise FewerThanTwoComponents("splitness needs at least two components")
    if is_split_diagram(d):
        return SplitVerdict("Split", "split-diagram")
    cert = nonsplit_certificate(d)
    if cert:
        return SplitVerdict("Nonsplit", cert)
    path = _search_for(d, budget, is_split_diagram)
    if path is not None:
        return SplitVerdict("Split", "move-path", path)
    return SplitVerdict("Unknown")


def certified_no_trivial_component(d: LinkDiagram, budget: Budget = Budget(max_depth=2)) -> SplitVerdict:
    """Nonsplit here means: not equivalent to a link with a split-off free circle."""
    if len(d.components) < 2:
        raise FewerThanTwoComponents("needs at least two components")
    if has_trivial_split_component(d):
        return SplitVerdict("Split", "free-circle")
    cert = no_trivial_certificate(d)
    if cert:
        return SplitVerdict("Nonsplit", cert)
    path = _search_for(d, budget, has_trivial_split_component)
    if path is not None:
        return SplitVerdict("Split", "move-path", path)
    return SplitVerdict("Unknown")


def reduced_form(
    d: LinkDiagram,
    ordered: bool = False,
    oriented: bool = False,
    fixed: int = 0,
    max_states: int = 20000,
    allow: Optional[Callable[[LinkDiagram, MoveApplication], bool]] = None,
) -> str:
    """Smallest canonical form reachable with decreasing and R3 moves.

    Minimizes (crossing count, canonical text) over the whole
    non-increasing closure, so the result does not depend on move order.
    ``allow`` can veto individual moves.
    """
    key = lambda e: canonicalize(e, ordered=ordered, oriented=oriented, fixed=fixed)
    s0 = state_of(d)
    seen = {str(s0): s0}
    queue = deque([s0])
    best = (s0.n_crossings, key(s0))
    while queue and len(seen) < max_states:
        cur = queue.popleft()
        for m in enumerate_moves(cur, NO_INCREASE):
            if allow is not None and not allow(cur, m):
                continue
            e = state_of(apply_move(cur, m))
            f = str(e)
            if f in seen:
                continue
            seen[f] = e
            queue.append(e)
            cand = (e.n_crossings, key(e))
            if cand < best:
                best = cand
    return best[1]
