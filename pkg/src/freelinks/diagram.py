"""Free-link diagrams as multi-component Gauss codes, plus the framed 4-graph view.

A diagram is a tuple of cyclic words, one per component.  Every crossing
label occurs exactly twice across all words.  The written direction of a
word is the orientation of its component; an empty word is a crossing-free
circle, written ``()``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    EmptyInputIsZeroComponents,
    FewerThanTwoComponents,
    MalformedToken,
    NotPure,
    OccurrenceCountNotTwo,
    UnknownCrossing,
)

Word = Tuple[str, ...]
CanonicalForm = str

PURE = "pure"
MIXED = "mixed"

_BAD_TOKEN = re.compile(r"[\s/()#]")


@dataclass(frozen=True)
class LinkDiagram:
    components: Tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(tuple(w) for w in self.components))
        counts = Counter(x for w in self.components for x in w)
        for label, n in counts.items():
            if n != 2:
                raise OccurrenceCountNotTwo(f"crossing {label!r} occurs {n} times", crossing=label)

    @classmethod
    def from_words(cls, *words: Iterable[str]) -> "LinkDiagram":
        return cls(tuple(tuple(w) for w in words))

    def __str__(self) -> str:
        return serialize(self)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return sum(len(w) for w in self.components) // 2

    def crossings(self) -> List[str]:
        """Crossing labels in first-appearance order."""
        seen: Dict[str, None] = {}
        for w in self.components:
            for x in w:
                seen.setdefault(x, None)
        return list(seen)

    def occurrences(self, label: str) -> List[Tuple[int, int]]:
        occ = [(c, i) for c, w in enumerate(self.components) for i, x in enumerate(w) if x == label]
        if not occ:
            raise UnknownCrossing(f"no crossing {label!r}", crossing=label)
        return occ

    def component_of(self, label: str) -> Tuple[int, ...]:
        return tuple(c for c, _ in self.occurrences(label))

    def is_pure(self, label: str) -> bool:
        a, b = self.occurrences(label)
        return a[0] == b[0]

    def pure_crossings(self, component: Optional[int] = None) -> List[str]:
        out = []
        for x in self.crossings():
            (c1, _), (c2, _) = self.occurrences(x)
            if c1 == c2 and (component is None or c1 == component):
                out.append(x)
        return out

    def mixed_crossings(self, a: Optional[int] = None, b: Optional[int] = None) -> List[str]:
        """Mixed crossings, optionally restricted to those between components ``a`` and ``b``."""
        out = []
        for x in self.crossings():
            (c1, _), (c2, _) = self.occurrences(x)
            if c1 == c2:
                continue
            if a is not None and a not in (c1, c2):
                continue
            if b is not None and b not in (c1, c2):
                continue
            out.append(x)
        return out

    def relabeled(self, mapping: Dict[str, str]) -> "LinkDiagram":
        return LinkDiagram(tuple(tuple(mapping.get(x, x) for x in w) for w in self.components))

    def sublink(self, keep: Sequence[int]) -> "LinkDiagram":
        """Keep only the listed components; crossings with a dropped component vanish."""
        words = [self.components[i] for i in keep]
        counts = Counter(x for w in words for x in w)
        return LinkDiagram(tuple(tuple(x for x in w if counts[x] == 2) for w in words))

    def fresh_labels(self, n: int) -> List[str]:
        used = set(self.crossings())
        out = []
        k = 1
        while len(out) < n:
            cand = f"n{k}"
            if cand not in used:
                out.append(cand)
            k += 1
        return out


# ---------------------------------------------------------------- text format


def parse_gauss(text: str) -> LinkDiagram:
    """Parse ``"1 2 1 2"`` or ``"O A1 O A2 / A1 A2"``; ``()`` is a crossing-free circle."""
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    body = " ".join(lines).strip()
    if not body:
        raise EmptyInputIsZeroComponents("empty input denotes zero components")
    words = []
    for part in body.split("/"):
        tokens = part.split()
        if tokens == ["()"]:
            words.append(())
            continue
        if not tokens:
            raise MalformedToken("empty component; write () for a free circle", token="")
        for t in tokens:
            if _BAD_TOKEN.search(t):
                raise MalformedToken(f"bad crossing label {t!r}", token=t)
        words.append(tuple(tokens))
    return LinkDiagram(tuple(words))


def serialize(d: LinkDiagram) -> str:
    return " / ".join(" ".join(w) if w else "()" for w in d.components)


def letter_label(i: int) -> str:
    """0 -> a, 25 -> z, 26 -> aa, ..."""
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


# ---------------------------------------------------------------- crossings and halves


def classify_crossings(d: LinkDiagram) -> Dict[str, str]:
    return {x: PURE if d.is_pure(x) else MIXED for x in d.crossings()}


def halves(d: LinkDiagram, v: str) -> Tuple[Word, Word]:
    """The two arcs of v's component between its occurrences.

    The first half runs forward from the first occurrence to the second; the
    second half continues forward around the circle.
    """
    (c1, i), (c2, j) = d.occurrences(v)
    if c1 != c2:
        raise NotPure(f"crossing {v!r} is mixed", crossing=v)
    w = d.components[c1]
    return w[i + 1 : j], w[j + 1 :] + w[:i]


def rotate_to(word: Word, i: int) -> Word:
    return word[i:] + word[:i]


# ---------------------------------------------------------------- canonical form


def _variants(word: Word, oriented: bool) -> Iterator[Word]:
    n = len(word)
    if n == 0:
        yield word
        return
    for i in range(n):
        yield word[i:] + word[:i]
    if not oriented:
        r = word[::-1]
        for i in range(n):
            yield r[i:] + r[:i]


def _encode(word: Word, mapping: Dict[str, int]) -> Tuple[Tuple[int, ...], Dict[str, int]]:
    m = mapping
    copied = False
    out = []
    for x in word:
        k = m.get(x)
        if k is None:
            if not copied:
                m = dict(m)
                copied = True
            k = len(m)
            m[x] = k
        out.append(k)
    return tuple(out), m


def canonical_key(
    d: LinkDiagram, ordered: bool = False, oriented: bool = False, fixed: int = 0
) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[Word, ...]]:
    """Minimal relabeled encoding plus one witnessing arrangement of the words.

    Components are placed slot by slot; at each slot every remaining
    component in every rotation (and reflection unless ``oriented``) is tried
    and only the lexicographically smallest encodings survive.  Components
    ``0..fixed-1`` keep their slots; ``ordered`` fixes all of them.
    """
    comps = d.components
    n = len(comps)
    nfixed = n if ordered else min(fixed, n)
    # partial: (remaining component indices, mapping, chosen words)
    partial = [(tuple(range(n)), {}, ())]
    key: List[Tuple[int, ...]] = []
    for slot in range(n):
        best = None
        nxt = []
        for remaining, mapping, chosen in partial:
            choices = (remaining[0],) if slot < nfixed else remaining
            seen_comp = set()
            for ci in choices:
                # identical words give identical branches
                if comps[ci] in seen_comp:
                    continue
                seen_comp.add(comps[ci])
                rest = tuple(r for r in remaining if r != ci)
                for var in _variants(comps[ci], oriented):
                    enc, m2 = _encode(var, mapping)
                    if best is None or enc < best:
                        best = enc
                        nxt = [(rest, m2, chosen + (var,))]
                    elif enc == best:
                        nxt.append((rest, m2, chosen + (var,)))
        key.append(best)
        # dedupe branches that agree on everything that matters downstream
        uniq = {}
        for rest, m2, chosen in nxt:
            sig = (rest, tuple(sorted(m2.items())))
            uniq.setdefault(sig, (rest, m2, chosen))
        partial = list(uniq.values())
    witness = partial[0][2] if partial else ()
    return tuple(key), witness


def canonicalize(
    d: LinkDiagram, ordered: bool = False, oriented: bool = False, fixed: int = 0
) -> CanonicalForm:
    """Serialized minimal form with labels a, b, c, ... in first-appearance order."""
    key, _ = canonical_key(d, ordered=ordered, oriented=oriented, fixed=fixed)
    return " / ".join(" ".join(letter_label(k) for k in comp) if comp else "()" for comp in key)


def canonical_diagram(d: LinkDiagram, **kw) -> LinkDiagram:
    return parse_gauss(canonicalize(d, **kw))


# ---------------------------------------------------------------- framed 4-graph

HalfEdge = Tuple[int, int]  # (edge index, end) with end 0 = tail, 1 = head


@dataclass
class FramedGraph:
    """Vertices, edges between them, and the opposite-pair framing.

    ``ends[e] = (tail vertex, head vertex)``; ``opposite`` pairs half-edges
    at each vertex.  ``circles`` counts crossing-free circles.
    """

    vertices: List[str]
    ends: List[Tuple[str, str]]
    opposite: Dict[HalfEdge, HalfEdge]
    circles: int = 0
    # position in the source diagram of each edge's tail occurrence, if any
    origin: List[Tuple[int, int]] = field(default_factory=list)

    def vertex_of(self, h: HalfEdge) -> str:
        return self.ends[h[0]][h[1]]

    def half_edges_at(self, v: str) -> List[HalfEdge]:
        return [(e, k) for e, pair in enumerate(self.ends) for k in (0, 1) if pair[k] == v]

    def check_framing(self) -> None:
        for v in self.vertices:
            hs = self.half_edges_at(v)
            assert len(hs) == 4, (v, hs)
            for h in hs:
                o = self.opposite[h]
                assert o != h and self.opposite[o] == h and self.vertex_of(o) == v

    def traverse(self) -> List[Word]:
        """Walk unicursal components, returning one word per component (circles excluded)."""
        used = set()
        words = []
        for e0 in range(len(self.ends)):
            if e0 in used:
                continue
            word = []
            e, k = e0, 0  # traverse edge e from end k to end 1-k
            while True:
                used.add(e)
                h = (e, 1 - k)
                word.append(self.vertex_of(h))
                e, k = self.opposite[h]
                if e == e0 and k == 0:
                    break
            words.append(tuple(word))
        return words

    def to_diagram(self) -> LinkDiagram:
        return LinkDiagram(tuple(self.traverse()) + ((),) * self.circles)


def framed_graph(d: LinkDiagram) -> FramedGraph:
    """Edge ``e`` runs from occurrence ``(c, i)`` to ``(c, i+1)`` of component ``c``."""
    ends: List[Tuple[str, str]] = []
    origin: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    circles = 0
    for c, w in enumerate(d.components):
        if not w:
            circles += 1
            continue
        for i in range(len(w)):
            index[(c, i)] = len(ends)
            ends.append((w[i], w[(i + 1) % len(w)]))
            origin.append((c, i))
    opposite: Dict[HalfEdge, HalfEdge] = {}
    for c, w in enumerate(d.components):
        n = len(w)
        for i in range(n):
            incoming = (index[(c, (i - 1) % n)], 1)
            outgoing = (index[(c, i)], 0)
            opposite[incoming] = outgoing
            opposite[outgoing] = incoming
    return FramedGraph(d.crossings(), ends, opposite, circles, origin)


def unicursal_components(g: FramedGraph) -> Tuple[int, List[List[int]]]:
    """Classes of edges under opposite-at-a-vertex closure; free circles count as classes."""
    parent = list(range(len(g.ends)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for h, o in g.opposite.items():
        ra, rb = find(h[0]), find(o[0])
        if ra != rb:
            parent[ra] = rb
    classes: Dict[int, List[int]] = {}
    for e in range(len(g.ends)):
        classes.setdefault(find(e), []).append(e)
    members = sorted(classes.values())
    return len(members) + g.circles, members


def component_groups(d: LinkDiagram) -> List[List[int]]:
    """Connected groups of components, joined by mixed crossings."""
    n = len(d.components)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for x in d.crossings():
        (c1, _), (c2, _) = d.occurrences(x)
        ra, rb = find(c1), find(c2)
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for c in range(n):
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


def is_split_diagram(d: LinkDiagram) -> bool:
    if len(d.components) < 2:
        raise FewerThanTwoComponents("splitness needs at least two components")
    return len(component_groups(d)) > 1


def has_trivial_split_component(d: LinkDiagram) -> bool:
    """True when some free circle sits beside at least one other component."""
    return len(d.components) > 1 and any(not w for w in d.components)


def mixed_count_matrix(d: LinkDiagram) -> List[List[int]]:
    n = len(d.components)
    m = [[0] * n for _ in range(n)]
    for x in d.crossings():
        (c1, _), (c2, _) = d.occurrences(x)
        if c1 != c2:
            m[c1][c2] += 1
            m[c2][c1] += 1
    return m


def all_knot_words(n_chords: int) -> Iterator[Word]:
    """Every double-occurrence word on ``n_chords`` labels in first-appearance form."""
    length = 2 * n_chords

    def rec(word: List[int], open_labels: List[int], next_label: int):
        if len(word) == length:
            yield tuple(letter_label(k) for k in word)
            return
        slots_left = length - len(word)
        # open a new label if there is room to close everything afterwards
        if next_label < n_chords and len(open_labels) + 2 <= slots_left:
            yield from rec(word + [next_label], open_labels + [next_label], next_label + 1)
        for k in open_labels:
            rest = [o for o in open_labels if o != k]
            yield from rec(word + [k], rest, next_label)

    if n_chords == 0:
        yield ()
        return
    yield from rec([], [], 0)


def canonical_knots(n_chords: int) -> List[LinkDiagram]:
    """All knot diagrams with exactly ``n_chords`` crossings, one per canonical class, sorted."""
    forms = set()
    for w in all_knot_words(n_chords):
        forms.add(canonicalize(LinkDiagram((w,))))
    return [parse_gauss(f) for f in sorted(forms)]
