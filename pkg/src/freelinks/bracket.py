"""Smoothings and the parity brackets with Z2 coefficients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set

from .diagram import CanonicalForm, LinkDiagram, canonicalize, halves, rotate_to
from .errors import NotAKnot, NotMixed, NotPure, OddComponentLength, WrongComponentCount
from .moves import apply_move, decreasing_r2_sites, state_of
from .parity import gaussian_parity

G, G1, G2REL = "G", "G1", "G2rel"


@dataclass(frozen=True)
class BracketValue:
    """A Z2 combination of canonical diagrams: a set, added by symmetric difference."""

    space: str
    terms: FrozenSet[CanonicalForm] = frozenset()

    def __add__(self, other: "BracketValue") -> "BracketValue":
        return BracketValue(self.space, self.terms ^ other.terms)

    @property
    def zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[str]:
        return sorted(self.terms)

    def to_json(self) -> dict:
        return {"space": self.space, "terms": self.sorted_terms(), "zero": self.zero}


def z2_sum(forms: Iterable[Optional[str]]) -> FrozenSet[str]:
    acc: Set[str] = set()
    for f in forms:
        if f is not None:
            acc ^= {f}
    return frozenset(acc)


# ---------------------------------------------------------------- smoothing


def smooth(d: LinkDiagram, v: str, way: int) -> LinkDiagram:
    """Smooth pure crossing ``v``: way 0 splits ``v H1 v H2`` into (H1)(H2),
    way 1 gives the single component (H1 reverse(H2))."""
    (c, i), (c2, _) = d.occurrences(v)
    if c != c2:
        raise NotPure(f"crossing {v!r} is mixed", crossing=v)
    h1, h2 = halves(d, v)
    comps = list(d.components)
    if way == 0:
        comps[c : c + 1] = [h1, h2]
    else:
        comps[c] = h1 + h2[::-1]
    return LinkDiagram(tuple(comps))


def smooth_mixed(d: LinkDiagram, v: str, way: int) -> LinkDiagram:
    """Smooth mixed ``v`` joining (v X) and (v Y): way 0 gives (X Y), way 1 (X reverse(Y))."""
    (a, i), (b, j) = d.occurrences(v)
    if a == b:
        raise NotMixed(f"crossing {v!r} is pure", crossing=v)
    x = rotate_to(d.components[a], i)[1:]
    y = rotate_to(d.components[b], j)[1:]
    merged = x + y if way == 0 else x + y[::-1]
    comps = list(d.components)
    comps[a] = merged
    del comps[b]
    return LinkDiagram(tuple(comps))


def smooth_any(d: LinkDiagram, v: str, way: int) -> LinkDiagram:
    return smooth(d, v, way) if d.is_pure(v) else smooth_mixed(d, v, way)


def smoothing_states(d: LinkDiagram, crossings: Sequence[str]):
    """Yield (choices, diagram) for every way-assignment to ``crossings``."""
    for ways in itertools.product((0, 1), repeat=len(crossings)):
        e = d
        for v, way in zip(crossings, ways):
            e = smooth_any(e, v, way)
        yield dict(zip(crossings, ways)), e


# ---------------------------------------------------------------- the space G


def annihilated(d: LinkDiagram) -> bool:
    return len(d.components) > 1 and any(not w for w in d.components)


def r2_reduce(d: LinkDiagram, allow=None) -> Optional[LinkDiagram]:
    """Greedy decreasing-R2 reduction; None once a free circle sits beside another component."""
    while True:
        if annihilated(d):
            return None
        sites = [m for m in decreasing_r2_sites(d) if allow is None or allow(d, m)]
        if not sites:
            return d
        d = apply_move(d, sites[0])


def normalize_G(d: LinkDiagram) -> Optional[CanonicalForm]:
    """Canonical form of the R2-irreducible representative, or None for zero."""
    r = r2_reduce(d)
    return None if r is None else canonicalize(r)


def normalize_G_all_orders(d: LinkDiagram) -> Set[Optional[CanonicalForm]]:
    """Every result reachable by some order of R2 reductions (None = zero)."""
    results: Set[Optional[str]] = set()
    seen = set()
    stack = [state_of(d)]
    while stack:
        e = stack.pop()
        f = str(e)
        if f in seen:
            continue
        seen.add(f)
        if annihilated(e):
            results.add(None)
            continue
        sites = decreasing_r2_sites(e)
        if not sites:
            results.add(canonicalize(e))
        for m in sites:
            stack.append(state_of(apply_move(e, m)))
    return results


def _require_even(d: LinkDiagram, comps: Iterable[int]) -> None:
    for c in comps:
        if len(d.components[c]) % 2:
            raise OddComponentLength(f"component {c} has odd length", component=c)


def even_crossings(d: LinkDiagram, component: Optional[int] = None) -> List[str]:
    return [v for v in d.pure_crossings(component) if gaussian_parity(d, v) == 0]


def bracket_full(d: LinkDiagram) -> BracketValue:
    """Sum over both smoothings of every Gaussian-even pure crossing, reduced in G."""
    _require_even(d, range(len(d.components)))
    evens = even_crossings(d)
    return BracketValue(G, z2_sum(normalize_G(e) for _, e in smoothing_states(d, evens)))


def bracket_knot(d: LinkDiagram) -> BracketValue:
    if len(d.components) != 1:
        raise NotAKnot(f"diagram has {len(d.components)} components")
    full = bracket_full(d)
    return BracketValue(G1, frozenset(t for t in full.terms if "/" not in t))


# ---------------------------------------------------------------- relative bracket


def _l_only(l_pure: Set[str]):
    return lambda e, m: all(x in l_pure for x in m.labels)


def bracket_rel(d: LinkDiagram) -> BracketValue:
    """Smooth the even pure crossings of the second component both ways, keep
    states where it stays one component, reduce by R2 on its own crossings."""
    if len(d.components) != 2:
        raise WrongComponentCount("relative bracket needs an ordered two-component link")
    _require_even(d, [1])
    evens = even_crossings(d, 1)
    l_pure = set(d.pure_crossings(1))
    terms = []
    for _, e in smoothing_states(d, evens):
        if len(e.components) != 2:
            continue
        r = r2_reduce_keep_circles(e, _l_only(l_pure))
        terms.append(canonicalize(r, ordered=True))
    return BracketValue(G2REL, z2_sum(terms))


def r2_reduce_keep_circles(d: LinkDiagram, allow) -> LinkDiagram:
    while True:
        sites = [m for m in decreasing_r2_sites(d) if allow(d, m)]
        if not sites:
            return d
        d = apply_move(d, sites[0])


def g2_move_filter(d: LinkDiagram):
    """Moves that are relations of the relative space: anything on the first
    component, mixed moves, and R2 on the second component."""
    from .moves import R1, R2, R3

    def allow(e: LinkDiagram, m) -> bool:
        comps = [set(e.component_of(x)) for x in m.labels]
        l_pure = [c == {1} for c in comps]
        if m.kind == R1:
            return comps[0] == {0}
        if m.kind == R2:
            return True
        return not all(l_pure)

    return allow


def bracket_rel_classes(d: LinkDiagram, max_states: int = 5000) -> BracketValue:
    """``bracket_rel`` with each term replaced by the least diagram reachable
    through non-increasing relations of the relative space."""
    from .moves import reduced_form

    base = bracket_rel(d)
    from .diagram import parse_gauss

    forms = []
    for t in base.terms:
        e = parse_gauss(t)
        forms.append(reduced_form(e, ordered=True, allow=g2_move_filter(e), max_states=max_states))
    return BracketValue(G2REL, z2_sum(forms))
