"""Turaev's cobracket, its ordered two-component variant, and pattern parities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .bracket import smooth, z2_sum
from .diagram import LinkDiagram, canonicalize, mixed_count_matrix
from .errors import (
    FilterUndecided,
    NotAKnot,
    OddMixedCount,
    PatternIllFormed,
    PatternUndecided,
    WrongComponentCount,
)
from .moves import (
    Budget,
    bounded_equiv,
    certified_no_trivial_component,
    certified_nonsplit,
    reduced_form,
)
from .parity import _require_pure, p_L

NONSPLIT = "nonsplit"
NO_TRIVIAL = "no-trivial-component"
MODES = (NONSPLIT, NO_TRIVIAL)

FILTER_BUDGET = Budget(max_depth=1, max_states=2000)


@dataclass(frozen=True)
class Summand:
    site: str
    diagram: LinkDiagram
    form: str


@dataclass
class DeltaValue:
    mode: str
    terms: FrozenSet[str] = frozenset()
    kept: List[Summand] = field(default_factory=list)
    dropped: List[Tuple[str, str]] = field(default_factory=list)  # (site, reason)
    undecided: List[str] = field(default_factory=list)

    @property
    def zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "terms": sorted(self.terms),
            "zero": self.zero,
            "kept": [{"site": s.site, "term": s.form} for s in self.kept],
            "dropped": [{"site": s, "reason": r} for s, r in self.dropped],
            "undecided": len(self.undecided),
        }


def _filter(e: LinkDiagram, mode: str, budget: Budget):
    if mode == NONSPLIT:
        return certified_nonsplit(e, budget)
    if mode == NO_TRIVIAL:
        return certified_no_trivial_component(e, budget)
    raise ValueError(f"unknown mode {mode!r}")


def _accumulate(
    summands: List[Tuple[str, LinkDiagram]],
    mode: str,
    budget: Budget,
    strict: bool,
    form_of,
) -> DeltaValue:
    """Filter and sum.  Undecided summands with equal forms cancel in pairs,
    since x + x = 0 whichever way the filter would go."""
    out = DeltaValue(mode)
    pending: Dict[str, List[str]] = {}
    for site, e in summands:
        verdict = _filter(e, mode, budget)
        if verdict.outcome == "Split":
            out.dropped.append((site, f"split:{verdict.certificate}"))
        elif verdict.outcome == "Nonsplit":
            out.kept.append(Summand(site, e, form_of(e)))
        else:
            pending.setdefault(form_of(e), []).append(site)
    for form, sites in sorted(pending.items()):
        paired = len(sites) - len(sites) % 2
        out.dropped.extend((site, "cancelled") for site in sites[:paired])
        if len(sites) % 2:
            site = sites[-1]
            if strict:
                raise FilterUndecided(f"split status of the summand at {site} is unknown", site=site)
            out.undecided.append(site)
            out.dropped.append((site, "undecided"))
    out.terms = z2_sum(s.form for s in out.kept)
    return out


def turaev_delta(
    d: LinkDiagram, mode: str = NO_TRIVIAL, budget: Budget = FILTER_BUDGET, strict: bool = True
) -> DeltaValue:
    """Sum over crossings of the oriented smoothing, filtered by ``mode``.

    Terms are oriented two-component links, each reduced to the least form
    reachable by decreasing and third moves.
    """
    if len(d.components) != 1:
        raise NotAKnot(f"diagram has {len(d.components)} components")
    summands = [(v, smooth(d, v, 0)) for v in d.crossings()]
    return _accumulate(summands, mode, budget, strict, lambda e: reduced_form(e, oriented=True))


def delta_L(
    d: LinkDiagram, mode: str = NONSPLIT, budget: Budget = FILTER_BUDGET, strict: bool = True
) -> DeltaValue:
    """Oriented smoothings at pure crossings of the second component.

    Each summand is (K, L_s1, L_s2); K stays first, the two parts of L are
    unordered.
    """
    if len(d.components) != 2:
        raise WrongComponentCount("delta_L needs an ordered two-component link")
    summands = [(s, smooth(d, s, 0)) for s in d.pure_crossings(1)]
    return _accumulate(summands, mode, budget, strict, lambda e: reduced_form(e, oriented=True, fixed=1))


# ---------------------------------------------------------------- patterns


PATTERN_BUDGET = Budget(max_depth=2, max_states=3000)


def check_pattern(pattern: LinkDiagram, budget: Budget = PATTERN_BUDGET) -> None:
    """Raise unless P, Q are certified nontrivial, inequivalent, and P u Q non-split."""
    from .diagram import parse_gauss

    if len(pattern.components) != 2:
        raise PatternIllFormed("pattern must be a two-component link P / Q")
    p, q = pattern.sublink([0]), pattern.sublink([1])
    unknot = parse_gauss("()")
    for name, a, b in (("P ~ Q", p, q), ("P trivial", p, unknot), ("Q trivial", q, unknot)):
        v = bounded_equiv(a, b, budget)
        if v.outcome == "Equivalent":
            raise PatternIllFormed(f"pattern is ill-formed: {name}")
        if v.outcome == "Unknown":
            raise PatternUndecided(f"cannot decide {name}")
    v = certified_nonsplit(pattern, budget)
    if v.outcome == "Split":
        raise PatternIllFormed("pattern P u Q is split")
    if v.outcome == "Unknown":
        raise PatternUndecided("cannot certify that P u Q is non-split")


def _orient_to_pattern(e: LinkDiagram, pattern: LinkDiagram, budget: Budget) -> Optional[LinkDiagram]:
    """Return e reordered as (K, P-part, Q-part), or None if the L-parts are not P u Q.

    Raises PatternUndecided when neither order can be settled.
    """
    sub = e.sublink([1, 2])
    flipped = LinkDiagram((sub.components[1], sub.components[0]))
    v1 = bounded_equiv(sub, pattern, budget, ordered=True)
    if v1.outcome == "Equivalent":
        return e
    v2 = bounded_equiv(flipped, pattern, budget, ordered=True)
    if v2.outcome == "Equivalent":
        return LinkDiagram((e.components[0], e.components[2], e.components[1]))
    if v1.outcome == "Distinct" and v2.outcome == "Distinct":
        return None
    raise PatternUndecided("pattern equivalence of a summand is unknown")


@dataclass
class PatternValue:
    terms: FrozenSet[str]
    kept: List[Summand]
    dropped: List[Tuple[str, str]]

    def to_json(self) -> dict:
        return {
            "terms": sorted(self.terms),
            "zero": not self.terms,
            "kept": [{"site": s.site, "term": s.form} for s in self.kept],
            "dropped": [{"site": s, "reason": r} for s, r in self.dropped],
        }


def f_PQ(
    d: LinkDiagram,
    pattern: LinkDiagram,
    budget: Budget = PATTERN_BUDGET,
    filter_budget: Budget = FILTER_BUDGET,
    validate: bool = True,
) -> PatternValue:
    """Summands of delta_L whose L-parts form the pattern link, ordered (K, P, Q)."""
    if validate:
        check_pattern(pattern, budget)
    if len(d.components) != 2:
        raise WrongComponentCount("f_PQ needs an ordered two-component link")
    mixed = mixed_count_matrix(d)[0][1]
    if mixed % 2:
        raise OddMixedCount(f"{mixed} mixed crossings", count=mixed)
    dl = delta_L(d, NONSPLIT, filter_budget, strict=True)
    kept, dropped = [], list(dl.dropped)
    for s in dl.kept:
        e = _orient_to_pattern(s.diagram, pattern, budget)
        if e is None:
            dropped.append((s.site, "not-pattern"))
            continue
        kept.append(Summand(s.site, e, reduced_form(e, ordered=True, oriented=True)))
    return PatternValue(z2_sum(s.form for s in kept), kept, dropped)


def p_PQ(
    d: LinkDiagram,
    v: str,
    pattern: LinkDiagram,
    budget: Budget = PATTERN_BUDGET,
    filter_budget: Budget = FILTER_BUDGET,
    validate: bool = True,
) -> int:
    """Sum over the pattern summands of the parity of ``v`` relative to the P-part."""
    _require_pure(d, v, 0)
    fv = f_PQ(d, pattern, budget, filter_budget, validate)
    return sum(p_L(s.diagram.sublink([0, 1]), v) for s in fv.kept) % 2


def p_PQ_all(
    d: LinkDiagram,
    pattern: LinkDiagram,
    budget: Budget = PATTERN_BUDGET,
    filter_budget: Budget = FILTER_BUDGET,
    validate: bool = True,
) -> Dict[str, int]:
    """p_PQ for every pure crossing of the first component, sharing one f_PQ evaluation."""
    fv = f_PQ(d, pattern, budget, filter_budget, validate)
    out = {}
    for v in d.pure_crossings(0):
        out[v] = sum(p_L(s.diagram.sublink([0, 1]), v) for s in fv.kept) % 2
    return out
