"""Corpus files, seeded move orbits and exhaustive knot enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .bracket import bracket_knot
from .delta import NO_TRIVIAL, p_PQ_all, turaev_delta
from .diagram import LinkDiagram, canonical_knots, canonicalize, mixed_count_matrix, parse_gauss
from .errors import FreeLinkError, MalformedToken
from .invariants import component_brackets
from .moves import (
    R1,
    R2,
    R3,
    Caps,
    MoveApplication,
    apply_move,
    certified_nonsplit,
    decreasing_r2_sites,
    enumerate_moves,
)
from .parity import GAUSSIAN, P_L, compare_parities, gaussian_parities, parity_values

PRNG = "mt19937"


# ---------------------------------------------------------------- corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    code: str
    tags: Tuple[str, ...] = ()

    @property
    def diagram(self) -> LinkDiagram:
        return parse_gauss(self.code)


def parse_corpus(text: str) -> List[CorpusEntry]:
    """``name: code`` per line, optionally ``name [tag, tag]: code``; ``#`` starts a comment line."""
    entries = []
    seen = set()
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, code = line.partition(":")
        if not sep:
            raise MalformedToken(f"line {n}: expected 'name: code'", line=n)
        head = head.strip()
        tags: Tuple[str, ...] = ()
        if head.endswith("]") and "[" in head:
            head, _, rest = head.partition("[")
            tags = tuple(t.strip() for t in rest[:-1].split(",") if t.strip())
            head = head.strip()
        if not head or head in seen:
            raise MalformedToken(f"line {n}: missing or duplicate name {head!r}", line=n)
        seen.add(head)
        parse_gauss(code)  # fail early on a bad diagram
        entries.append(CorpusEntry(head, code.strip(), tags))
    return entries


# ---------------------------------------------------------------- orbits


@dataclass
class OrbitReport:
    seed: int
    start: str
    invariants: List[str]
    path: List[dict] = field(default_factory=list)
    values: List[Dict[str, object]] = field(default_factory=list)
    violation: Optional[Tuple[int, str]] = None
    undecided: int = 0

    @property
    def ok(self) -> bool:
        return self.violation is None

    def to_json(self) -> dict:
        verdict = "all-equal" if self.ok else {"violation": {"step": self.violation[0], "invariant": self.violation[1]}}
        return {
            "prng": PRNG,
            "seed": self.seed,
            "start": self.start,
            "invariants": self.invariants,
            "path": self.path,
            "values": self.values,
            "undecided": self.undecided,
            "verdict": verdict,
        }


UNDECIDED = "undecided"


def _odd_on_k(d: LinkDiagram) -> Optional[bool]:
    vals = parity_values(P_L, d)
    return None if vals is None else any(vals.values())


def _delta(d: LinkDiagram):
    v = turaev_delta(d, NO_TRIVIAL, strict=False)
    return UNDECIDED if v.undecided else sorted(v.terms)


def _bracket(d: LinkDiagram):
    if len(d.components) == 1:
        return sorted(bracket_knot(d).terms)
    return [sorted(b) for b in component_brackets(d)]


def _split(d: LinkDiagram):
    v = certified_nonsplit(d)
    return UNDECIDED if v.outcome == "Unknown" else v.outcome


# value invariants: compared with the first decided value along the orbit
VALUE_INVARIANTS: Dict[str, Callable[[LinkDiagram], object]] = {
    "bracket": _bracket,
    "delta": _delta,
    "split": _split,
    "components": lambda d: len(d.components),
    "mixed-parity": lambda d: [[x % 2 for x in row] for row in mixed_count_matrix(d)],
    "odd-crossing-existence": _odd_on_k,
    "odd-count-even": lambda d: sum(gaussian_parities(d).values.values()) % 2 == 0,
}

# per-move invariants: parity axioms on each applied move
AXIOM_INVARIANTS = {"gaussian-parity-axioms": GAUSSIAN, "pL-axioms": P_L}

INVARIANTS = sorted([*VALUE_INVARIANTS, *AXIOM_INVARIANTS, "pPQ-axioms"])


def random_move(
    d: LinkDiagram, rng: random.Random, caps: Caps, kinds: Sequence[str] = (R1, R2, R3)
) -> Optional[MoveApplication]:
    """Pick a move family uniformly, then a site of that family."""
    families: Dict[Tuple[str, str], List[MoveApplication]] = {}
    for m in enumerate_moves(d, caps):
        if m.kind in kinds:
            families.setdefault((m.kind, m.direction), []).append(m)
    if not families:
        return None
    key = rng.choice(sorted(families))
    return rng.choice(families[key])


def orbit(
    entry,
    seed: int,
    length: int,
    invariants: Sequence[str],
    max_crossings: Optional[int] = None,
    headroom: int = 2,
    pattern: Optional[LinkDiagram] = None,
    families: Sequence[str] = (R1, R2, R3),
) -> OrbitReport:
    """Apply ``length`` seeded random moves and track the named invariants.

    Diagrams keep their labels along the orbit, so per-crossing parities
    can be compared move by move.  Increasing moves stay within
    ``max_crossings`` (default: start size plus ``headroom``).
    """
    d = entry.diagram if isinstance(entry, CorpusEntry) else entry
    unknown = [n for n in invariants if n not in INVARIANTS]
    if unknown:
        raise ValueError(f"unknown invariants {unknown}")
    rng = random.Random(seed)
    cap = max_crossings if max_crossings is not None else d.n_crossings + headroom
    caps = Caps(max_crossings=cap, r1=R1 in families, r2=R2 in families)
    report = OrbitReport(seed, canonicalize(d, ordered=True, oriented=True), list(invariants))
    reference: Dict[str, object] = {}

    def record(step: int, e: LinkDiagram) -> Dict[str, object]:
        row: Dict[str, object] = {}
        for name in invariants:
            if name not in VALUE_INVARIANTS:
                continue
            value = VALUE_INVARIANTS[name](e)
            row[name] = value
            if value == UNDECIDED or value is None:
                report.undecided += value == UNDECIDED
                continue
            if name == "odd-crossing-existence" or name == "odd-count-even":
                ok = value is True
            else:
                ok = reference.setdefault(name, value) == value
            if not ok and report.violation is None:
                report.violation = (step, name)
        return row

    report.values.append(record(0, d))
    pq_before = _ppq(d, pattern) if "pPQ-axioms" in invariants else None
    if pq_before is not None:
        report.values[0]["pPQ"] = pq_before
    for step in range(1, length + 1):
        m = random_move(d, rng, caps, families)
        if m is None:
            break
        e = apply_move(d, m)
        row = record(step, e)
        for name in invariants:
            rule = AXIOM_INVARIANTS.get(name)
            if rule is not None:
                r = compare_parities(rule, m, parity_values(rule, d), parity_values(rule, e))
                row[name] = r.violations
                if r.violations and report.violation is None:
                    report.violation = (step, name)
        if pq_before is not None:
            pq_after = _ppq(e, pattern)
            r = compare_parities("pPQ", m, pq_before, pq_after)
            row["pPQ"] = pq_after
            row["pPQ-axioms"] = r.violations
            if r.violations and report.violation is None:
                report.violation = (step, "pPQ-axioms")
            pq_before = pq_after
        report.path.append({**m.to_json(), "result": canonicalize(e, ordered=True, oriented=True)})
        report.values.append(row)
        d = e
    return report


def _ppq(d: LinkDiagram, pattern: Optional[LinkDiagram]) -> Dict[str, int]:
    if pattern is None:
        raise ValueError("pPQ-axioms needs a pattern")
    return p_PQ_all(d, pattern, validate=False)


# ---------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class KnotRecord:
    code: str
    chords: int
    all_odd: bool
    r2_irreducible: bool
    bracket: Tuple[str, ...]
    delta: Optional[object] = None

    @property
    def irreducibly_odd(self) -> bool:
        return self.chords > 0 and self.all_odd and self.r2_irreducible

    def to_json(self) -> dict:
        out = {
            "code": self.code,
            "chords": self.chords,
            "all_odd": self.all_odd,
            "r2_irreducible": self.r2_irreducible,
            "bracket": list(self.bracket),
        }
        if self.delta is not None:
            out["delta"] = self.delta
        return out


def classify_knot(d: LinkDiagram, with_delta: bool = False) -> KnotRecord:
    par = gaussian_parities(d).values
    delta = None
    if with_delta:
        try:
            delta = _delta(d)
        except FreeLinkError as exc:
            delta = {"error": exc.code}
    return KnotRecord(
        code=canonicalize(d),
        chords=d.n_crossings,
        all_odd=all(par.values()),
        r2_irreducible=not decreasing_r2_sites(d),
        bracket=tuple(sorted(bracket_knot(d).terms)),
        delta=delta,
    )


def enumerate_knots(max_chords: int, with_delta: bool = False) -> Iterator[KnotRecord]:
    """Canonical knot diagrams with 1..max_chords chords, by size then canonical form."""
    if max_chords > 8:
        raise ValueError("enumeration is limited to 8 chords")
    for n in range(1, max_chords + 1):
        for d in canonical_knots(n):
            yield classify_knot(d, with_delta)


def enumeration_summary(records: Sequence[KnotRecord]) -> dict:
    odd = [r for r in records if r.irreducibly_odd]
    return {
        "count": len(records),
        "irreducibly_odd": [r.code for r in odd],
        "min_irreducibly_odd_chords": min((r.chords for r in odd), default=None),
    }


__all__ = [
    "CorpusEntry",
    "OrbitReport",
    "KnotRecord",
    "PRNG",
    "INVARIANTS",
    "parse_corpus",
    "orbit",
    "random_move",
    "classify_knot",
    "enumerate_knots",
    "enumeration_summary",
]
