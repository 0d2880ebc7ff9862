"""Move-invariant fingerprints used to certify distinctness.

Only the knot bracket of each component is used here.  The bracket of a
whole link is not invariant under third moves whose triangle has two mixed
crossings, so it is never used as a certificate.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import List, Optional

from .bracket import bracket_knot
from .diagram import LinkDiagram, canonicalize, mixed_count_matrix, parse_gauss


@lru_cache(maxsize=4096)
def _knot_bracket(form: str):
    return bracket_knot(parse_gauss(form)).terms


def component_brackets(d: LinkDiagram) -> List[frozenset]:
    """Bracket of each component with all other components deleted."""
    return [_knot_bracket(canonicalize(d.sublink([i]))) for i in range(len(d.components))]


def separating_invariant(d1: LinkDiagram, d2: LinkDiagram, ordered: bool = False) -> Optional[str]:
    """Name of an invariant that differs between the two diagrams, if any."""
    n = len(d1.components)
    if n != len(d2.components):
        return "component-count"
    m1, m2 = mixed_count_matrix(d1), mixed_count_matrix(d2)
    b1, b2 = component_brackets(d1), component_brackets(d2)
    perms = [tuple(range(n))] if ordered else list(itertools.permutations(range(n)))
    parity_ok = [
        p for p in perms if all(m1[i][j] % 2 == m2[p[i]][p[j]] % 2 for i in range(n) for j in range(n))
    ]
    if not parity_ok:
        return "mixed-parity"
    if not any(all(b1[i] == b2[p[i]] for i in range(n)) for p in parity_ok):
        return "component-bracket"
    return None
