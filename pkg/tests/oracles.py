"""Brute-force reference implementations, written against plain lists.

They share no code with the package, so agreement is evidence rather than
tautology.
"""

from itertools import permutations


def chord_positions(word):
    pos = {}
    for i, x in enumerate(word):
        pos.setdefault(x, []).append(i)
    return pos


def linked(word, x, y):
    """Chords interleave: exactly one end of y lies strictly between the ends of x."""
    pos = chord_positions(word)
    a, b = pos[x]
    return sum(a < p < b for p in pos[y]) == 1


def linking_parity(word, v):
    return sum(linked(word, v, y) for y in set(word) if y != v) % 2


def relabel(word):
    names = {}
    return tuple(names.setdefault(x, len(names)) for x in word)


def knot_canonical(word, oriented=False):
    """Least first-appearance relabeling over rotations (and reversals)."""
    word = list(word)
    if not word:
        return ()
    cands = []
    seqs = [word] if oriented else [word, word[::-1]]
    for w in seqs:
        for r in range(len(w)):
            cands.append(relabel(w[r:] + w[:r]))
    return min(cands)


def link_canonical(words, oriented=False):
    """Unordered canonical form of a multi-component word list, by brute force."""
    best = None
    for perm in permutations(range(len(words))):
        options = [[]]
        for i in perm:
            w = list(words[i])
            variants = []
            seqs = [w] if oriented else [w, w[::-1]]
            for s in seqs:
                for r in range(max(len(s), 1)):
                    variants.append(s[r:] + s[:r])
            options = [o + [v] for o in options for v in variants]
        for o in options:
            names = {}
            key = tuple(tuple(names.setdefault(x, len(names)) for x in v) for v in o)
            if best is None or key < best:
                best = key
    return best


def oriented_smoothing(word, v):
    i, j = chord_positions(word)[v]
    return [word[i + 1 : j], word[j + 1 :] + word[:i]]


def _adjacent(words):
    """Unordered label pair -> list of occurrence-position sets realizing it."""
    out = {}
    for c, w in enumerate(words):
        n = len(w)
        for i in range(n if n > 1 else 0):
            a, b = w[i], w[(i + 1) % n]
            out.setdefault(frozenset((a, b)), []).append({(c, i), (c, (i + 1) % n)})
    return out


def _bigon(sites):
    return any(not (s & t) for k, s in enumerate(sites) for t in sites[k + 1 :])


def decreasing_closure(words, limit=5000, r1=True):
    """All word lists reachable by deleting R1 loops and R2 bigons."""
    start = tuple(tuple(w) for w in words)
    seen = {start}
    stack = [start]
    while stack and len(seen) < limit:
        cur = stack.pop()
        nxt = []
        for c, w in enumerate(cur):
            n = len(w)
            for i in range(n):
                if r1 and n > 1 and w[i] == w[(i + 1) % n]:
                    x = w[i]
                    nxt.append(tuple(tuple(y for y in u if y != x) for u in cur))
        for key, sites in _adjacent(cur).items():
            if len(key) == 2 and _bigon(sites):
                nxt.append(tuple(tuple(y for y in u if y not in key) for u in cur))
        for e in nxt:
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return seen


def has_trivial_component_by_reduction(words):
    return any(any(len(w) == 0 for w in e) for e in decreasing_closure(words))


def delta_oracle(word):
    """Cobracket of a knot word with summands dropped when decreasing moves expose a free circle."""
    acc = set()
    for v in set(word):
        parts = oriented_smoothing(list(word), v)
        if has_trivial_component_by_reduction(parts):
            continue
        acc ^= {link_canonical(parts, oriented=True)}
    return acc


def gaussian_odd_count(word):
    return sum(linking_parity(word, v) for v in set(word))


def smooth_words(words, v, way):
    """Resolve crossing v both ways; a crossing between two components joins them."""
    where = [c for c, w in enumerate(words) for x in w if x == v]
    a, b = where
    if a == b:
        w = list(words[a])
        i = w.index(v)
        j = w.index(v, i + 1)
        h1, h2 = w[i + 1 : j], w[j + 1 :] + w[:i]
        new = [h1, h2] if way == 0 else [h1 + h2[::-1]]
        return [list(u) for u in words[:a]] + new + [list(u) for u in words[a + 1 :]]
    wa, wb = list(words[a]), list(words[b])
    i, j = wa.index(v), wb.index(v)
    x, y = wa[i + 1 :] + wa[:i], wb[j + 1 :] + wb[:j]
    merged = x + y if way == 0 else x + y[::-1]
    rest = [list(u) for k, u in enumerate(words) if k not in (a, b)]
    return [merged] + rest


def bracket_oracle(word, knot_only=False):
    """Sum over both smoothings of every even crossing, each state reduced by
    every R2 order; all orders must agree on the result."""
    evens = [v for v in sorted(set(word)) if linking_parity(list(word), v) == 0]
    acc = set()
    for mask in range(2 ** len(evens)):
        state = [list(word)]
        for k, v in enumerate(evens):
            state = smooth_words(state, v, mask >> k & 1)
        closure = decreasing_closure(state, r1=False)
        minimal = min(sum(map(len, e)) for e in closure)
        finals = {link_canonical(e) for e in closure if sum(map(len, e)) == minimal}
        assert len(finals) == 1
        final = next(e for e in closure if sum(map(len, e)) == minimal)
        if len(final) > 1 and any(len(w) == 0 for w in final):
            continue
        if knot_only and len(final) > 1:
            continue
        acc ^= {link_canonical(final)}
    return acc
