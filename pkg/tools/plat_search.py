"""Exhaustive search over fronts of the form (left cusps)(crossings)(right cusps).

Any front can be brought to this shape by commuting events: crossings to
the left of a left cusp never involve its strands.  Cusp configurations are
non-crossing matchings of the 2k strands; the middle is a word in the
crossing generators X1..X(2k-1), enumerated up to commutation of distant
generators.

Usage: python tools/plat_search.py CUSPS CROSSINGS
"""

from __future__ import annotations

import sys
from collections import Counter

from legconc.diagram import FrontWord, classical_invariants, resolve_front
from legconc.dga import grade_chords
from knot_oracles import matches_alexander


def matchings(n: int):
    """Non-crossing perfect matchings of 0..n-1 as tuples partner[i]."""
    if n == 0:
        yield ()
        return

    def rec(points):
        if not points:
            yield {}
            return
        a = points[0]
        for idx in range(1, len(points), 2):
            b = points[idx]
            inside, outside = points[1:idx], points[idx + 1:]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    m = {a: b, b: a}
                    m.update(m1)
                    m.update(m2)
                    yield m

    for m in rec(list(range(n))):
        yield tuple(m[i] for i in range(n))


def cusp_word(match, side: str):
    """Events creating (side 'L') or closing (side 'R') the matching."""
    n = len(match)
    # innermost-first for R (close adjacent pairs repeatedly); outer-first for L
    pairs = sorted({(min(i, j), max(i, j)) for i, j in enumerate(match)})
    if side == "L":
        # open pairs from the outside in, left to right; levels are 1-based
        events = []
        present: list[int] = []  # original indices currently present, top to bottom
        for a, b in sorted(pairs, key=lambda p: (p[0], -(p[1]))):
            # insert a and b adjacent: position = number of present strands above a
            pos = sum(1 for x in present if x < a)
            events.append(("L", pos + 1))
            present = sorted(present + [a, b])
        return tuple(events)
    events = []
    present = list(range(n))
    while present:
        for idx in range(len(present) - 1):
            a, b = present[idx], present[idx + 1]
            if match[a] == b:
                events.append(("R", idx + 1))
                present = present[:idx] + present[idx + 2:]
                break
    return tuple(events)


def words(n_gen: int, length: int):
    """Words over 1..n_gen avoiding a descending adjacent commuting pair."""
    def rec(prefix, last):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for g in range(1, n_gen + 1):
            if last and abs(g - last) >= 2 and g < last:
                continue
            prefix.append(g)
            yield from rec(prefix, g)
            prefix.pop()

    yield from rec([], 0)


def analyse(left, right, word, n):
    """Component count, cusp balance, writhe and crossing degree multiset."""
    # perm[p] = braid strand (indexed at the left) found at position p after the braid
    perm = list(range(n))
    for g in word:
        perm[g - 1], perm[g] = perm[g], perm[g - 1]
    right_of = {perm[p]: p for p in range(n)}
    # traverse: on strand s going right, reach right position right_of[s], partner
    start = 0
    s, direction = 0, 1
    order = []
    mu = {}
    potential = 0
    up = down = 0
    seen = set()
    while True:
        if (s, direction) in seen:
            break
        seen.add((s, direction))
        mu[s] = potential
        order.append((s, direction))
        if direction == 1:
            p = right_of[s]
            q = right[p]
            # right cusp from position p to q; moving to a smaller position goes up
            if q < p:
                up += 1
                potential += 1
            else:
                down += 1
                potential -= 1
            s, direction = perm[q], -1
        else:
            q = left[s]
            if q < s:
                up += 1
                potential += 1
            else:
                down += 1
                potential -= 1
            s, direction = q, 1
    if len(order) != n:
        return None
    dir_of = dict(order)
    if up != down:
        return None
    # crossing data
    perm = list(range(n))
    writhe = 0
    degs = Counter()
    for g in word:
        a, b = perm[g - 1], perm[g]
        writhe += 1 if dir_of[a] == dir_of[b] else -1
        degs[mu[a] - mu[b]] += 1
        perm[g - 1], perm[g] = b, a
    return writhe, degs


def search(cusps: int, crossings: int, tb: int = -1, crossing_degrees=None):
    n = 2 * cusps
    need_writhe = tb + cusps
    for left in matchings(n):
        for right in matchings(n):
            lw, rw = cusp_word(left, "L"), cusp_word(right, "R")
            for word in words(n - 1, crossings):
                res = analyse(left, right, word, n)
                if res is None:
                    continue
                writhe, degs = res
                if writhe != need_writhe or (crossing_degrees and degs != crossing_degrees):
                    continue
                ev = lw + tuple(("X", g) for g in word) + rw
                yield ev


if __name__ == "__main__":
    cusps, crossings = int(sys.argv[1]), int(sys.argv[2])
    target_crossings = Counter({1: 5 - cusps, 0: 6, -1: 2})
    hits = 0
    for ev in search(cusps, crossings, -1, target_crossings):
        f = FrontWord(ev)
        if not matches_alexander(f, [2, -5, 2]):
            continue
        inv = classical_invariants(f)
        degs = Counter(c.degree for c in grade_chords(resolve_front(f), inv))
        assert inv.tb == -1 and inv.rotation == 0, (ev, inv)
        assert degs == Counter({1: 5, 0: 6, -1: 2}), (ev, degs)
        hits += 1
        print(" ".join(f"{k}{l}" for k, l in ev), flush=True)
    print("hits", hits, file=sys.stderr)
