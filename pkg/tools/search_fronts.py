"""Random search for front words with prescribed chord data.

Usage: python tools/search_fronts.py SEED COUNT RIGHT_CUSPS MAX_STRANDS

Prints fronts whose resolution has chord degrees {1:5, 0:6, -1:2},
tb = -1, rotation 0 and Alexander polynomial 2 - 5t + 2t^2.
"""

from __future__ import annotations

import random
import sys
from collections import Counter

from legconc.diagram import DiagramError, FrontWord, classical_invariants, resolve_front
from legconc.dga import grade_chords
from knot_oracles import matches_alexander

TARGET = Counter({1: 5, 0: 6, -1: 2})


def random_front(rng: random.Random, cusps: int, crossings: int, max_strands: int = 6):
    events = []
    m = 0
    left_l, left_r, left_x = cusps, cusps, crossings
    while left_l or left_r or left_x:
        choices = []
        if left_l and m + 2 <= max_strands:
            choices.append("L")
        if left_r and m >= 2:
            choices.append("R")
        if left_x and m >= 2:
            choices.append("X")
        # stay closable: remaining right cusps must cover open strands
        choices = [c for c in choices if _closable(c, m, left_l, left_r, left_x)]
        c = rng.choice(choices)
        if c == "L":
            events.append(("L", rng.randint(1, m + 1)))
            m += 2
            left_l -= 1
        elif c == "R":
            events.append(("R", rng.randint(1, m - 1)))
            m -= 2
            left_r -= 1
        else:
            events.append(("X", rng.randint(1, m - 1)))
            left_x -= 1
    return tuple(events)


def _closable(c, m, nl, nr, nx):
    if c == "L":
        m, nl = m + 2, nl - 1
    elif c == "R":
        m, nr = m - 2, nr - 1
    else:
        nx -= 1
    if m == 0 and (nl or nr or nx):
        # a closed component before the end would make a link
        return False
    return nr * 2 == m + nl * 2 and m >= 0


def candidates(seed: int, count: int, cusps: int, max_strands: int = 6):
    rng = random.Random(seed)
    crossings = 13 - cusps
    for _ in range(count):
        ev = random_front(rng, cusps, crossings, max_strands)
        try:
            f = FrontWord(ev)
        except DiagramError:
            continue
        inv = classical_invariants(f)
        if inv.tb != -1 or inv.rotation != 0:
            continue
        d = resolve_front(f)
        degs = Counter(c.degree for c in grade_chords(d, inv))
        if degs != TARGET:
            continue
        if not matches_alexander(f, [2, -5, 2]):
            continue
        yield f


if __name__ == "__main__":
    seed, count, cusps, width = map(int, sys.argv[1:5])
    seen = set()
    for f in candidates(seed, count, cusps, width):
        if f.events in seen:
            continue
        seen.add(f.events)
        print(" ".join(f"{k}{l}" for k, l in f.events), flush=True)
