"""Enumerate pretzel-shaped fronts and report those matching the target chord data.

Three horizontal twist rows sit between left cusps ``L1 L2 L4`` and right
cusps ``R4 R2 R1``.  Each row is filled by repeating a short gadget word;
gadgets may add cusps below the row.
"""

from __future__ import annotations

import itertools
import sys
from collections import Counter

from legconc.diagram import DiagramError, FrontWord, classical_invariants, resolve_front
from legconc.dga import grade_chords
from knot_oracles import matches_alexander

TARGET = Counter({1: 5, 0: 6, -1: 2})


def gadgets(top: int, max_len: int):
    """Words acting on a row whose strands sit at levels top, top+1 with nothing below."""
    out = [((("X", top),))]
    for length in range(2, max_len + 1):
        for word in itertools.product("LRX", repeat=length):
            # track strand count below the row's top strand
            yield_levels = []
            for kinds in [word]:
                m = 2
                levels_options = []
                ok = True
                for k in kinds:
                    if k == "L":
                        levels_options.append([top + i for i in range(0, m + 1)])
                        m += 2
                    elif k == "R":
                        if m < 4:
                            ok = False
                            break
                        levels_options.append([top + i for i in range(0, m - 1)])
                        m -= 2
                    else:
                        levels_options.append([top + i for i in range(0, m - 1)])
                if not ok or m != 2:
                    continue
                for levels in itertools.product(*levels_options):
                    out.append(tuple(zip(kinds, levels)))
    return out


def scan(max_len: int, reps=(1, 2, 3)):
    rows = {j: gadgets(j, max_len) for j in (1, 3, 5)}
    head = (("L", 1), ("L", 2), ("L", 4))
    tail = (("R", 4), ("R", 2), ("R", 1))
    bottom = rows[5]
    seen = set()
    for g5 in bottom:
        for r1, r2, r5 in itertools.product(reps, reps, reps):
            for g1 in ((("X", 1),),):
                for g3 in ((("X", 3),),):
                    ev = head + g1 * r1 + g3 * r2 + g5 * r5 + tail
                    if ev in seen:
                        continue
                    seen.add(ev)
                    try:
                        f = FrontWord(ev)
                    except DiagramError:
                        continue
                    inv = classical_invariants(f)
                    if inv.rotation:
                        continue
                    degs = Counter(c.degree for c in grade_chords(resolve_front(f), inv))
                    alex = matches_alexander(f, [2, -5, 2])
                    yield f, inv, degs, alex


if __name__ == "__main__":
    max_len = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    for f, inv, degs, alex in scan(max_len):
        if alex:
            flag = "MATCH" if (degs == TARGET and inv.tb == -1) else ""
            print(inv.tb, dict(sorted(degs.items())), " ".join(f"{k}{l}" for k, l in f.events), flag, flush=True)
