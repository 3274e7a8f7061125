"""Attach chord labels a1..a5, b1..b6, c1, c2 and the two named augmentations
to a candidate m(9_46) front found by plat_search.py.

Degree-0 chords are numbered so that, in left-to-right order, the support of
one augmentation reads b2, b4, b5 and the other b1, b3, b6; the degree 1 and
-1 chords follow the left-to-right order a5, a4, a3, a1, a2 and c2, c1.

Usage: python tools/label_m946.py "L1 L2 L4 X1 ... R1" NAME
"""

from __future__ import annotations

import sys

from legconc.augmentation import bilinearise, enumerate_augmentations
from legconc.diagram import FrontWord, parse_front, resolve_front, serialize_front
from legconc.dga import build_dga


def label(word: str, name: str) -> FrontWord:
    f = parse_front("\n".join(f"{t[0]} {t[1:]}" for t in word.split()))
    d = resolve_front(f)
    dga = build_dga(d)

    def order(deg):
        idx = [i for i, g in enumerate(dga.generators) if g.degree == deg]
        return sorted(idx, key=lambda i: d.crossings[i].front_event)

    b = order(0)
    augs = enumerate_augmentations(dga)
    pairs = [
        (x, y)
        for x in augs
        for y in augs
        if len(x.support) == 3 and len(y.support) == 3 and x.support | y.support == set(b)
        and bilinearise(dga, x, y).homology[-1] > 0
    ]
    if not pairs:
        raise SystemExit("no pair of complementary augmentations with LCH^-1 != 0")

    # prefer the pair whose first support sits at left-to-right ranks 0, 2, 4
    def score(pair):
        e0 = pair[0]
        return sum(1 for k, i in enumerate(b) if (i in e0.support) == (k in (0, 2, 4)))

    e0, e1 = max(pairs, key=score)
    lab = {}
    for i, n in zip(sorted(e0.support, key=b.index), ("b2", "b4", "b5")):
        lab[i] = n
    for i, n in zip(sorted(e1.support, key=b.index), ("b1", "b3", "b6")):
        lab[i] = n
    for i, n in zip(order(1), ("a5", "a4", "a3", "a1", "a2")):
        lab[i] = n
    for i, n in zip(order(-1), ("c2", "c1")):
        lab[i] = n
    labels = [None] * len(f.events)
    for i, c in enumerate(d.crossings):
        labels[c.front_event] = lab[i]
    augs_decl = (
        ("e0", tuple(sorted(lab[i] for i in e0.support))),
        ("e1", tuple(sorted(lab[i] for i in e1.support))),
    )
    return FrontWord(f.events, f.orientation, tuple(labels), augs_decl, name)


if __name__ == "__main__":
    sys.stdout.write(serialize_front(label(sys.argv[1], sys.argv[2])))
