"""
Spinning: the same asymmetry in every dimension
===============================================

Spinning tensors bilinearised cohomology with H(S^m), so the degree -1
class of m(9_46) survives while the spun unknot stays in positive degrees.
"""

import random

from legconc.cli import read_front
from legconc.concordance import knot_record, nonsymmetry_certificate, spin

m946 = knot_record(read_front("@m946"), "m946", fillable=["e0", "e1"])
unknot = knot_record(read_front("@unknot"), "unknot")

for m in (1, 2, 3):
    s = spin(unknot, m)
    print(f"spun unknot, m={m}: chords {s.spun_chord_degrees}, LCH {s.spun_bilch[0]}")

print("spun m946, m=2:", spin(m946, 2).record.bilch[("e0~", "e1~")])

for m in (1, 2, 3):
    print(nonsymmetry_certificate(m946, unknot, m, n=m + 1))
    print()

# iterated spins: S^1 x S^m1 x ... x S^mk in R^(2(1 + sum m) + 1)
rng = random.Random(1)
for _ in range(4):
    ms = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
    cert = nonsymmetry_certificate(m946, unknot, ms)
    print(f"{ms}: {cert.diffeomorphism_type} in R^{cert.ambient_dimension}, reverse {cert.reverse.verdict}")
