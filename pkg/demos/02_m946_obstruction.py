"""
An asymmetric concordance question for m(9_46)
==============================================

The unknot passes every test for being concordant to m(9_46), but a pair
of filling augmentations of m(9_46) blocks the reverse direction.
"""

from legconc.augmentation import augmentation_from_names, bilinearise, seidel_consistency
from legconc.cli import read_front
from legconc.concordance import knot_record, obstruct_concordance
from legconc.dga import export_dga

front = read_front("@m946")
rec = knot_record(front, "m946", fillable=["e0", "e1"])
dga = rec.dga
print(export_dga(dga))

print("augmentations:", ", ".join(rec.augmentations))

# the two augmentations coming from disc fillings
e0 = augmentation_from_names(dga, ["b2", "b4", "b5"])
e1 = augmentation_from_names(dga, ["b1", "b3", "b6"])
for name, eps in (("e0", e0), ("e1", e1)):
    print(name, seidel_consistency(dga, eps, [1, 0], n=1))

# mixing them gives a class in degree -1
print("LCH(e0, e1) =", bilinearise(dga, e0, e1).homology)
print("LCH(e1, e0) =", bilinearise(dga, e1, e0).homology)

#############################################################################
# Obstructions in both directions

unknot = knot_record(read_front("@unknot"), "unknot")
print(obstruct_concordance(rec, unknot))
print(obstruct_concordance(unknot, rec))
