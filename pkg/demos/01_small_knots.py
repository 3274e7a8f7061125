"""
Unknot and trefoil from grid diagrams
=====================================

Grid diagram -> front -> resolved diagram -> DGA -> augmentations.
"""

from legconc.augmentation import bilch_multiset, enumerate_augmentations, linearised_homology
from legconc.diagram import GridDiagram, classical_invariants, grid_to_front, serialize_front
from legconc.dga import dga_from_front, export_dga

# the 2x2 grid is the standard unknot
unknot = grid_to_front(GridDiagram(2, (2, 1), (1, 2)))
print(serialize_front(unknot))
print(classical_invariants(unknot))

# one chord of degree 1; its two half-discs cancel mod 2
print(export_dga(dga_from_front(unknot)))

#############################################################################
# A 5x5 grid for the right-handed trefoil with maximal tb

g = GridDiagram(5, (2, 3, 4, 5, 1), (4, 5, 1, 2, 3))
trefoil = grid_to_front(g)
inv = classical_invariants(trefoil)
print("tb =", inv.tb, " rot =", inv.rotation)

dga = dga_from_front(trefoil)
print(export_dga(dga))

augs = enumerate_augmentations(dga)
print(len(augs), "augmentations")
for eps in augs:
    print("  ", eps.label(dga), "LCH =", linearised_homology(dga, eps))

# cyclically shifting the grid rows gives other fronts of the same knot;
# the multiset of bilinearised homologies does not move
ref = bilch_multiset(dga)
for dr in range(1, 5):
    xs = tuple((x + dr - 1) % 5 + 1 for x in g.x_positions)
    os_ = tuple((o + dr - 1) % 5 + 1 for o in g.o_positions)
    f = grid_to_front(GridDiagram(5, xs, os_))
    same = bilch_multiset(dga_from_front(f)) == ref
    print(f"shift {dr}: {len(f.events):2d} front events, same multiset: {same}")
