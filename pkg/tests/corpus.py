"""Shared test corpus: shipped diagrams plus seeded random grids."""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from legconc.diagram import DiagramError, GridDiagram, grid_to_front, load_diagram

SHIPPED = ("unknot.front", "unknot.grid", "trefoil.front", "trefoil.grid", "m946.front", "m946_alt.front")
GRID_SEED = 20240611
GRID_COUNT = 20


def shipped_text(name: str) -> str:
    return (resources.files("legconc") / "data" / name).read_text()


def shipped(name: str):
    return load_diagram(shipped_text(name))


def random_grids(seed: int = GRID_SEED, count: int = GRID_COUNT, sizes=(3, 8)):
    """Single-component grids with sizes cycling through the range."""
    rng = random.Random(seed)
    out = []
    lo, hi = sizes
    while len(out) < count:
        n = lo + len(out) % (hi - lo + 1)
        xs = list(range(1, n + 1))
        os_ = list(range(1, n + 1))
        rng.shuffle(xs)
        rng.shuffle(os_)
        try:
            out.append(GridDiagram(n, tuple(xs), tuple(os_)))
        except DiagramError:
            continue
    return out


AUG_SEED = 7
AUG_COUNT = 8


def augmentable_grids(seed: int = AUG_SEED, count: int = AUG_COUNT, sizes=(4, 8)):
    """Random grids whose DGA has at least two augmentations."""
    from legconc.augmentation import enumerate_augmentations
    from legconc.dga import dga_from_front

    out = []
    k = 0
    while len(out) < count:
        for g in random_grids(seed + k, 50, sizes):
            if len(enumerate_augmentations(dga_from_front(grid_to_front(g)))) >= 2:
                out.append(g)
                break
        k += 1
    return out


@lru_cache(maxsize=None)
def corpus() -> tuple:
    """(name, front) pairs; at least 20 diagrams."""
    items = [(name, shipped(name)) for name in SHIPPED]
    for k, g in enumerate(random_grids()):
        items.append((f"grid{k}-n{g.size}", grid_to_front(g)))
    for k, g in enumerate(augmentable_grids()):
        items.append((f"augrid{k}-n{g.size}", grid_to_front(g)))
    return tuple(items)
