import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from knot_oracles import augmentation_count_from_rulings
from legconc.augmentation import (
    Augmentation,
    NotAnAugmentation,
    augmentation_from_names,
    bilch_multiset,
    bilinearise,
    enumerate_augmentations,
    is_augmentation,
    linearised_complex,
    linearised_homology,
    parse_augmentation,
    seidel_consistency,
    serialize_augmentation,
)
from legconc.diagram import GridDiagram, classical_invariants, grid_to_front, resolve_front
from legconc.dga import dga_from_front, parse_dga
from legconc.gf2 import PoincarePolynomial

TREFOIL_GRID = ((2, 3, 4, 5, 1), (4, 5, 1, 2, 3))


def brute_force_augmentations(dga):
    """All graded augmentations by trying every assignment on degree-0 chords."""
    free = [i for i, g in enumerate(dga.generators) if dga.reduce(g.degree) == 0]
    out = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        support = frozenset(i for i, b in zip(free, bits) if b)
        ok = all(
            sum(all(x in support for x in w) for w in dga.differential[a]) % 2 == 0
            for a in range(len(dga.generators))
        )
        if ok:
            out.append(support)
    return out


def ruling_prediction(f, dga):
    d = resolve_front(f)
    deg = {c.front_event: dga.generators[c.index].degree for c in d.crossings if c.kind == "crossing"}
    return augmentation_count_from_rulings(f, deg, dga.degrees, dga.grading_modulus)


def trefoil_presentations():
    """The five fronts obtained from cyclic shifts of the trefoil grid."""
    xs0, os0 = TREFOIL_GRID
    n = len(xs0)
    out = []
    for dr in range(n):
        xs = tuple((x + dr - 1) % n + 1 for x in xs0)
        os_ = tuple((o + dr - 1) % n + 1 for o in os0)
        out.append(grid_to_front(GridDiagram(n, xs, os_)))
    return out


def test_unknot_unique_zero_augmentation(unknot):
    dga = dga_from_front(unknot)
    augs = enumerate_augmentations(dga)
    assert augs == [Augmentation(frozenset())]
    assert linearised_homology(dga, augs[0]) == {1: 1}
    assert bilch_multiset(dga) == [PoincarePolynomial({1: 1})]


def test_m946_augmentations(m946):
    dga = dga_from_front(m946)
    augs = enumerate_augmentations(dga)
    supports = {frozenset(dga.generators[i].id for i in a.support) for a in augs}
    assert frozenset({"b2", "b4", "b5"}) in supports
    assert frozenset({"b1", "b3", "b6"}) in supports
    # frozen golden count; equal to the normal-ruling prediction below
    assert len(augs) == 8
    assert ruling_prediction(m946, dga) == 8


def test_m946_mixed_pair_has_degree_minus_one_class(m946):
    dga = dga_from_front(m946)
    e0 = augmentation_from_names(dga, ["b2", "b4", "b5"])
    e1 = augmentation_from_names(dga, ["b1", "b3", "b6"])
    h = bilinearise(dga, e0, e1).homology
    assert h[-1] >= 1
    assert h == {-1: 1, 0: 1, 1: 1}
    assert bilinearise(dga, e1, e0).homology == {-1: 1, 0: 1, 1: 1}


def test_m946_multiset_golden(m946):
    polys = [p.serialize() for p in bilch_multiset(dga_from_front(m946))]
    assert polys == ["-1:1 0:1 1:1"] * 32 + ["1:1"] * 32


def test_trefoil_multiset_golden(trefoil):
    polys = [p.serialize() for p in bilch_multiset(dga_from_front(trefoil))]
    assert sorted(polys) == sorted(["0:1"] * 20 + ["0:2 1:1"] * 5)


def test_enumeration_matches_brute_force(dgas):
    for name, _, dga in dgas:
        got = sorted(sorted(a.support) for a in enumerate_augmentations(dga))
        want = sorted(sorted(s) for s in brute_force_augmentations(dga))
        assert got == want, name


def test_enumeration_matches_ruling_count(dgas):
    for name, f, dga in dgas:
        assert ruling_prediction(f, dga) == len(enumerate_augmentations(dga)), name


def test_augmentations_annihilate_differential(dgas):
    for name, _, dga in dgas:
        for eps in enumerate_augmentations(dga):
            for i, g in enumerate(dga.generators):
                if dga.reduce(g.degree) != 0:
                    assert not eps(i)
                assert sum(eps.word_value(w) for w in dga.differential[i]) % 2 == 0, (name, g.id)


def _pairs(dga, limit=16):
    augs = enumerate_augmentations(dga)[:limit]
    return augs, [(a, b) for a in augs for b in augs]


def test_bilinearised_square_zero_and_euler(dgas):
    for name, f, dga in dgas:
        augs, pairs = _pairs(dga)
        chis = set()
        for a, b in pairs:
            data = bilinearise(dga, a, b)
            data.complex.check()
            h = data.homology
            chis.add(sum((-1) ** (k % 2) * v for k, v in h.coeffs.items()))
        assert len(chis) <= 1, name
        if chis:
            signed = sum((-1) ** (g.degree % 2) for g in dga.generators)
            assert chis == {signed}, name


def test_alternating_sum_is_plus_tb(dgas):
    # frozen convention: cohomological alternating sum equals +tb for r = 0
    for name, f, dga in dgas:
        inv = classical_invariants(f)
        if inv.rotation or not enumerate_augmentations(dga):
            continue
        for p in bilch_multiset(dga)[:4]:
            assert sum((-1) ** k * v for k, v in p.coeffs.items()) == inv.tb, name


def test_alternating_sum_golden(unknot, trefoil):
    for f, poly, tb in ((unknot, {1: 1}, -1), (trefoil, {0: 2, 1: 1}, 1)):
        dga = dga_from_front(f)
        (eps, *_) = enumerate_augmentations(dga)
        h = linearised_homology(dga, eps)
        assert h == poly
        assert sum((-1) ** k * v for k, v in h.coeffs.items()) == tb


def test_diagonal_matches_linearised(dgas):
    for name, _, dga in dgas:
        for eps in enumerate_augmentations(dga)[:16]:
            bi = bilinearise(dga, eps, eps).complex
            lin = linearised_complex(dga, eps)
            assert bi.basis == lin.basis, name
            for k in set(bi.differential) | set(lin.differential):
                assert bi.d(k) == lin.d(k), (name, k)


def test_multiset_invariant_under_relabelling(m946):
    dga = dga_from_front(m946)
    ref = bilch_multiset(dga)
    rng = random.Random(5)
    for _ in range(3):
        perm = list(range(len(dga.generators)))
        rng.shuffle(perm)
        assert bilch_multiset(dga.relabelled(perm)) == ref


def test_trefoil_invariance_across_presentations(trefoil):
    ref = bilch_multiset(dga_from_front(trefoil))
    words = set()
    for f in trefoil_presentations():
        words.add(f.events)
        assert bilch_multiset(dga_from_front(f)) == ref
    assert len(words) == 5


def test_m946_two_fronts_agree(m946):
    from corpus import shipped

    alt = shipped("m946_alt.front")
    assert alt.events != m946.events
    assert bilch_multiset(dga_from_front(alt)) == bilch_multiset(dga_from_front(m946))


def test_no_augmentations_empty_multiset():
    dga = parse_dga("gen a 1\ngen b 0\nd a = 1\nd b = 0\n")
    assert enumerate_augmentations(dga) == []
    assert bilch_multiset(dga) == []


def test_seidel(unknot, m946):
    dga = dga_from_front(unknot)
    assert seidel_consistency(dga, Augmentation(frozenset()), [1, 0], 1).passed
    dga = dga_from_front(m946)
    for gens in (["b2", "b4", "b5"], ["b1", "b3", "b6"]):
        rep = seidel_consistency(dga, augmentation_from_names(dga, gens), [1, 0], 1)
        assert rep.passed and rep.homology == {1: 1}
    bad = seidel_consistency(dga, augmentation_from_names(dga, ["b2", "b4", "b5"]), [1, 2], 1)
    assert not bad.passed
    assert bad.mismatches == ((0, 2, 0),)


def test_not_an_augmentation(m946):
    dga = dga_from_front(m946)
    with pytest.raises(NotAnAugmentation):
        bilinearise(dga, augmentation_from_names(dga, ["b1"]), Augmentation(frozenset()))
    with pytest.raises(NotAnAugmentation):
        augmentation_from_names(dga, ["zz"])
    assert not is_augmentation(dga, augmentation_from_names(dga, ["a1"]))


def test_serialization_roundtrip(dgas):
    for name, _, dga in dgas:
        for eps in enumerate_augmentations(dga)[:8]:
            text = serialize_augmentation(dga, eps)
            assert all(line.endswith("=1") for line in text.splitlines())
            assert parse_augmentation(dga, text) == eps


@settings(max_examples=25)
@given(st.integers(4, 7), st.randoms(use_true_random=False))
def test_random_grids_brute_force(n, rnd):
    from hypothesis import assume

    from legconc.diagram import DiagramError

    xs, os_ = list(range(1, n + 1)), list(range(1, n + 1))
    rnd.shuffle(xs)
    rnd.shuffle(os_)
    try:
        f = grid_to_front(GridDiagram(n, tuple(xs), tuple(os_)))
    except DiagramError:
        assume(False)
    dga = dga_from_front(f)
    assert len(enumerate_augmentations(dga)) == len(brute_force_augmentations(dga))
