import random
from pathlib import Path

import pytest
from hypothesis import given, settings

from conftest import fronts
from legconc.augmentation import augmentation_from_names, enumerate_augmentations
from legconc.diagram import classical_invariants, crossing_signs, parse_front, resolve_front
from legconc.dga import (
    DGAPresentation,
    DSquaredNonzero,
    ReebChord,
    build_dga,
    check_dga,
    dga_from_front,
    enumerate_discs,
    export_dga,
    grade_chords,
    parse_dga,
)

GOLDEN = Path(__file__).parent / "golden"


def front(text):
    return parse_front(text.replace(";", "\n"))


def test_unknot_single_chord_degree_one(unknot):
    d = resolve_front(unknot)
    chords = grade_chords(d, classical_invariants(unknot))
    assert [c.degree for c in chords] == [1]


def test_unknot_two_discs_cancel(unknot):
    d = resolve_front(unknot)
    (c,) = grade_chords(d)
    discs = enumerate_discs(d, c.crossing_ref)
    assert sum(n for w, n in discs if w == ()) % 2 == 0
    dga = dga_from_front(unknot)
    assert dga.differential == (frozenset(),)


def test_trefoil_matches_chekanov(trefoil):
    # Chekanov's max-tb trefoil: d a = 1 + b1 + b3 + b1 b2 b3 and its mirror word
    assert export_dga(dga_from_front(trefoil)) == (GOLDEN / "trefoil.dga").read_text()
    dga = dga_from_front(trefoil)
    words = {dga.generators[i].id: {dga.format_word(w) for w in dga.differential[i]} for i in range(5)}
    assert words["q4"] == {"1", "q1", "q3", "q1 q2 q3"}
    assert words["q5"] == {"1", "q1", "q3", "q3 q2 q1"}


def test_m946_grading_table(m946):
    chords = grade_chords(resolve_front(m946))
    by_deg = {}
    for c in chords:
        by_deg.setdefault(c.degree, []).append(c.id)
    assert sorted(by_deg[1]) == ["a1", "a2", "a3", "a4", "a5"]
    assert sorted(by_deg[0]) == ["b1", "b2", "b3", "b4", "b5", "b6"]
    assert sorted(by_deg[-1]) == ["c1", "c2"]


def test_m946_dga(m946):
    dga = dga_from_front(m946)
    assert len(dga.generators) == 13
    assert all(not dga.d_squared(i) for i in range(13))
    assert sum((-1) ** (g.degree % 2) for g in dga.generators) == -1
    assert export_dga(dga) == (GOLDEN / "m946.dga").read_text()


def test_m946_negative_chords_have_degree_minus_two_words(m946):
    dga = dga_from_front(m946)
    for name in ("c1", "c2"):
        i = dga.index(name)
        assert all(dga.word_degree(w) == -2 for w in dga.differential[i])


@pytest.mark.parametrize("name", ["m946", "m946_alt"])
def test_m946_named_augmentations_kill_differential(name):
    from corpus import shipped

    dga = dga_from_front(shipped(f"{name}.front"))
    for gens in (("b2", "b4", "b5"), ("b1", "b3", "b6")):
        eps = augmentation_from_names(dga, gens)
        for a in ("a1", "a2", "a3", "a4", "a5"):
            i = dga.index(a)
            assert sum(eps.word_value(w) for w in dga.differential[i]) % 2 == 0, (gens, a)


def test_corpus_d_squared_and_degree_law(dgas):
    for name, _, dga in dgas:
        for i, g in enumerate(dga.generators):
            assert not dga.d_squared(i), name
            for w in dga.differential[i]:
                assert dga.word_degree(w) == dga.reduce(g.degree - 1), (name, g.id)


def test_corpus_sign_law(dgas):
    for name, f, dga in dgas:
        front_signs = iter(crossing_signs(f))
        for c in resolve_front(f).crossings:
            deg = dga.generators[c.index].degree
            assert c.sign == (-1) ** (deg % 2), (name, c)
            if c.kind == "crossing":
                assert c.sign == next(front_signs)


def test_corpus_euler_identity(dgas):
    checked = 0
    for name, f, dga in dgas:
        inv = classical_invariants(f)
        if inv.rotation == 0:
            assert sum((-1) ** (g.degree % 2) for g in dga.generators) == inv.tb, name
            checked += 1
    assert checked >= 10


def test_export_roundtrip(dgas):
    for name, _, dga in dgas:
        text = export_dga(dga)
        again = parse_dga(text)
        assert again == dga, name
        assert export_dga(again) == text


def test_export_zero_and_unit():
    dga = parse_dga("gen a 1\ngen b 0\nd a = 1 + b\nd b = 0\n")
    assert dga.differential[0] == frozenset({(), (1,)})
    assert export_dga(dga) == "gen a 1\ngen b 0\nd a = 1 + b\nd b = 0\n"


def test_check_dga_rejects_nonzero_square():
    dga = DGAPresentation(
        (ReebChord("x", 2, 0), ReebChord("y", 1, 1), ReebChord("z", 0, 2)),
        (frozenset({(1,)}), frozenset({(2,)}), frozenset()),
    )
    with pytest.raises(DSquaredNonzero) as err:
        check_dga(dga)
    assert err.value.generator == "x"


def test_deterministic(m946):
    assert export_dga(dga_from_front(m946)) == export_dga(dga_from_front(m946))


def test_relabelling_is_a_dga_isomorphism(m946):
    dga = dga_from_front(m946)
    rng = random.Random(3)
    for _ in range(5):
        perm = list(range(13))
        rng.shuffle(perm)
        r = dga.relabelled(perm)
        check_dga(r)
        assert sorted(export_dga(r).splitlines()) == sorted(export_dga(dga).splitlines())


@pytest.mark.parametrize(
    "word",
    ["L 1;L 2;R 1;R 1", "L 1;L 3;L 2;R 1;X 2;X 2;X 2;R 1;R 1"],
    ids=["unknot", "trefoil"],
)
def test_stabilized_fronts_have_no_augmentation(word):
    f = front(word)
    dga = dga_from_front(f)
    # a generator with d = 1 rules out every augmentation
    assert any(() in dga.differential[i] and len(dga.differential[i]) == 1 for i in range(len(dga.generators)))
    assert enumerate_augmentations(dga) == []


@settings(max_examples=40)
@given(fronts(max_cusps=3, max_crossings=5))
def test_random_fronts_give_dgas(f):
    dga = build_dga(resolve_front(f))
    inv = classical_invariants(f)
    assert dga.grading_modulus == 2 * abs(inv.rotation)
    assert len(dga.generators) == len(resolve_front(f).crossings)
