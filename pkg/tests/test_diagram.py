import pytest
from hypothesis import given

from conftest import fronts, grids
from corpus import shipped_text
from legconc.diagram import (
    DegenerateColumn,
    DiagramSyntaxError,
    FrontWord,
    GridDiagram,
    InvalidFront,
    MultiComponent,
    NotAPermutation,
    classical_invariants,
    grid_to_front,
    load_diagram,
    parse_front,
    parse_grid,
    resolve_front,
    serialize_front,
    serialize_grid,
)


def cycle_count(xs, os_):
    """Components of a grid by walking O -> X along rows, X -> O along columns."""
    n = len(xs)
    col_of_x = {r: c for c, r in enumerate(xs)}
    seen, cycles = set(), 0
    for start in range(n):
        if start in seen:
            continue
        cycles += 1
        c = start
        while c not in seen:
            seen.add(c)
            c = col_of_x[os_[c]]
    return cycles


# -- grids -------------------------------------------------------------------

def test_parse_smallest_grid():
    g = parse_grid("n=2; X: 2 1; O: 1 2")
    assert g == GridDiagram(2, (2, 1), (1, 2))


def test_degenerate_column_reported():
    with pytest.raises(DegenerateColumn, match="column 1"):
        parse_grid("n=2; X: 1 2; O: 1 2")


def test_not_a_permutation():
    with pytest.raises(NotAPermutation):
        parse_grid("n=2\nX: 2 2\nO: 1 2")
    with pytest.raises(NotAPermutation):
        parse_grid("n=3\nX: 1 2\nO: 2 3 1")


def test_syntax_error_names_line():
    with pytest.raises(DiagramSyntaxError) as exc:
        parse_grid("n=2\nX: 2 1\nbogus")
    assert exc.value.line == 3


def test_five_grid_verdict_matches_cycle_trace():
    xs, os_ = (5, 1, 2, 3, 4), (2, 3, 4, 5, 1)
    assert cycle_count(xs, os_) == 1
    g = parse_grid("n=5; X: 5 1 2 3 4; O: 2 3 4 5 1")
    assert g.size == 5


def test_link_grid_rejected():
    assert cycle_count((2, 1, 4, 3), (1, 2, 3, 4)) == 2
    with pytest.raises(MultiComponent):
        parse_grid("n=4\nX: 2 1 4 3\nO: 1 2 3 4")


@given(grids(max_size=7))
def test_grid_component_check_agrees_with_cycle_trace(g):
    assert cycle_count(g.x_positions, g.o_positions) == 1


def test_grid_roundtrip():
    g = parse_grid(shipped_text("trefoil.grid"))
    assert parse_grid(serialize_grid(g)) == g
    assert serialize_grid(parse_grid(serialize_grid(g))) == serialize_grid(g)


# -- grid -> front -----------------------------------------------------------

def test_two_by_two_grid_front():
    f = grid_to_front(GridDiagram(2, (2, 1), (1, 2)))
    assert f.events == (("L", 1), ("R", 1))


def test_three_by_three_unknot_grids():
    # L-shaped hexagons: corner types counted by hand on the grid
    plain = grid_to_front(GridDiagram(3, (3, 1, 2), (1, 2, 3)))
    assert plain.count("L") + plain.count("R") == 2
    assert classical_invariants(plain).tb == -1
    stab = grid_to_front(GridDiagram(3, (1, 3, 2), (3, 2, 1)))
    assert stab.count("L") + stab.count("R") == 4
    assert classical_invariants(stab).tb == -2
    assert abs(classical_invariants(stab).rotation) == 1


def test_trefoil_grid_front():
    f = grid_to_front(parse_grid("n=5; X: 5 1 2 3 4; O: 2 3 4 5 1"))
    assert f.events == (("L", 1), ("L", 3), ("X", 2), ("X", 2), ("X", 2), ("R", 1), ("R", 1))
    inv = classical_invariants(f)
    assert (inv.tb, inv.rotation) == (1, 0)


@given(grids(max_size=7))
def test_grid_front_profile_returns_to_zero(g):
    f = grid_to_front(g)
    prof = f.strand_count_profile
    assert prof[0] == prof[-1] == 0 and min(prof) >= 0


# -- fronts ------------------------------------------------------------------

def test_front_file_roundtrip_is_bit_exact():
    for name in ("unknot.front", "trefoil.front"):
        f = parse_front(shipped_text(name))
        text = serialize_front(f)
        assert serialize_front(parse_front(text)) == text
        assert parse_front(text) == f


def test_m946_front_roundtrip_keeps_labels(m946):
    again = parse_front(serialize_front(m946))
    assert again == m946
    assert [lab for lab in again.labels if lab] == [lab for lab in m946.labels if lab]


def test_front_errors_carry_line_numbers():
    with pytest.raises(InvalidFront) as exc:
        parse_front("L 1\nX 3\nR 1\n")
    assert exc.value.line == 2
    with pytest.raises(DiagramSyntaxError):
        parse_front("L 1\nQ 1\n")
    with pytest.raises(InvalidFront):
        parse_front("L 1\nL 1\nR 1\n")


def test_two_component_front_rejected():
    with pytest.raises(MultiComponent):
        FrontWord((("L", 1), ("L", 3), ("R", 1), ("R", 1)))


def test_load_diagram_dispatches_on_format():
    assert load_diagram("n=2\nX: 2 1\nO: 1 2\n").events == (("L", 1), ("R", 1))
    assert load_diagram("L 1\nR 1\n").events == (("L", 1), ("R", 1))


# -- invariants --------------------------------------------------------------

def test_unknot_invariants(unknot):
    inv = classical_invariants(unknot)
    assert (inv.tb, inv.rotation, inv.component_count) == (-1, 0, 1)


def test_m946_invariants(m946):
    inv = classical_invariants(m946)
    assert (inv.tb, inv.rotation) == (-1, 0)
    # chord-grading identity: sum of (-1)^deg over 5 + 6 + 2 chords
    assert inv.tb == 6 - 5 - 2


def test_m946_resolves_to_thirteen_crossings(m946):
    d = resolve_front(m946)
    assert len(d.crossings) == 13
    assert len(d.crossings) == m946.count("X") + m946.count("R")


def test_unknot_resolution_has_one_crossing(unknot):
    assert len(resolve_front(unknot).crossings) == 1


@given(fronts())
def test_orientation_reversal(f):
    a, b = classical_invariants(f), classical_invariants(f.reversed_orientation())
    assert a.tb == b.tb
    assert a.rotation == -b.rotation


@given(fronts())
def test_resolution_invariants(f):
    d = resolve_front(f)
    inv = classical_invariants(f)
    assert len(d.crossings) == f.count("X") + f.count("R")
    assert d.euler_characteristic() == 2
    assert d.writhe == inv.tb
    assert inv.tb == inv.writhe - inv.right_cusps


@given(grids(max_size=7))
def test_resolution_invariants_on_grids(g):
    f = grid_to_front(g)
    d = resolve_front(f)
    assert d.euler_characteristic() == 2
    assert d.writhe == classical_invariants(f).tb


@given(fronts())
def test_front_roundtrip_property(f):
    assert parse_front(serialize_front(f)) == f


def test_mirror_preserves_tb(trefoil):
    m = trefoil.mirrored()
    assert classical_invariants(m).tb == classical_invariants(trefoil).tb


# grid commutation: swapping adjacent columns whose [min,max] row ranges are
# disjoint or nested preserves the Legendrian type
COMMUTATION_PAIRS = [
    ((2, 6, 3, 5, 1, 4), (1, 5, 2, 4, 6, 3), 0),
    ((1, 2, 5, 6, 3, 4), (5, 3, 6, 2, 4, 1), 0),
    ((3, 2, 4, 1, 5), (5, 4, 3, 2, 1), 2),
    ((2, 5, 3, 1, 4, 6), (6, 2, 5, 4, 3, 1), 4),
]


def _commutable(xs, os_, c):
    a = sorted((xs[c], os_[c]))
    b = sorted((xs[c + 1], os_[c + 1]))
    disjoint = a[1] < b[0] or b[1] < a[0]
    nested = (a[0] < b[0] and b[1] < a[1]) or (b[0] < a[0] and a[1] < b[1])
    return disjoint or nested


@pytest.mark.parametrize("xs,os_,c", COMMUTATION_PAIRS)
def test_invariants_stable_under_commutation(xs, os_, c):
    assert _commutable(xs, os_, c)
    g = GridDiagram(len(xs), xs, os_)
    xs2, os2 = list(xs), list(os_)
    xs2[c], xs2[c + 1] = xs2[c + 1], xs2[c]
    os2[c], os2[c + 1] = os2[c + 1], os2[c]
    h = GridDiagram(len(xs), tuple(xs2), tuple(os2))
    a, b = classical_invariants(grid_to_front(g)), classical_invariants(grid_to_front(h))
    assert (a.tb, a.rotation) == (b.tb, b.rotation)


@given(grids(min_size=3, max_size=7))
def test_commutation_property(g):
    from hypothesis import assume

    xs, os_ = g.x_positions, g.o_positions
    cols = [c for c in range(g.size - 1) if _commutable(xs, os_, c)]
    assume(cols)
    c = cols[0]
    xs2, os2 = list(xs), list(os_)
    xs2[c], xs2[c + 1] = xs2[c + 1], xs2[c]
    os2[c], os2[c + 1] = os2[c + 1], os2[c]
    a = classical_invariants(grid_to_front(g))
    b = classical_invariants(grid_to_front(GridDiagram(g.size, tuple(xs2), tuple(os2))))
    assert (a.tb, a.rotation) == (b.tb, b.rotation)
