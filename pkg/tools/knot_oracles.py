"""Independent knot-theoretic checks on front words.

Used to confirm the knot type of diagrams in ``data/``; not imported by
the library.
"""

from __future__ import annotations

from fractions import Fraction

from legconc.diagram import CROSSING, FrontWord, _trace, crossing_signs


def crossing_passes(f: FrontWord) -> list[tuple[int, bool]]:
    """Front crossings met along the oriented knot, as (crossing, is_over).

    The strand descending through a crossing (smaller slope) is over.
    """
    strand, sign = f.orientation
    index = {}
    for s, (kind, _) in enumerate(f.events):
        if kind == CROSSING:
            index[s] = len(index)
    out = []
    for s, p, d in _trace(f.events, (1, strand - 1, sign)):
        e = s if d == 1 else s - 1
        if e not in index or not (0 <= e < len(f.events)):
            continue
        k = f.events[e][1] - 1
        # position on the left side of the event
        left_pos = p if d == 1 else (k + 1 if p == k else k if p == k + 1 else p)
        if left_pos in (k, k + 1):
            out.append((index[e], left_pos == k))
    return out


def alexander_value(f: FrontWord, t: Fraction) -> Fraction:
    """Alexander polynomial at ``t`` from the Wirtinger presentation.

    Defined up to a factor of the form +-t^k.
    """
    passes = crossing_passes(f)
    n = len(passes) // 2
    if n == 0:
        return Fraction(1)
    signs = crossing_signs(f)
    arc = 0
    over_arc, under = {}, {}
    # rotate so the walk starts just after an under-pass
    first_under = next(i for i, (_, ov) in enumerate(passes) if not ov)
    passes = passes[first_under + 1:] + passes[: first_under + 1]
    for c, ov in passes:
        if ov:
            over_arc[c] = arc
        else:
            under[c] = (arc, (arc + 1) % n)
            arc += 1
    t = Fraction(t)
    rows = []
    for c in range(n):
        row = [Fraction(0)] * n
        o = over_arc[c]
        i, j = under[c]
        s = t if signs[c] > 0 else 1 / t
        row[o] += 1 - s
        row[i] += s
        row[j] -= 1
        rows.append(row)
    m = [r[:-1] for r in rows[:-1]]
    return _det(m)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] / m[col][col]
                for k in range(col, n):
                    m[r][k] -= factor * m[col][k]
    return det


def matches_alexander(f: FrontWord, coeffs: list[int]) -> bool:
    """Compare with sum coeffs[i] t^i up to +-t^k at several sample points."""
    samples = [Fraction(-1), Fraction(2), Fraction(3), Fraction(5, 2)]
    ratios = []
    for t in samples:
        got = alexander_value(f, t)
        want = sum(Fraction(c) * t**i for i, c in enumerate(coeffs))
        if want == 0 or got == 0:
            if want != got:
                return False
            continue
        ratios.append((t, got / want))
    # every ratio must be +-t^k for one common k
    for k in range(-40, 41):
        if all(abs(r) == abs(t) ** k for t, r in ratios):
            return True
    return False


# ---------------------------------------------------------------------------
# normal rulings


def _normal_switch(c: list[int], k: int) -> bool:
    a, b = c[k], c[k + 1]
    return (a < k and b > k + 1) or (b < a < k) or (k + 1 < b < a)


def ruling_switch_counts(f: FrontWord, crossing_degrees: dict[int, int], modulus: int = 0) -> dict[int, int]:
    """Number of graded normal rulings by switch count.

    ``crossing_degrees`` maps front event index -> degree of that crossing;
    a crossing may switch only if its degree is 0 (mod ``modulus``).
    """
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for e, (kind, lvl) in enumerate(f.events):
        k = lvl - 1
        nxt: dict[tuple, dict[int, int]] = {}

        def put(state, s, n):
            row = nxt.setdefault(state, {})
            row[s] = row.get(s, 0) + n

        for c, counts in states.items():
            c = list(c)
            if kind == "L":
                shift = [x + 2 if x >= k else x for x in c]
                new = shift[:k] + [k + 1, k] + shift[k:]
                for s, n in counts.items():
                    put(tuple(new), s, n)
            elif kind == "R":
                if c[k] != k + 1:
                    continue
                rest = c[:k] + c[k + 2:]
                new = [x - 2 if x > k + 1 else x for x in rest]
                for s, n in counts.items():
                    put(tuple(new), s, n)
            else:
                if c[k] == k + 1:
                    continue
                # strands follow the crossing: swap positions k, k+1
                swap = {k: k + 1, k + 1: k}
                moved = [swap.get(x, x) for x in c]
                moved[k], moved[k + 1] = moved[k + 1], moved[k]
                for s, n in counts.items():
                    put(tuple(moved), s, n)
                deg = crossing_degrees[e]
                graded = (deg % modulus == 0) if modulus else deg == 0
                if graded and _normal_switch(c, k):
                    for s, n in counts.items():
                        put(tuple(c), s + 1, n)
        states = nxt
    return dict(sorted(states.get((), {}).items()))


def chi_star(degrees) -> int:
    out = 0
    for d in degrees:
        out += (-1) ** d if d >= 0 else (-1) ** (d + 1)
    return out


def augmentation_count_from_rulings(f: FrontWord, crossing_degrees: dict[int, int], chord_degrees, modulus: int = 0) -> Fraction:
    """Graded augmentation count over Z/2 predicted by the ruling polynomial.

    #Aug = sum over rulings of 2^((chi* - switches + right cusps) / 2).
    Returned as a Fraction; a non-integer value means the formula's
    hypotheses failed.
    """
    chi = chi_star(chord_degrees)
    cusps = f.count("R")
    total = 0.0
    for s, n in ruling_switch_counts(f, crossing_degrees, modulus).items():
        total += n * 2.0 ** ((chi - s + cusps) / 2)
    return Fraction(total).limit_denominator(1 << 20)
