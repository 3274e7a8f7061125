"""Chekanov-Eliashberg DGA over Z/2 of a resolved front.

Discs are found by sweeping the resolved diagram from left to right.  In
each vertical slice an immersed disc is a stack of sheets, each sheet an
interval between two strands.  Sheets start at left caps, split around
left caps, merge around right caps and end at right caps; the only corners
are at crossings.  At every crossing the left and right quadrants are
positive, the top and bottom quadrants negative.  A disc is a connected
configuration whose sheet graph is a tree and which has exactly one positive
corner.

The search is bounded by actions.  Positive chord actions and face areas are
obtained from a linear program encoding Stokes' theorem
(area of a face = sum of positive corner actions - sum of negative corner
actions) and every disc obeys area = action(+) - sum action(-).
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

import numpy as np
from scipy.optimize import linprog

from .diagram import (
    CAP_LEFT,
    CAP_RIGHT,
    LAG_CROSSING,
    ClassicalInvariants,
    FrontWord,
    LagrangianDiagram,
    classical_invariants,
    maslov_potential,
    resolve_front,
)

Word = tuple[int, ...]

_TOL = 1e-7


class DSquaredNonzero(RuntimeError):
    def __init__(self, generator: str, word: str):
        self.generator = generator
        self.word = word
        super().__init__(f"d^2({generator}) contains {word}")


class NonIntegralPotential(RuntimeError):
    pass


class UnrealisableDiagram(RuntimeError):
    """No positive action/area assignment exists for the resolved diagram."""


@dataclass(frozen=True)
class ReebChord:
    id: str
    degree: int
    crossing_ref: int


# ---------------------------------------------------------------------------
# gradings


def grade_chords(d: LagrangianDiagram, inv: Optional[ClassicalInvariants] = None) -> list[ReebChord]:
    """Degrees from a Maslov potential on the front strands.

    A front crossing has degree mu(upper-left strand) - mu(lower-left
    strand); the loop crossing of a right cusp has degree 1.
    """
    f = d.front
    mu, modulus = maslov_potential(f)
    if inv is not None and modulus != 2 * abs(inv.rotation):
        raise NonIntegralPotential("potential modulus disagrees with the rotation number")
    names = default_chord_names(d)
    out = []
    for c, name in zip(d.crossings, names):
        if c.kind == "cusp":
            deg = 1
        else:
            s, k = c.front_event, c.position
            deg = mu[(s, k)] - mu[(s, k + 1)]
        if modulus:
            deg %= modulus
        out.append(ReebChord(name, deg, c.index))
    return out


def default_chord_names(d: LagrangianDiagram) -> list[str]:
    names = []
    taken = {c.label for c in d.crossings if c.label}
    n = 0
    for c in d.crossings:
        if c.label:
            names.append(c.label)
            continue
        n += 1
        while f"q{n}" in taken:
            n += 1
        names.append(f"q{n}")
    return names


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class ActionData:
    heights: tuple[float, ...]  # per chord
    cell_area: tuple[tuple[float, ...], ...]  # per (slice, gap); inf on the outer face
    face_area: tuple[float, ...]


def face_corners(d: LagrangianDiagram) -> list[Counter]:
    """For each face, chord index -> (#positive - #negative) corners."""
    corners = [Counter() for _ in range(d.face_count)]
    for c in d.crossings:
        q = d.quadrant_faces(c)
        corners[q["left"]][c.index] += 1
        corners[q["right"]][c.index] += 1
        corners[q["top"]][c.index] -= 1
        corners[q["bottom"]][c.index] -= 1
    return corners


def action_data(d: LagrangianDiagram) -> ActionData:
    n = len(d.crossings)
    corners = face_corners(d)
    rows, rhs = [], []
    for fid, cnt in enumerate(corners):
        if fid == d.outer_face:
            continue
        row = np.zeros(n)
        for ci, mult in cnt.items():
            row[ci] = mult
        rows.append(-row)  # area >= 1
        rhs.append(-1.0)
    res = linprog(
        c=np.ones(n),
        A_ub=np.array(rows) if rows else None,
        b_ub=np.array(rhs) if rows else None,
        bounds=[(1.0, None)] * n,
        method="highs",
    )
    if res.status != 0:
        raise UnrealisableDiagram(res.message)
    h = tuple(float(x) for x in res.x)
    face_area = []
    for fid, cnt in enumerate(corners):
        if fid == d.outer_face:
            face_area.append(float("inf"))
        else:
            face_area.append(sum(mult * h[ci] for ci, mult in cnt.items()))
    ncells = Counter(fid for row in d.faces for fid in row)
    cell_area = tuple(tuple(face_area[fid] / ncells[fid] for fid in row) for row in d.faces)
    return ActionData(h, cell_area, tuple(face_area))


# ---------------------------------------------------------------------------
# disc enumeration


@dataclass(frozen=True)
class Disc:
    positive: int
    word: Word
    area: float
    sheets: tuple = field(repr=False, default=())


class _Sheet(NamedTuple):
    top: int
    bottom: int
    comp: int
    hist: int  # lineage fingerprint; equal fingerprints mean identical pasts


def _units(sheets, options):
    """Group interchangeable sheets and enumerate option assignments.

    Two sheets that are whole components with identical lineage can be
    swapped without changing the disc, so their option indices are only
    enumerated as non-decreasing tuples.
    """
    sizes = Counter(sh.comp for sh in sheets)
    groups: dict = {}
    order = []
    for i, sh in enumerate(sheets):
        key = ("twin", sh.hist) if sizes[sh.comp] == 1 else ("solo", i)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(i)
    per_unit = []
    for key in order:
        members = groups[key]
        opts = options[members[0]]
        per_unit.append([(members, combo) for combo in itertools.combinations_with_replacement(range(len(opts)), len(members))])
    n = len(sheets)
    for pick in itertools.product(*per_unit):
        choice = [None] * n
        for members, combo in pick:
            for i, j in zip(members, combo):
                choice[i] = options[i][j]
        yield choice


_INF = float("inf")


def _cells(row, sheets) -> float:
    total = 0.0
    for sh in sheets:
        for g in range(sh[0] + 1, sh[1] + 1):
            total += row[g]
    return total


def _closing_costs(d: LagrangianDiagram, act: ActionData, positive: int) -> list[dict]:
    """Lower bounds on the area plus negative action needed to close a sheet.

    ``out[s][(t, b)]`` bounds what a sheet between strands t < b over slice
    ``s`` still has to cover (in later slices) before all its descendants
    end.  After a merge the continuing sheet is shared by two ancestors,
    so each is charged half; summing over the open sheets of a partial
    disc therefore never exceeds the area still to come.
    """
    n_slices = len(d.events) + 1
    sizes = d.slice_sizes()
    out: list[dict] = [dict() for _ in range(n_slices)]

    def cell(s, t, b):
        return _cells(act.cell_area[s], ((t, b),))

    def cost(s, t, b):
        if s >= n_slices:
            return _INF
        return out[s].get((t, b), _INF)

    for s in range(n_slices - 2, -1, -1):
        kind, k, chord = d.events[s]
        n = sizes[s]
        nxt = s + 1

        def go(t, b, extra=0.0, weight=1.0):
            c = cell(nxt, t, b)
            if c == _INF:
                return _INF
            return weight * (c + cost(nxt, t, b)) + extra

        for t in range(n):
            for b in range(t + 1, n):
                best = _INF
                if kind == LAG_CROSSING:
                    h = act.heights[chord]
                    if t == k and b == k + 1:
                        best = 0.0 if chord == positive else _INF
                    elif t < k and b == k:
                        best = min(go(t, k + 1), go(t, k) + h)
                    elif t < k and b == k + 1:
                        best = go(t, k)
                    elif t == k + 1:
                        best = min(go(k, b), go(k + 1, b) + h)
                    elif t == k:
                        best = go(k + 1, b)
                    else:
                        best = go(t, b)
                elif kind == CAP_LEFT:
                    nt = t if t < k else t + 2
                    nb = b if b < k else b + 2
                    best = go(nt, nb)
                    if t < k <= b:
                        best = min(best, go(nt, k) + go(k + 1, nb))
                else:
                    if t == k and b == k + 1:
                        best = 0.0
                    elif (b == k + 1 and t < k) or (t == k and b > k + 1):
                        best = _INF
                    elif b == k and t < k:
                        best = min((go(t, b2 - 2, weight=0.5) for b2 in range(k + 2, n)), default=_INF)
                    elif t == k + 1:
                        best = min((go(t2, b - 2, weight=0.5) for t2 in range(0, k)), default=_INF)
                    else:
                        nt = t if t < k else t - 2
                        nb = b if b < k else b - 2
                        best = go(nt, nb)
                if best < _INF:
                    out[s][(t, b)] = best
    return out


class _Search:
    """Depth-first sweep producing the discs with a given positive corner."""

    def __init__(self, d: LagrangianDiagram, actions: ActionData, positive: int):
        self.d = d
        self.act = actions
        self.pos = positive
        self.budget = actions.heights[positive] + _TOL
        self.found: dict[str, Disc] = {}
        self._next_comp = 0
        self._close = _closing_costs(d, actions, positive)

    def new_comp(self) -> int:
        self._next_comp += 1
        return self._next_comp

    def run(self) -> list[Disc]:
        self._step(0, (), False, {}, 0.0, [], 0.0)
        return [self.found[k] for k in sorted(self.found)]

    # -- recursion over events -------------------------------------------
    def _step(self, e, sheets, pos_used, mult, negh, record, cells):
        if e == len(self.d.events):
            return
        for out, fates, origins, pos2, neg_add in self._transitions(e, sheets, pos_used):
            new_negh = negh + neg_add
            if new_negh > self.budget:
                continue
            new_mult = self._multiplicities(e + 1, out, mult)
            if new_mult is None:
                continue
            new_area = sum(m * self.act.face_area[f] for f, m in new_mult.items() if m)
            if new_area + new_negh > self.budget:
                continue
            new_cells = cells + _cells(self.act.cell_area[e + 1], out)
            close = self._close[e + 1]
            if new_cells + new_negh + sum(close.get((sh.top, sh.bottom), _INF) for sh in out) > self.budget:
                continue
            rec = record + [(tuple(sheets), tuple(out), tuple(fates), tuple(origins))]
            if _finished_components(sheets, fates, out):
                # a finished component must be the whole disc
                if out or len(in_comps_after_merge(sheets, fates)) != 1:
                    continue
                if pos2:
                    self._accept(e + 1, rec, new_area, new_negh)
                continue
            self._step(e + 1, tuple(out), pos2, new_mult, new_negh, rec, new_cells)

    def _multiplicities(self, s, sheets, mult):
        """Face multiplicities after adding slice ``s``; None if inconsistent.

        An immersed disc covers every face with constant multiplicity, and
        all sheets over a slice are known once the sweep reaches it.
        """
        row = self.d.faces[s]
        cover = [0] * len(row)
        for sh in sheets:
            for g in range(sh.top + 1, sh.bottom + 1):
                cover[g] += 1
        new = dict(mult)
        outer = self.d.outer_face
        for g, f in enumerate(row):
            c = cover[g]
            if f == outer:
                if c:
                    return None
                continue
            seen = new.get(f)
            if seen is None:
                new[f] = c
            elif seen != c:
                return None
        return new

    def _transitions(self, e, sheets, pos_used):
        kind, k, chord = self.d.events[e]
        if kind == LAG_CROSSING:
            return self._crossing(k, chord, sheets, pos_used)
        if kind == CAP_LEFT:
            return self._left_cap(e, k, sheets, pos_used)
        return self._right_cap(k, sheets, pos_used)

    def _crossing(self, k, chord, sheets, pos_used):
        options = []
        for sh in sheets:
            t, b = sh.top, sh.bottom
            if t == k and b == k + 1:
                if chord != self.pos or pos_used:
                    return
                options.append([("end_pos", None, None)])
            elif t < k and b == k:
                options.append([("cont", (t, k + 1), None), ("cont", (t, k), ("bottom", chord))])
            elif t < k and b == k + 1:
                options.append([("cont", (t, k), None)])
            elif t == k + 1:
                options.append([("cont", (k, b), None), ("cont", (k + 1, b), ("top", chord))])
            elif t == k:
                options.append([("cont", (k + 1, b), None)])
            else:
                options.append([("cont", (t, b), None)])
        starts = [False]
        if chord == self.pos and not pos_used:
            starts.append(True)
        h = self.act.heights[chord]
        for choice in _units(sheets, options):
            n_end_pos = sum(1 for c in choice if c[0] == "end_pos")
            if n_end_pos > 1:
                continue
            out, fates, origins = [], [], []
            neg = 0.0
            for i, (sh, (what, iv, corner)) in enumerate(zip(sheets, choice)):
                if what == "end_pos":
                    fates.append(("end_pos",))
                    continue
                fates.append(("cont", len(out), corner))
                origins.append(("cont", i))
                out.append(_Sheet(iv[0], iv[1], sh.comp, hash((sh.hist, iv, corner))))
                if corner:
                    neg += h
            for start in starts:
                if n_end_pos + start > 1:
                    continue
                if start:
                    yield (
                        out + [_Sheet(k, k + 1, self.new_comp(), hash(("pos", chord)))],
                        fates,
                        origins + [("start_pos",)],
                        True,
                        neg,
                    )
                else:
                    yield out, fates, origins, pos_used or bool(n_end_pos), neg

    def _left_cap(self, e, k, sheets, pos_used):
        options = []
        for sh in sheets:
            t, b = sh.top, sh.bottom
            nt = t if t < k else t + 2
            nb = b if b < k else b + 2
            if t < k <= b:
                options.append([("cont", (nt, nb)), ("split", (nt, k), (k + 1, nb))])
            else:
                options.append([("cont", (nt, nb))])
        cap_area = self.act.face_area[self.d.faces[e + 1][k + 1]]
        max_new = int(self.budget // cap_area)
        born = hash(("cap", e))
        for choice in _units(sheets, options):
            out, fates, origins = [], [], []
            for i, (sh, opt) in enumerate(zip(sheets, choice)):
                if opt[0] == "cont":
                    fates.append(("cont", len(out), None))
                    origins.append(("cont", i))
                    out.append(_Sheet(*opt[1], sh.comp, hash((sh.hist, opt[1]))))
                else:
                    fates.append(("split", len(out), len(out) + 1))
                    origins.append(("split_upper", i, len(out) + 1))
                    origins.append(("split_lower", i, len(out)))
                    out.append(_Sheet(*opt[1], sh.comp, hash((sh.hist, "u"))))
                    out.append(_Sheet(*opt[2], sh.comp, hash((sh.hist, "l"))))
            for n_new in range(max_new + 1):
                extra = [_Sheet(k, k + 1, self.new_comp(), born) for _ in range(n_new)]
                yield out + extra, fates, origins + [("start_cap",)] * n_new, pos_used, 0.0

    def _right_cap(self, k, sheets, pos_used):
        ups = [i for i, sh in enumerate(sheets) if sh.bottom == k and sh.top < k]
        lows = [i for i, sh in enumerate(sheets) if sh.top == k + 1 and sh.bottom > k + 1]
        if len(ups) != len(lows):
            return
        for sh in sheets:
            if (sh.bottom == k + 1 and sh.top < k) or (sh.top == k and sh.bottom > k + 1):
                return
        sizes = Counter(sh.comp for sh in sheets)
        twins_before = {}
        last_twin = {}
        for u in ups:
            sh = sheets[u]
            if sizes[sh.comp] == 1:
                if sh.hist in last_twin:
                    twins_before[u] = last_twin[sh.hist]
                last_twin[sh.hist] = u
        for perm in itertools.permutations(lows):
            pairing = dict(zip(ups, perm))
            if any(pairing[u] < pairing[v] for u, v in twins_before.items()):
                continue
            relabel = {}

            def root(c):
                while c in relabel:
                    c = relabel[c]
                return c

            ok = True
            for u, l in pairing.items():
                ru, rl = root(sheets[u].comp), root(sheets[l].comp)
                if ru == rl:
                    ok = False  # merging a component with itself encloses a hole
                    break
                relabel[rl] = ru
            if not ok:
                continue
            out, fates, origins = [], [], []
            partner = {l: u for u, l in pairing.items()}
            out_of = {}
            for i, sh in enumerate(sheets):
                t, b = sh.top, sh.bottom
                if t == k and b == k + 1:
                    fates.append(("end_cap",))
                elif i in pairing:
                    l = pairing[i]
                    out_of[i] = len(out)
                    fates.append(("merge_upper", len(out), l))
                    origins.append(("merge", i, l))
                    out.append(_Sheet(t, sheets[l].bottom - 2, root(sh.comp), hash((sh.hist, sheets[l].hist))))
                elif i in partner:
                    fates.append(None)  # filled below
                else:
                    nt = t if t < k else t - 2
                    nb = b if b < k else b - 2
                    fates.append(("cont", len(out), None))
                    origins.append(("cont", i))
                    out.append(_Sheet(nt, nb, root(sh.comp), hash((sh.hist, nt, nb))))
            for l, u in partner.items():
                fates[l] = ("merge_lower", out_of[u], u)
            yield out, fates, origins, pos_used, 0.0

    # -- completed discs --------------------------------------------------
    def _accept(self, end_slice, record, area, negh):
        word = _boundary_word(record)
        if abs(area + negh - self.act.heights[self.pos]) > 1e-6 * max(1.0, self.act.heights[self.pos]):
            raise UnrealisableDiagram(
                f"Stokes identity fails for a disc at chord {self.pos}: area {area}, "
                f"actions {self.act.heights[self.pos]} - {negh}"
            )
        key = _canonical(record)
        if key not in self.found:
            self.found[key] = Disc(self.pos, word, area)


def in_comps_after_merge(sheets, fates):
    comps = {sh.comp for sh in sheets}
    # merges already relabelled the outgoing sheets; count the incoming components joined by them
    parent = {c: c for c in comps}

    def find(c):
        while parent[c] != c:
            c = parent[c]
        return c

    for i, fate in enumerate(fates):
        if fate and fate[0] == "merge_upper":
            a, b = find(sheets[i].comp), find(sheets[fate[2]].comp)
            parent[b] = a
    return {find(c) for c in comps}


def _finished_components(sheets, fates, out) -> bool:
    if not sheets:
        return False
    groups = in_comps_after_merge(sheets, fates)
    out_comps = {sh.comp for sh in out}
    parent_of = {}
    for g in groups:
        parent_of[g] = g
    # an incoming component group survives if any outgoing sheet carries its root label
    return any(g not in out_comps for g in groups)


def _boundary_word(record) -> Word:
    """Negative corners read counterclockwise from the positive corner.

    The boundary is walked with the disc on the left: rightwards along the
    bottom edges of sheets, leftwards along their top edges.
    """
    # record[e] = (in_sheets at slice s0+e, out_sheets, fates, origins); slices are relative
    n = len(record)
    start = None
    for e, (_, _, fates, origins) in enumerate(record):
        for i, f in enumerate(fates):
            if f[0] == "end_pos":
                start = (e, i, "top")  # walk leftwards along the top of the ending sheet
        for j, o in enumerate(origins):
            if o[0] == "start_pos":
                start = (e + 1, j, "bottom")
    assert start is not None
    # slices are indexed relative to the record: slice e is the input of record[e]
    letters = []
    state = start
    steps = 0
    limit = 8 * sum(len(r[0]) + len(r[1]) for r in record) + 16
    while True:
        steps += 1
        if steps > limit:
            raise RuntimeError("boundary walk does not close")
        s, i, side = state
        if side == "bottom":
            fate = record[s][2][i]
            kind = fate[0]
            if kind == "cont":
                if fate[2] and fate[2][0] == "bottom":
                    letters.append(fate[2][1])
                state = (s + 1, fate[1], "bottom")
            elif kind == "end_pos":
                break
            elif kind == "end_cap":
                state = (s, i, "top")
            elif kind == "split":
                state = (s + 1, fate[2], "bottom")
            elif kind == "merge_upper":
                state = (s, fate[2], "top")
            elif kind == "merge_lower":
                state = (s + 1, fate[1], "bottom")
            else:
                raise AssertionError(kind)
        else:
            origin = record[s - 1][3][i]
            kind = origin[0]
            if kind == "cont":
                j = origin[1]
                fate = record[s - 1][2][j]
                if fate[2] and fate[2][0] == "top":
                    letters.append(fate[2][1])
                state = (s - 1, j, "top")
            elif kind == "start_cap":
                state = (s, i, "bottom")
            elif kind == "start_pos":
                break
            elif kind == "split_upper":
                state = (s - 1, origin[1], "top")
            elif kind == "split_lower":
                state = (s, origin[2], "bottom")
            elif kind == "merge":
                state = (s - 1, origin[1], "top")
            else:
                raise AssertionError(kind)
    return tuple(letters)


def _canonical(record) -> str:
    """Isomorphism-invariant encoding of the sheet tree of a disc."""
    nodes = {}
    adj: dict = {}

    def node(s, i):
        return (s, i)

    for e, (ins, outs, fates, origins) in enumerate(record):
        for i, sh in enumerate(ins):
            nodes[(e, i)] = (e, sh.top, sh.bottom)
        for j, sh in enumerate(outs):
            nodes[(e + 1, j)] = (e + 1, sh.top, sh.bottom)
        for j, o in enumerate(origins):
            if o[0] in ("cont", "split_upper", "split_lower"):
                corner = None
                if o[0] == "cont":
                    corner = fates[o[1]][2]
                adj.setdefault((e, o[1]), []).append(((e + 1, j), ("r", corner)))
                adj.setdefault((e + 1, j), []).append(((e, o[1]), ("l", corner)))
            elif o[0] == "merge":
                for src in (o[1], o[2]):
                    adj.setdefault((e, src), []).append(((e + 1, j), ("r", "m")))
                    adj.setdefault((e + 1, j), []).append(((e, src), ("l", "m")))
    # root: the sheet carrying the positive corner
    root = None
    for e, (ins, outs, fates, origins) in enumerate(record):
        for i, f in enumerate(fates):
            if f[0] == "end_pos":
                root = (e, i)
        for j, o in enumerate(origins):
            if o[0] == "start_pos":
                root = (e + 1, j)

    def enc(v, parent):
        kids = sorted(enc(w, v) + repr(lab) for w, lab in adj.get(v, []) if w != parent)
        return repr(nodes[v]) + "(" + ",".join(kids) + ")"

    return enc(root, None)


def enumerate_discs(d: LagrangianDiagram, positive_corner, actions: Optional[ActionData] = None) -> list[tuple[Word, int]]:
    """Admissible discs with the given positive corner, as (word, count mod 2).

    ``positive_corner`` is a crossing index or a ReebChord.  Words are tuples
    of crossing indices.
    """
    idx = positive_corner.crossing_ref if isinstance(positive_corner, ReebChord) else int(positive_corner)
    actions = actions or action_data(d)
    discs = _Search(d, actions, idx).run()
    counts = Counter(disc.word for disc in discs)
    return sorted((w, c % 2) for w, c in counts.items())


def enumerate_disc_objects(d: LagrangianDiagram, positive: int, actions: Optional[ActionData] = None) -> list[Disc]:
    return _Search(d, actions or action_data(d), positive).run()


# ---------------------------------------------------------------------------
# DGA


@dataclass(frozen=True)
class DGAPresentation:
    generators: tuple[ReebChord, ...]
    differential: tuple[frozenset, ...]  # per generator: set of words (Z/2 sums)
    grading_modulus: int = 0

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.id == name:
                return i
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [g.id for g in self.generators]

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def word_degree(self, w: Word) -> int:
        deg = sum(self.generators[i].degree for i in w)
        return deg % self.grading_modulus if self.grading_modulus else deg

    def reduce(self, deg: int) -> int:
        return deg % self.grading_modulus if self.grading_modulus else deg

    def d(self, i: int) -> frozenset:
        return self.differential[i]

    def d_word(self, w: Word) -> set:
        """Leibniz extension of the differential to a word, over Z/2."""
        out: set = set()
        for j, x in enumerate(w):
            left, right = w[:j], w[j + 1:]
            for v in self.differential[x]:
                out ^= {left + v + right}
        return out

    def d_squared(self, i: int) -> set:
        out: set = set()
        for w in self.differential[i]:
            out ^= self.d_word(w)
        return out

    def relabelled(self, perm: list[int]) -> "DGAPresentation":
        """Reorder generators: new generator j is old generator perm[j]."""
        inv = {old: new for new, old in enumerate(perm)}
        gens = tuple(self.generators[old] for old in perm)
        diff = tuple(frozenset(tuple(inv[x] for x in w) for w in self.differential[old]) for old in perm)
        return DGAPresentation(gens, diff, self.grading_modulus)

    def format_word(self, w: Word) -> str:
        return " ".join(self.generators[i].id for i in w) if w else "1"


def build_dga(d: LagrangianDiagram, inv: Optional[ClassicalInvariants] = None, check: bool = True) -> DGAPresentation:
    inv = inv or classical_invariants(d.front)
    chords = grade_chords(d, inv)
    actions = action_data(d)
    diff = []
    for c in chords:
        terms = enumerate_discs(d, c.crossing_ref, actions)
        diff.append(frozenset(w for w, n in terms if n))
    dga = DGAPresentation(tuple(chords), tuple(diff), 2 * abs(inv.rotation))
    if check:
        check_dga(dga)
    return dga


def dga_from_front(f: FrontWord) -> DGAPresentation:
    return build_dga(resolve_front(f), classical_invariants(f))


def check_dga(dga: DGAPresentation) -> None:
    for i, g in enumerate(dga.generators):
        for w in dga.differential[i]:
            if dga.word_degree(w) != dga.reduce(g.degree - 1):
                raise ValueError(f"degree law fails: d({g.id}) contains {dga.format_word(w)}")
        sq = dga.d_squared(i)
        if sq:
            w = min(sq)
            raise DSquaredNonzero(g.id, dga.format_word(w))


# ---------------------------------------------------------------------------
# text export


def export_dga(dga: DGAPresentation) -> str:
    lines = [f"gen {g.id} {g.degree}" for g in dga.generators]
    if dga.grading_modulus:
        lines.insert(0, f"modulus {dga.grading_modulus}")
    for i, g in enumerate(dga.generators):
        words = sorted(dga.format_word(w) for w in dga.differential[i])
        lines.append(f"d {g.id} = " + (" + ".join(words) if words else "0"))
    return "\n".join(lines) + "\n"


def parse_dga(text: str) -> DGAPresentation:
    gens, modulus, raw = [], 0, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "modulus":
            modulus = int(tok[1])
        elif tok[0] == "gen":
            gens.append(ReebChord(tok[1], int(tok[2]), len(gens)))
        elif tok[0] == "d":
            m = re.fullmatch(r"d\s+(\S+)\s*=\s*(.*)", line)
            if not m:
                raise ValueError(f"line {lineno}: cannot parse {line!r}")
            raw[m.group(1)] = m.group(2)
        else:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
    index = {g.id: i for i, g in enumerate(gens)}
    diff = []
    for g in gens:
        rhs = raw.get(g.id, "0").strip()
        words = set()
        if rhs != "0":
            for term in rhs.split("+"):
                term = term.strip()
                w = () if term == "1" else tuple(index[t] for t in term.split())
                words ^= {w}
        diff.append(frozenset(words))
    return DGAPresentation(tuple(gens), tuple(diff), modulus)
