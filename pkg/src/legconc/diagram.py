"""Legendrian knot encodings: grid diagrams, front words and their resolutions.

A front is stored as a word of events read left to right.  Strand positions
are counted from the top, starting at 1 in the text formats and at 0
internally.  ``L k`` creates a left cusp whose two new strands occupy
positions k and k+1, ``R k`` joins strands k and k+1 in a right cusp and
``X k`` crosses strands k and k+1.

Grid to front convention: the grid is rotated 45 degrees clockwise, so the
NE and SW corners of the grid curve become right and left cusps and the NW
and SE corners are smoothed.  Front x-coordinate is ``column + row`` and
height is ``row - column`` (rows counted from the bottom).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

LEFT_CUSP = "L"
RIGHT_CUSP = "R"
CROSSING = "X"
EVENT_KINDS = (LEFT_CUSP, RIGHT_CUSP, CROSSING)


class DiagramError(ValueError):
    """Base class for diagram parse and validation errors."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DiagramSyntaxError(DiagramError):
    pass


class NotAPermutation(DiagramError):
    pass


class DegenerateColumn(DiagramError):
    pass


class MultiComponent(DiagramError):
    pass


class InvalidFront(DiagramError):
    pass


# ---------------------------------------------------------------------------
# Grid diagrams


@dataclass(frozen=True)
class GridDiagram:
    size: int
    x_positions: tuple[int, ...]
    o_positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x_positions", tuple(self.x_positions))
        object.__setattr__(self, "o_positions", tuple(self.o_positions))
        validate_grid(self)

    def components(self) -> list[list[int]]:
        """Cycles of the column permutation (0-based columns)."""
        return grid_components(self.size, self.x_positions, self.o_positions)


def grid_components(n, xs, os_) -> list[list[int]]:
    # column i: vertical segment from X to O; row of O leads to the column whose X sits there
    col_of_x = {row: col for col, row in enumerate(xs)}
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = []
        col = start
        while not seen[col]:
            seen[col] = True
            cycle.append(col)
            col = col_of_x[os_[col]]
        cycles.append(cycle)
    return cycles


def validate_grid(g: GridDiagram, lines: Optional[dict] = None) -> None:
    lines = lines or {}
    n = g.size
    if n < 1:
        raise DiagramSyntaxError("grid size must be positive", lines.get("n"))
    for name, perm in (("X", g.x_positions), ("O", g.o_positions)):
        if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
            raise NotAPermutation(f"{name} positions {list(perm)} are not a permutation of 1..{n}", lines.get(name))
    for col, (x, o) in enumerate(zip(g.x_positions, g.o_positions), start=1):
        if x == o:
            raise DegenerateColumn(f"X and O coincide in column {col}", lines.get("X"))
    cycles = grid_components(n, g.x_positions, g.o_positions)
    if len(cycles) != 1:
        raise MultiComponent(f"grid describes a link with {len(cycles)} components", lines.get("X"))


_GRID_LINE = re.compile(r"^\s*(n\s*=\s*\d+|[XO]\s*:.*)\s*$")


def parse_grid(text: str) -> GridDiagram:
    """Parse ``n=<int>``, ``X: ...`` and ``O: ...`` lines (or ``;``-separated)."""
    fields: dict[str, object] = {}
    lines: dict[str, int] = {}
    chunks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for part in line.split(";"):
            if part.strip():
                chunks.append((lineno, part.strip()))
    for lineno, chunk in chunks:
        if chunk.startswith("n"):
            m = re.fullmatch(r"n\s*=\s*(\d+)", chunk)
            if not m:
                raise DiagramSyntaxError(f"cannot parse size {chunk!r}", lineno)
            key, value = "n", int(m.group(1))
        elif chunk[0] in "XO":
            m = re.fullmatch(r"([XO])\s*:\s*([\d\s]*)", chunk)
            if not m:
                raise DiagramSyntaxError(f"cannot parse marker list {chunk!r}", lineno)
            key, value = m.group(1), tuple(int(t) for t in m.group(2).split())
        else:
            raise DiagramSyntaxError(f"unexpected content {chunk!r}", lineno)
        if key in fields:
            raise DiagramSyntaxError(f"duplicate {key} entry", lineno)
        fields[key] = value
        lines[key] = lineno
    for key in ("n", "X", "O"):
        if key not in fields:
            raise DiagramSyntaxError(f"missing {key} entry")
    n = fields["n"]
    g = object.__new__(GridDiagram)
    object.__setattr__(g, "size", n)
    object.__setattr__(g, "x_positions", fields["X"])
    object.__setattr__(g, "o_positions", fields["O"])
    validate_grid(g, lines)
    return g


def serialize_grid(g: GridDiagram) -> str:
    return (
        f"n={g.size}\n"
        f"X: {' '.join(map(str, g.x_positions))}\n"
        f"O: {' '.join(map(str, g.o_positions))}\n"
    )


# ---------------------------------------------------------------------------
# Fronts


@dataclass(frozen=True)
class FrontWord:
    """A generic front as a word of cusp and crossing events.

    ``labels`` optionally names the Reeb chord of each crossing and right
    cusp; ``augmentations`` holds named augmentations declared alongside the
    diagram as ``(name, generators sent to 1)``.
    """

    events: tuple[tuple[str, int], ...]
    orientation: tuple[int, int] = (1, 1)
    labels: tuple[Optional[str], ...] = ()
    augmentations: tuple[tuple[str, tuple[str, ...]], ...] = ()
    name: Optional[str] = None

    def __post_init__(self):
        events = tuple((str(k), int(lvl)) for k, lvl in self.events)
        object.__setattr__(self, "events", events)
        labels = tuple(self.labels) if self.labels else (None,) * len(events)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "augmentations", tuple((n, tuple(g)) for n, g in self.augmentations))
        validate_front(self)

    @property
    def strand_count_profile(self) -> list[int]:
        profile = [0]
        for kind, _ in self.events:
            profile.append(profile[-1] + {LEFT_CUSP: 2, RIGHT_CUSP: -2, CROSSING: 0}[kind])
        return profile

    def count(self, kind: str) -> int:
        return sum(1 for k, _ in self.events if k == kind)

    def reversed_orientation(self) -> "FrontWord":
        strand, sign = self.orientation
        return FrontWord(self.events, (strand, -sign), self.labels, self.augmentations, self.name)

    def mirrored(self) -> "FrontWord":
        """Reflect the front in the horizontal axis (z -> -z)."""
        out = []
        m = 0
        for kind, lvl in self.events:
            if kind == LEFT_CUSP:
                out.append((kind, m + 2 - lvl))
                m += 2
            elif kind == RIGHT_CUSP:
                out.append((kind, m - lvl))
                m -= 2
            else:
                out.append((kind, m - lvl))
        strand, sign = self.orientation
        return FrontWord(tuple(out), (3 - strand, sign), self.labels, self.augmentations, self.name)


def validate_front(f: FrontWord, lines: Optional[list] = None) -> None:
    def where(i):
        return lines[i] if lines else None

    if not f.events:
        raise InvalidFront("empty front")
    if len(f.labels) != len(f.events):
        raise InvalidFront("label list does not match the event list")
    m = 0
    for i, (kind, lvl) in enumerate(f.events):
        if kind not in EVENT_KINDS:
            raise InvalidFront(f"unknown event kind {kind!r}", where(i))
        if kind == LEFT_CUSP:
            if not 1 <= lvl <= m + 1:
                raise InvalidFront(f"left cusp level {lvl} outside 1..{m + 1}", where(i))
            m += 2
        else:
            if not 1 <= lvl <= m - 1:
                raise InvalidFront(f"{kind} event level {lvl} outside 1..{m - 1}", where(i))
            if kind == RIGHT_CUSP:
                m -= 2
    if m != 0:
        raise InvalidFront(f"strand count ends at {m}, not 0")
    strand, sign = f.orientation
    if strand not in (1, 2) or sign not in (1, -1):
        raise InvalidFront("orientation must name strand 1 or 2 after the first cusp and a sign")
    names = [lab for lab in f.labels if lab is not None]
    if len(names) != len(set(names)):
        raise InvalidFront("duplicate chord labels")
    for i, ((kind, _), lab) in enumerate(zip(f.events, f.labels)):
        if lab is not None and kind == LEFT_CUSP:
            raise InvalidFront("left cusps carry no Reeb chord and cannot be labelled", where(i))
    trace = _trace(f.events)
    if len(trace) != sum(f.strand_count_profile):
        raise MultiComponent("front has more than one component")


def _slice_sizes(events) -> list[int]:
    sizes = [0]
    for kind, _ in events:
        sizes.append(sizes[-1] + {LEFT_CUSP: 2, RIGHT_CUSP: -2, CROSSING: 0}[kind])
    return sizes


def _step_right(events, sizes, s: int, p: int) -> tuple[int, int, int]:
    """Follow strand (slice s, position p) rightwards through event s.

    Returns (slice, position, direction) of the next strand piece.
    """
    kind, lvl = events[s]
    k = lvl - 1
    if kind == CROSSING:
        q = k + 1 if p == k else k if p == k + 1 else p
        return s + 1, q, 1
    if kind == LEFT_CUSP:
        return s + 1, p if p < k else p + 2, 1
    if p == k:
        return s, k + 1, -1
    if p == k + 1:
        return s, k, -1
    return s + 1, p if p < k else p - 2, 1


def _step_left(events, sizes, s: int, p: int) -> tuple[int, int, int]:
    """Follow strand (slice s, position p) leftwards through event s-1."""
    kind, lvl = events[s - 1]
    k = lvl - 1
    if kind == CROSSING:
        q = k + 1 if p == k else k if p == k + 1 else p
        return s - 1, q, -1
    if kind == RIGHT_CUSP:
        return s - 1, p if p < k else p + 2, -1
    if p == k:
        return s, k + 1, 1
    if p == k + 1:
        return s, k, 1
    return s - 1, p if p < k else p - 2, -1


def _trace(events, start=(1, 0, 1)) -> list[tuple[int, int, int]]:
    """Walk the component through ``start``; entries are (slice, pos, direction)."""
    sizes = _slice_sizes(events)
    out = []
    s, p, d = start
    while True:
        out.append((s, p, d))
        if d == 1:
            s, p, d = _step_right(events, sizes, s, p)
        else:
            s, p, d = _step_left(events, sizes, s, p)
        if (s, p, d) == start:
            return out
        if len(out) > sum(sizes) + 1:
            raise InvalidFront("strand trace does not close up")


_FRONT_EVENT = re.compile(r"^([LRX])\s+(\d+)(?:\s+(\S+))?$")


def parse_front(text: str) -> FrontWord:
    """Parse a front file.

    Lines are ``L <level>``, ``R <level> [chord]``, ``X <level> [chord]``,
    ``orient <strand> <+|->``, ``aug <name> <chord> ...`` and ``name <id>``.
    ``#`` starts a comment.
    """
    events, labels, lines, augs = [], [], [], []
    orientation = (1, 1)
    name = None
    seen_orient = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _FRONT_EVENT.match(line)
        if m:
            events.append((m.group(1), int(m.group(2))))
            labels.append(m.group(3))
            lines.append(lineno)
            continue
        tokens = line.split()
        if tokens[0] == "orient":
            if len(tokens) != 3 or not tokens[1].isdigit() or tokens[2] not in "+-" or seen_orient:
                raise DiagramSyntaxError(f"bad orientation line {line!r}", lineno)
            orientation = (int(tokens[1]), 1 if tokens[2] == "+" else -1)
            seen_orient = True
        elif tokens[0] == "aug" and len(tokens) >= 2:
            augs.append((tokens[1], tuple(tokens[2:])))
        elif tokens[0] == "name" and len(tokens) == 2:
            name = tokens[1]
        else:
            raise DiagramSyntaxError(f"cannot parse {line!r}", lineno)
    if not events:
        raise DiagramSyntaxError("no events in front file")
    f = object.__new__(FrontWord)
    object.__setattr__(f, "events", tuple(events))
    object.__setattr__(f, "orientation", orientation)
    object.__setattr__(f, "labels", tuple(labels))
    object.__setattr__(f, "augmentations", tuple(augs))
    object.__setattr__(f, "name", name)
    validate_front(f, lines)
    return f


def serialize_front(f: FrontWord) -> str:
    out = []
    if f.name:
        out.append(f"name {f.name}")
    for (kind, lvl), lab in zip(f.events, f.labels):
        out.append(f"{kind} {lvl}" + (f" {lab}" if lab else ""))
    strand, sign = f.orientation
    out.append(f"orient {strand} {'+' if sign > 0 else '-'}")
    for aug_name, gens in f.augmentations:
        out.append(" ".join(["aug", aug_name, *gens]))
    return "\n".join(out) + "\n"


def load_diagram(text: str) -> FrontWord:
    """Parse either file format; grids are converted to fronts."""
    body = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln]
    if body and (body[0].startswith("n=") or body[0].startswith("n ") or body[0] == "n"):
        return grid_to_front(parse_grid(text))
    return parse_front(text)


# ---------------------------------------------------------------------------
# Grid -> front


def grid_to_front(g: GridDiagram) -> FrontWord:
    n = g.size
    xs, os_ = g.x_positions, g.o_positions
    # corner points (col, row), 1-based, rows counted from the bottom
    row_x = {r: c for c, r in enumerate(xs, start=1)}
    row_o = {r: c for c, r in enumerate(os_, start=1)}
    events = []  # (x', z', kind)
    for c in range(1, n + 1):
        for r in (xs[c - 1], os_[c - 1]):
            other_r = os_[c - 1] if r == xs[c - 1] else xs[c - 1]
            other_c = row_o[r] if row_x[r] == c else row_x[r]
            vert_down = other_r < r
            horiz_left = other_c < c
            if vert_down and horiz_left:
                events.append((c + r, r - c, RIGHT_CUSP))  # NE corner
            elif not vert_down and not horiz_left:
                events.append((c + r, r - c, LEFT_CUSP))  # SW corner
    for c in range(1, n + 1):
        lo, hi = sorted((xs[c - 1], os_[c - 1]))
        for r in range(lo + 1, hi):
            a, b = sorted((row_x[r], row_o[r]))
            if a < c < b:
                events.append((c + r, r - c, CROSSING))

    # simultaneous events are processed top to bottom; a strand counts as
    # "above" if it is alive just to the right of x
    segs = _grid_segments(g)
    word = []
    ordered = sorted(events, key=lambda e: (e[0], -e[1]))
    for x, z, kind in ordered:
        above = sum(1 for s in segs if s.x0 <= x < s.x1 and s.height(x) > z)
        word.append((kind, above + 1))
    # grid orientation: vertical segments run from X to O.  The first event is
    # a SW corner whose upper front branch is the column segment.
    x, z, _ = ordered[0]
    c, r = (x - z) // 2, (x + z) // 2
    sign = 1 if xs[c - 1] == r else -1
    return FrontWord(tuple(word), (1, sign))


@dataclass
class _Seg:
    x0: int
    z0: int
    x1: int
    slope: int

    def height(self, x):
        return self.z0 + self.slope * (x - self.x0)


def _grid_segments(g: GridDiagram) -> list[_Seg]:
    """Rotated grid segments as front line pieces.

    Vertical grid segments have slope +1 and horizontal ones slope -1 in
    the (column+row, row-column) plane.
    """
    segs = []
    for c in range(1, g.size + 1):
        lo, hi = sorted((g.x_positions[c - 1], g.o_positions[c - 1]))
        segs.append(_Seg(c + lo, lo - c, c + hi, 1))
    row_x = {r: c for c, r in enumerate(g.x_positions, start=1)}
    row_o = {r: c for c, r in enumerate(g.o_positions, start=1)}
    for r in range(1, g.size + 1):
        a, b = sorted((row_x[r], row_o[r]))
        segs.append(_Seg(a + r, r - a, b + r, -1))
    return segs


# ---------------------------------------------------------------------------
# Orientation data, classical invariants


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rotation: int
    component_count: int = 1
    writhe: int = 0
    right_cusps: int = 0


@dataclass(frozen=True)
class _Traversal:
    direction: dict  # (slice, pos) -> +1 rightwards / -1 leftwards
    potential: dict  # (slice, pos) -> Maslov potential (integer lift)
    up_cusps: int
    down_cusps: int


def _traverse(f: FrontWord) -> _Traversal:
    strand, sign = f.orientation
    trace = _trace(f.events, (1, strand - 1, sign))
    direction, potential = {}, {}
    mu = 0
    up = down = 0
    for i, (s, p, d) in enumerate(trace):
        direction[(s, p)] = d
        potential[(s, p)] = mu
        s2, p2, d2 = trace[(i + 1) % len(trace)]
        if d2 != d:
            # cusp: moving to a smaller position means moving upwards
            if p2 < p:
                up += 1
                mu += 1
            else:
                down += 1
                mu -= 1
    return _Traversal(direction, potential, up, down)


def crossing_signs(f: FrontWord) -> list[int]:
    """Sign of each front crossing, in event order."""
    tr = _traverse(f)
    out = []
    for s, (kind, lvl) in enumerate(f.events):
        if kind == CROSSING:
            same = tr.direction[(s, lvl - 1)] == tr.direction[(s, lvl)]
            out.append(1 if same else -1)
    return out


def classical_invariants(f: FrontWord) -> ClassicalInvariants:
    tr = _traverse(f)
    writhe = sum(crossing_signs(f))
    rc = f.count(RIGHT_CUSP)
    if (tr.down_cusps - tr.up_cusps) % 2:
        raise InvalidFront("odd cusp imbalance")
    return ClassicalInvariants(
        tb=writhe - rc,
        rotation=(tr.down_cusps - tr.up_cusps) // 2,
        component_count=1,
        writhe=writhe,
        right_cusps=rc,
    )


def maslov_potential(f: FrontWord) -> tuple[dict, int]:
    """Maslov potential on strand pieces and its modulus (0 for Z-valued).

    The upper branch of every cusp carries potential one more than the
    lower branch.
    """
    tr = _traverse(f)
    modulus = abs(tr.down_cusps - tr.up_cusps)
    if modulus:
        return {k: v % modulus for k, v in tr.potential.items()}, modulus
    return dict(tr.potential), 0


# ---------------------------------------------------------------------------
# Lagrangian resolution

CAP_LEFT = "l"
CAP_RIGHT = "r"
LAG_CROSSING = "x"


@dataclass(frozen=True)
class Crossing:
    index: int
    position: int  # 0-based upper strand position at the crossing
    lag_event: int
    front_event: int
    kind: str  # "crossing" or "cusp"
    sign: int
    label: Optional[str] = None


@dataclass(frozen=True)
class LagrangianDiagram:
    """Resolved diagram: the front with each right cusp replaced by a loop.

    ``events`` is a word in caps and crossings, ``(kind, position, chord)``
    with 0-based positions.  A right cusp contributes a crossing followed by
    a right cap at the same position.  ``faces`` maps each (slice, gap) cell
    to a face id; gap g lies between strands g-1 and g.
    """

    events: tuple[tuple[str, int, int], ...]
    crossings: tuple[Crossing, ...]
    faces: tuple[tuple[int, ...], ...]
    outer_face: int
    face_count: int
    arc_count: int
    front: FrontWord = field(repr=False, compare=False, default=None)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def slice_sizes(self) -> list[int]:
        return [len(row) - 1 for row in self.faces]

    def quadrant_faces(self, c: Crossing) -> dict[str, int]:
        s, k = c.lag_event, c.position
        return {
            "left": self.faces[s][k + 1],
            "right": self.faces[s + 1][k + 1],
            "top": self.faces[s][k],
            "bottom": self.faces[s][k + 2],
        }

    def euler_characteristic(self) -> int:
        return len(self.crossings) - self.arc_count + self.face_count


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def resolve_front(f: FrontWord) -> LagrangianDiagram:
    signs = iter(crossing_signs(f))
    lag: list[tuple[str, int, int]] = []
    crossings: list[Crossing] = []
    for i, ((kind, lvl), label) in enumerate(zip(f.events, f.labels)):
        k = lvl - 1
        if kind == LEFT_CUSP:
            lag.append((CAP_LEFT, k, -1))
        elif kind == CROSSING:
            crossings.append(Crossing(len(crossings), k, len(lag), i, "crossing", next(signs), label))
            lag.append((LAG_CROSSING, k, crossings[-1].index))
        else:
            # the loop crossing of a right cusp joins oppositely oriented strands
            crossings.append(Crossing(len(crossings), k, len(lag), i, "cusp", -1, label))
            lag.append((LAG_CROSSING, k, crossings[-1].index))
            lag.append((CAP_RIGHT, k, -1))

    sizes = [0]
    for kind, k, _ in lag:
        sizes.append(sizes[-1] + {CAP_LEFT: 2, CAP_RIGHT: -2, LAG_CROSSING: 0}[kind])

    uf = _UnionFind()
    for s, m in enumerate(sizes):
        for g in range(m + 1):
            uf.add((s, g))
    for s, (kind, k, _) in enumerate(lag):
        m = sizes[s]
        for g in range(m + 1):
            if kind == LAG_CROSSING:
                if g != k + 1:
                    uf.union((s, g), (s + 1, g))
            elif kind == CAP_LEFT:
                if g < k:
                    uf.union((s, g), (s + 1, g))
                elif g == k:
                    uf.union((s, g), (s + 1, k))
                    uf.union((s, g), (s + 1, k + 2))
                else:
                    uf.union((s, g), (s + 1, g + 2))
            else:
                if g <= k:
                    uf.union((s, g), (s + 1, g))
                elif g == k + 2:
                    uf.union((s, g), (s + 1, k))
                elif g > k + 2:
                    uf.union((s, g), (s + 1, g - 2))
    roots = {}
    faces = []
    for s, m in enumerate(sizes):
        faces.append(tuple(roots.setdefault(uf.find((s, g)), len(roots)) for g in range(m + 1)))
    outer = faces[0][0]

    arcs = _count_arcs(lag, sizes)
    return LagrangianDiagram(tuple(lag), tuple(crossings), tuple(faces), outer, len(roots), arcs, f)


def _count_arcs(lag, sizes) -> int:
    """Number of edges of the 4-valent graph (arcs between crossings)."""
    words = [(CROSSING if kind == LAG_CROSSING else LEFT_CUSP if kind == CAP_LEFT else RIGHT_CUSP, k + 1)
             for kind, k, _ in lag]
    trace = _trace(words)
    passes = 0
    for s, p, d in trace:
        # count crossing events passed when leaving this piece
        e = s if d == 1 else s - 1
        kind, k, _ = lag[e]
        if kind == LAG_CROSSING and p in (k, k + 1):
            passes += 1
    return passes
