"""Graded augmentations and (bi)linearised Legendrian contact cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .dga import DGAPresentation, Word
from .gf2 import GF2Matrix, GradedComplex, PoincarePolynomial


class NotAnAugmentation(ValueError):
    pass


@dataclass(frozen=True)
class Augmentation:
    """A graded augmentation, stored by the generators it sends to 1."""

    support: frozenset
    name: Optional[str] = field(default=None, compare=False)

    def __call__(self, i: int) -> int:
        return 1 if i in self.support else 0

    def word_value(self, w: Word) -> int:
        return 1 if all(x in self.support for x in w) else 0

    def values(self, dga: DGAPresentation) -> dict[str, int]:
        return {g.id: self(i) for i, g in enumerate(dga.generators)}

    @property
    def key(self) -> int:
        return sum(1 << i for i in self.support)

    def named(self, name: Optional[str]) -> "Augmentation":
        return Augmentation(self.support, name)

    def label(self, dga: DGAPresentation) -> str:
        return self.name or "{" + ",".join(sorted(dga.generators[i].id for i in self.support)) + "}"


def augmentation_from_names(dga: DGAPresentation, names: Iterable[str], name: Optional[str] = None) -> Augmentation:
    idx = {g.id: i for i, g in enumerate(dga.generators)}
    try:
        support = frozenset(idx[n] for n in names)
    except KeyError as exc:
        raise NotAnAugmentation(f"unknown generator {exc.args[0]!r}") from None
    return Augmentation(support, name)


def is_augmentation(dga: DGAPresentation, eps: Augmentation) -> bool:
    try:
        check_augmentation(dga, eps)
    except NotAnAugmentation:
        return False
    return True


def check_augmentation(dga: DGAPresentation, eps: Augmentation) -> None:
    for i in eps.support:
        if dga.reduce(dga.generators[i].degree) != 0:
            raise NotAnAugmentation(f"{dga.generators[i].id} has nonzero degree but value 1")
    for i, g in enumerate(dga.generators):
        total = 0
        for w in dga.differential[i]:
            total ^= eps.word_value(w)
        if total:
            raise NotAnAugmentation(f"eps(d {g.id}) = 1")


def _constraints(dga: DGAPresentation, free: list[int]) -> list[list[frozenset]]:
    """Each generator's equation eps(d a) = 0 as a GF(2) polynomial.

    A polynomial is a list of monomials; a monomial is the set of variables
    it multiplies (eps takes values in {0, 1} so repeated letters collapse).
    """
    free_set = set(free)
    polys = []
    for i in range(len(dga.generators)):
        monos: set = set()
        for w in dga.differential[i]:
            if all(x in free_set for x in w):
                monos ^= {frozenset(w)}
        if monos:
            polys.append(sorted(monos, key=sorted))
    return polys


def enumerate_augmentations(dga: DGAPresentation) -> list[Augmentation]:
    """All graded augmentations, ordered by the bitmask of their support."""
    free = [i for i, g in enumerate(dga.generators) if dga.reduce(g.degree) == 0]
    polys = _constraints(dga, free)
    if any(p == [frozenset()] for p in polys):
        return []
    # branch on frequently constrained variables first
    freq = {v: 0 for v in free}
    for p in polys:
        for v in set().union(*p):
            freq[v] += 1
    order = sorted(free, key=lambda v: (-freq[v], v))
    pos = {v: k for k, v in enumerate(order)}
    ready: list[list] = [[] for _ in order]
    for p in polys:
        support = set().union(*p)
        last = max((pos[v] for v in support), default=-1)
        if last < 0:
            continue
        ready[last].append(p)

    found = []
    value: dict[int, int] = {}

    def holds(p) -> bool:
        total = 0
        for mono in p:
            total ^= all(value[v] for v in mono)
        return not total

    def search(k: int):
        if k == len(order):
            found.append(frozenset(v for v, x in value.items() if x))
            return
        v = order[k]
        for x in (0, 1):
            value[v] = x
            if all(holds(p) for p in ready[k]):
                search(k + 1)
        del value[v]

    search(0)
    augs = [Augmentation(s) for s in found]
    augs.sort(key=lambda a: a.key)
    return augs


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class BilinearisedData:
    pair: tuple[Augmentation, Augmentation]
    complex: GradedComplex
    homology: PoincarePolynomial


def _graded_basis(dga: DGAPresentation) -> dict[int, list[int]]:
    basis: dict[int, list[int]] = {}
    for i, g in enumerate(dga.generators):
        basis.setdefault(dga.reduce(g.degree), []).append(i)
    return basis


def _complex_from_pairs(dga: DGAPresentation, entries: set) -> GradedComplex:
    """Assemble d from a set of (source c, target a) incidences over GF(2)."""
    basis = _graded_basis(dga)
    where = {i: (k, j) for k, idx in basis.items() for j, i in enumerate(idx)}
    mats: dict[int, GF2Matrix] = {}
    for c, a in entries:
        kc, jc = where[c]
        ka, ja = where[a]
        if ka != dga.reduce(kc + 1):
            raise AssertionError("cohomological differential must raise degree by one")
        m = mats.get(kc)
        if m is None:
            m = mats[kc] = GF2Matrix.zeros(len(basis[ka]), len(basis[kc]))
        m.rows[ja] ^= 1 << jc
    labels = {k: [dga.generators[i].id for i in idx] for k, idx in basis.items()}
    return GradedComplex(labels, mats, dga.grading_modulus)


def bilinearised_complex(dga: DGAPresentation, eps0: Augmentation, eps1: Augmentation) -> GradedComplex:
    for e in (eps0, eps1):
        check_augmentation(dga, e)
    entries: set = set()
    for a in range(len(dga.generators)):
        for w in dga.differential[a]:
            for j, c in enumerate(w):
                if eps0.word_value(w[:j]) and eps1.word_value(w[j + 1:]):
                    entries ^= {(c, a)}
    return _complex_from_pairs(dga, entries)


def bilinearise(dga: DGAPresentation, eps0: Augmentation, eps1: Augmentation) -> BilinearisedData:
    cx = bilinearised_complex(dga, eps0, eps1)
    return BilinearisedData((eps0, eps1), cx, cx.homology())


def linearised_complex(dga: DGAPresentation, eps: Augmentation) -> GradedComplex:
    """Chekanov's linearisation, computed by conjugating with x -> x + eps(x).

    The twisted differential is expanded as a polynomial truncated to word
    length one; its linear part is then dualised.
    """
    check_augmentation(dga, eps)
    entries: set = set()
    for a in range(len(dga.generators)):
        linear: dict = {}
        for w in dga.differential[a]:
            # product of (x + eps(x)) truncated to length <= 1: {(): const, (c,): coeff}
            poly = {(): 1}
            for x in w:
                factor = {(x,): 1}
                if eps(x):
                    factor[()] = 1
                nxt: dict = {}
                for m1, c1 in poly.items():
                    for m2, c2 in factor.items():
                        m = m1 + m2
                        if len(m) <= 1:
                            nxt[m] = nxt.get(m, 0) ^ (c1 & c2)
                poly = {m: c for m, c in nxt.items() if c}
            for m, c in poly.items():
                if len(m) == 1 and c:
                    linear[m[0]] = linear.get(m[0], 0) ^ 1
        for c, coeff in linear.items():
            if coeff:
                entries ^= {(c, a)}
    return _complex_from_pairs(dga, entries)


def linearised_homology(dga: DGAPresentation, eps: Augmentation) -> PoincarePolynomial:
    return linearised_complex(dga, eps).homology()


def _poly_sort_key(p: PoincarePolynomial):
    return tuple(sorted(p.coeffs.items()))


def bilch_multiset(dga: DGAPresentation, augs: Optional[Sequence[Augmentation]] = None) -> list[PoincarePolynomial]:
    """Bilinearised homology of every ordered pair, sorted canonically."""
    if augs is None:
        augs = enumerate_augmentations(dga)
    out = [bilinearise(dga, a, b).homology for a in augs for b in augs]
    return sorted(out, key=_poly_sort_key)


def serialize_multiset(polys: Sequence[PoincarePolynomial]) -> str:
    return "\n".join(str(p) for p in polys) + ("\n" if polys else "")


# ---------------------------------------------------------------------------
# filling consistency


@dataclass(frozen=True)
class SeidelReport:
    passed: bool
    homology: PoincarePolynomial
    expected: PoincarePolynomial
    mismatches: tuple[tuple[int, int, int], ...]  # (degree, expected, actual)

    def __str__(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head} LCH={self.homology} expected={self.expected}"]
        for k, e, a in self.mismatches:
            lines.append(f"  degree {k}: expected {e}, got {a}")
        return "\n".join(lines)


def seidel_consistency(dga: DGAPresentation, eps: Augmentation, filling_betti: Sequence[int], n: int = 1) -> SeidelReport:
    """Compare LCH_eps with the Betti numbers of an asserted filling.

    The filling's b_i must equal dim LCH^{n-i}; a PASS does not prove the
    filling exists.
    """
    h = linearised_homology(dga, eps)
    expected: dict[int, int] = {}
    for i, b in enumerate(filling_betti):
        k = dga.reduce(n - i)
        expected[k] = expected.get(k, 0) + b
    exp = PoincarePolynomial(expected)
    bad = tuple((k, exp[k], h[k]) for k in sorted(set(exp.coeffs) | set(h.coeffs)) if exp[k] != h[k])
    return SeidelReport(not bad, h, exp, bad)


# ---------------------------------------------------------------------------
# text form


def serialize_augmentation(dga: DGAPresentation, eps: Augmentation) -> str:
    return "".join(f"{dga.generators[i].id}=1\n" for i in sorted(eps.support))


def parse_augmentation(dga: DGAPresentation, text: str, name: Optional[str] = None) -> Augmentation:
    names = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        gen, _, val = line.partition("=")
        val = val.strip()
        if val not in ("0", "1"):
            raise ValueError(f"line {lineno}: expected <generator>=1, got {line!r}")
        if val == "1":
            names.append(gen.strip())
    eps = augmentation_from_names(dga, names, name)
    check_augmentation(dga, eps)
    return eps
