"""Obstructions to exact Lagrangian concordances and the spin functor.

A concordance from ``source`` (negative end) to ``target`` (positive end)
carries augmentations induced by fillings of the source to augmentations
of the target, and the induced map on bilinearised cohomology is an
isomorphism.  Every rule here is a consequence of that, or of the
equality of classical invariants; none of them proves that a concordance
exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .augmentation import (
    Augmentation,
    augmentation_from_names,
    bilinearise,
    check_augmentation,
    enumerate_augmentations,
)
from .diagram import FrontWord, classical_invariants, resolve_front
from .dga import DGAPresentation, build_dga
from .gf2 import PoincarePolynomial

OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED"
CAVEAT = "existence not decided"

RULE_TB = "RULE-TB"
RULE_ROT = "RULE-ROT"
RULE_BILCH_DIM = "RULE-BILCH-DIM"
RULE_BILCH_DEGREE = "RULE-BILCH-DEGREE"


class MissingFillabilityAssertions(ValueError):
    pass


class PreconditionUnmet(ValueError):
    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(clause)


Pair = tuple[str, str]


@dataclass(frozen=True)
class KnotRecord:
    """Everything the obstruction rules need to know about a Legendrian.

    ``bilch`` maps ordered pairs of augmentation ids to Poincare polynomials.
    ``complete`` says whether those pairs exhaust all augmentations; spun
    records only carry the augmentations induced from their base.
    """

    name: str
    dimension: int
    chord_degrees: tuple[int, ...]
    augmentations: tuple[str, ...]
    bilch: Mapping[Pair, PoincarePolynomial]
    fillable: frozenset = frozenset()
    tb: Optional[int] = None
    rotation: Optional[int] = None
    grading_modulus: int = 0
    complete: bool = True
    dga: Optional[DGAPresentation] = field(default=None, compare=False, repr=False)
    aug_objects: Mapping[str, Augmentation] = field(default_factory=dict, compare=False, repr=False)
    spins: tuple[int, ...] = ()
    base: Optional["KnotRecord"] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        unknown = set(self.fillable) - set(self.augmentations)
        if unknown:
            raise ValueError(f"fillable assertion names unknown augmentation(s): {sorted(unknown)}")

    def bilch_multiset(self) -> list[PoincarePolynomial]:
        return sorted(self.bilch.values(), key=lambda p: tuple(p.coeffs.items()))

    def with_fillable(self, names: Iterable[str]) -> "KnotRecord":
        return _replace(self, fillable=frozenset(names))

    def fillable_pairs(self) -> list[Pair]:
        names = sorted(self.fillable, key=self.augmentations.index)
        return [(a, b) for a in names for b in names]

    def reduce(self, k: int) -> int:
        return k % self.grading_modulus if self.grading_modulus else k

    def has_chord_in_degree(self, k: int) -> bool:
        return any(self.reduce(d) == self.reduce(k) for d in self.chord_degrees)

    def unknot_like(self) -> bool:
        """Full bilinearised multiset equals {one class in degree n}."""
        target = PoincarePolynomial({self.reduce(self.dimension): 1})
        return self.complete and self.bilch_multiset() == [target]

    def vanishes_in_degree(self, k: int) -> bool:
        """True if every bilinearised cohomology of this record is zero in degree k."""
        if not self.has_chord_in_degree(k):
            return True
        if self.complete:
            return all(p[self.reduce(k)] == 0 for p in self.bilch.values())
        return False

    @property
    def ambient_dimension(self) -> int:
        return 2 * self.dimension + 1


def _replace(rec: KnotRecord, **changes) -> KnotRecord:
    from dataclasses import replace

    return replace(rec, **changes)


def aug_ids(dga: DGAPresentation, augs: Sequence[Augmentation], declared: Mapping[frozenset, str]) -> list[str]:
    """Names for augmentations: declared names where given, else ``aug<k>``."""
    out = []
    for k, a in enumerate(augs):
        out.append(declared.get(a.support, f"aug{k}"))
    return out


def knot_record(front: FrontWord, name: Optional[str] = None, fillable: Iterable[str] = (), dga: Optional[DGAPresentation] = None) -> KnotRecord:
    """Build a record from a front, computing the DGA and all bilinearised data."""
    inv = classical_invariants(front)
    if dga is None:
        dga = build_dga(resolve_front(front), inv)
    augs = enumerate_augmentations(dga)
    declared = {}
    for aug_name, gens in front.augmentations:
        a = augmentation_from_names(dga, gens, aug_name)
        check_augmentation(dga, a)
        declared[a.support] = aug_name
    ids = aug_ids(dga, augs, declared)
    objs = {i: a.named(i) for i, a in zip(ids, augs)}
    table = {}
    for i in ids:
        for j in ids:
            table[(i, j)] = bilinearise(dga, objs[i], objs[j]).homology
    fill = _resolve_names(fillable, ids)
    return KnotRecord(
        name=name or front.name or "knot",
        dimension=1,
        chord_degrees=tuple(sorted(g.degree for g in dga.generators)),
        augmentations=tuple(ids),
        bilch=table,
        fillable=frozenset(fill),
        tb=inv.tb,
        rotation=inv.rotation,
        grading_modulus=dga.grading_modulus,
        complete=True,
        dga=dga,
        aug_objects=objs,
    )


def _resolve_names(names: Iterable[str], ids: Sequence[str]) -> list[str]:
    out = []
    for n in names:
        if n not in ids:
            raise MissingFillabilityAssertions(f"no augmentation named {n!r}; known: {', '.join(ids) or 'none'}")
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# obstructions


@dataclass(frozen=True)
class RuleFiring:
    rule: str
    witness: Mapping

    def to_dict(self) -> dict:
        return {"rule": self.rule, "witness": _plain(self.witness)}


@dataclass(frozen=True)
class ObstructionReport:
    source: str
    target: str
    verdict: str
    fired_rules: tuple[RuleFiring, ...]
    checked: tuple[str, ...]
    caveat: Optional[str] = None

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "verdict": self.verdict,
            "fired_rules": [r.to_dict() for r in self.fired_rules],
            "checked": list(self.checked),
            "caveat": self.caveat,
        }

    def __str__(self) -> str:
        lines = [f"{self.source} -> {self.target}: {self.verdict}"]
        for r in self.fired_rules:
            w = ", ".join(f"{k}={_fmt(v)}" for k, v in r.witness.items())
            lines.append(f"  {r.rule}: {w}")
        if self.caveat:
            lines.append(f"  ({self.caveat})")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, PoincarePolynomial):
        return "{" + str(v) + "}"
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)


def _plain(v):
    if isinstance(v, PoincarePolynomial):
        return v.serialize()
    if isinstance(v, Mapping):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    return v


def _first_mismatch(p: PoincarePolynomial, q: PoincarePolynomial) -> int:
    return min(k for k in set(p.coeffs) | set(q.coeffs) if p[k] != q[k])


def obstruct_concordance(source: KnotRecord, target: KnotRecord, n: Optional[int] = None) -> ObstructionReport:
    """Test for a Lagrangian concordance from ``source`` (bottom) to ``target`` (top)."""
    n = source.dimension if n is None else n
    if n < 1:
        raise ValueError("Legendrian dimension must be positive")
    if source.dimension != n or target.dimension != n:
        raise PreconditionUnmet(f"records have dimensions {source.dimension}, {target.dimension}; query asks {n}")
    fired: list[RuleFiring] = []
    checked: list[str] = []

    if source.tb is not None and target.tb is not None:
        checked.append(RULE_TB)
        if source.tb != target.tb:
            fired.append(RuleFiring(RULE_TB, {"tb_source": source.tb, "tb_target": target.tb}))
    if source.rotation is not None and target.rotation is not None:
        checked.append(RULE_ROT)
        if abs(source.rotation) != abs(target.rotation):
            fired.append(RuleFiring(RULE_ROT, {"rot_source": source.rotation, "rot_target": target.rotation}))

    pairs = source.fillable_pairs()
    unit = PoincarePolynomial({source.reduce(n): 1})
    # assertions are only demanded when they could change the verdict
    decisive = not fired and not (source.complete and all(p == unit for p in source.bilch.values()))
    if target.unknot_like() and (pairs or decisive):
        checked.append(RULE_BILCH_DIM)
        if not pairs:
            raise MissingFillabilityAssertions(
                f"{target.name} is unknot-like; assert fillable augmentations of {source.name} "
                f"(known: {', '.join(source.augmentations) or 'none'})"
            )
        for pair in pairs:
            p = source.bilch[pair]
            if p != unit:
                fired.append(RuleFiring(RULE_BILCH_DIM, {"pair": pair, "degree": _first_mismatch(p, unit), "homology": p}))
                break

    if pairs:
        checked.append(RULE_BILCH_DEGREE)
        for pair in pairs:
            p = source.bilch[pair]
            hit = [k for k in sorted(p.coeffs) if target.vanishes_in_degree(k)]
            if hit:
                fired.append(RuleFiring(RULE_BILCH_DEGREE, {"pair": pair, "degree": hit[0], "homology": p}))
                break

    verdict = OBSTRUCTED if fired else NOT_OBSTRUCTED
    return ObstructionReport(
        source.name,
        target.name,
        verdict,
        tuple(fired),
        tuple(checked),
        None if fired else CAVEAT,
    )


def revalidate(report: ObstructionReport, source: KnotRecord, target: KnotRecord) -> bool:
    """Recompute every witness of an OBSTRUCTED report from the stored data."""
    for r in report.fired_rules:
        w = r.witness
        if r.rule == RULE_TB:
            if source.tb == target.tb:
                return False
        elif r.rule == RULE_ROT:
            if abs(source.rotation) == abs(target.rotation):
                return False
        else:
            p = recompute_bilch(source, tuple(w["pair"]))
            if p != w["homology"]:
                return False
            if r.rule == RULE_BILCH_DIM:
                if not target.unknot_like() or p == PoincarePolynomial({source.reduce(source.dimension): 1}):
                    return False
            elif p[w["degree"]] == 0 or not target.vanishes_in_degree(w["degree"]):
                return False
    return True


def recompute_bilch(rec: KnotRecord, pair: Pair) -> PoincarePolynomial:
    """Homology for ``pair`` recomputed from the DGA, through any spins."""
    if rec.base is not None:
        base = recompute_bilch(rec.base, tuple(p.split("~", 1)[0] for p in pair))
        return spin_polynomial(base, rec.spins[-1])
    if rec.dga is None:
        raise ValueError(f"record {rec.name} has no DGA to recompute from")
    a, b = (rec.aug_objects[x] for x in pair)
    return bilinearise(rec.dga, a, b).homology


# ---------------------------------------------------------------------------
# spinning


def spin_polynomial(p: PoincarePolynomial, m: int) -> PoincarePolynomial:
    """Multiply by the Poincare polynomial 1 + t^m of the m-sphere."""
    if m < 1:
        raise ValueError("sphere dimension must be positive")
    return p * PoincarePolynomial({0: 1, m: 1})


@dataclass(frozen=True)
class SpinRecord:
    m: int
    base: KnotRecord
    record: KnotRecord

    @property
    def spun_chord_degrees(self) -> tuple[int, ...]:
        return self.record.chord_degrees

    @property
    def spun_bilch(self) -> list[PoincarePolynomial]:
        return self.record.bilch_multiset()


def spin(base: KnotRecord, m: int) -> SpinRecord:
    """Front spinning at the level of chords and bilinearised cohomology.

    Each chord of degree d yields chords of degrees d and d + m after a
    generic perturbation; induced augmentations keep their names with a
    ``~`` suffix.
    """
    if m < 1:
        raise ValueError("sphere dimension must be positive")
    if base.grading_modulus:
        raise PreconditionUnmet("spinning is implemented for Z-graded records only")
    degrees = tuple(sorted([d for d in base.chord_degrees] + [d + m for d in base.chord_degrees]))
    rename = {a: a.split("~", 1)[0] + "~" for a in base.augmentations}
    table = {(rename[a], rename[b]): spin_polynomial(p, m) for (a, b), p in base.bilch.items()}
    rec = KnotRecord(
        name=f"spin{m}({base.name})",
        dimension=base.dimension + m,
        chord_degrees=degrees,
        augmentations=tuple(rename[a] for a in base.augmentations),
        bilch=table,
        fillable=frozenset(rename[a] for a in base.fillable),
        tb=None,
        rotation=None,
        grading_modulus=0,
        complete=False,
        spins=base.spins + (m,),
        base=base,
    )
    return SpinRecord(m, base, rec)


def spin_iterated(base: KnotRecord, ms: Sequence[int]) -> KnotRecord:
    rec = base
    for m in ms:
        rec = spin(rec, m).record
    return rec


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class NonSymmetryCertificate:
    base: str
    unknot_like: str
    spins: tuple[int, ...]
    legendrian_dimension: int
    ambient_dimension: int
    diffeomorphism_type: str
    forward: ObstructionReport
    reverse: ObstructionReport

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "unknot_like": self.unknot_like,
            "spins": list(self.spins),
            "legendrian_dimension": self.legendrian_dimension,
            "ambient_dimension": self.ambient_dimension,
            "diffeomorphism_type": self.diffeomorphism_type,
            "forward": self.forward.to_dict(),
            "reverse": self.reverse.to_dict(),
        }

    def __str__(self) -> str:
        return "\n".join(
            [
                f"spins {list(self.spins)}: Legendrian {self.diffeomorphism_type} in R^{self.ambient_dimension}",
                "forward  " + str(self.forward).replace("\n", "\n         "),
                "reverse  " + str(self.reverse).replace("\n", "\n         "),
            ]
        )


def nonsymmetry_certificate(base_pairable: KnotRecord, unknot_like: KnotRecord, m, n: Optional[int] = None) -> NonSymmetryCertificate:
    """Certify that spinning keeps a concordance unobstructed one way and obstructed the other.

    ``m`` is a sphere dimension or a sequence of them (iterated spinning).
    """
    ms = (m,) if isinstance(m, int) else tuple(m)
    if not ms or any(x < 1 for x in ms):
        raise PreconditionUnmet("spin dimensions must be positive")
    expected_n = base_pairable.dimension + sum(ms)
    if n is not None and n != expected_n:
        raise PreconditionUnmet(f"Legendrian dimension {n} does not match 1 + sum of spins = {expected_n}")
    negative = [
        (pair, k)
        for pair in base_pairable.fillable_pairs()
        for k in sorted(base_pairable.bilch[pair].coeffs)
        if k < 0
    ]
    if not negative:
        raise PreconditionUnmet(f"{base_pairable.name} has no asserted-fillable pair with a negative-degree class")
    top = spin_iterated(base_pairable, ms)
    bottom = spin_iterated(unknot_like, ms)
    if not all(bottom.vanishes_in_degree(k) for _, k in negative):
        raise PreconditionUnmet(f"spun {unknot_like.name} does not vanish in the witness degrees")
    forward = obstruct_concordance(bottom, top, expected_n)
    reverse = obstruct_concordance(top, bottom, expected_n)
    if forward.obstructed:
        raise PreconditionUnmet("forward concordance is obstructed: " + str(forward))
    if not reverse.obstructed:
        raise PreconditionUnmet("reverse concordance is not obstructed")
    return NonSymmetryCertificate(
        base=base_pairable.name,
        unknot_like=unknot_like.name,
        spins=ms,
        legendrian_dimension=expected_n,
        ambient_dimension=2 * expected_n + 1,
        diffeomorphism_type=" x ".join(["S^1"] + [f"S^{x}" for x in ms]),
        forward=forward,
        reverse=reverse,
    )
