"""Command-line interface.

Exit codes: 0 success / NOT_OBSTRUCTED, 1 atlas drift or other failure,
2 unreadable or invalid input, 3 OBSTRUCTED, 4 missing fillability
assertions or an unmet certificate precondition.

Diagram arguments are file paths (front or grid format), ``@name`` for a
diagram shipped with the package, or an atlas id when ``--atlas`` is set.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .atlas import Atlas, AtlasError, invariants_line
from .augmentation import serialize_augmentation
from .concordance import (
    MissingFillabilityAssertions,
    PreconditionUnmet,
    knot_record,
    nonsymmetry_certificate,
    obstruct_concordance,
    spin_iterated,
)
from .diagram import DiagramError, FrontWord, load_diagram
from .dga import export_dga
from .render import render_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_OBSTRUCTED = 3
EXIT_ASSERTIONS = 4


class InputError(Exception):
    pass


def shipped(name: str) -> str:
    """Text of a diagram bundled in ``legconc/data``."""
    root = resources.files("legconc") / "data"
    for suffix in ("", ".front", ".grid"):
        p = root / (name + suffix)
        if p.is_file():
            return p.read_text()
    raise InputError(f"no shipped diagram named {name!r}")


def read_front(arg: str) -> FrontWord:
    if arg.startswith("@"):
        text, where = shipped(arg[1:]), arg
    else:
        path = Path(arg)
        if not path.is_file():
            raise InputError(f"{arg}: no such file")
        text, where = path.read_text(), arg
    try:
        return load_diagram(text)
    except DiagramError as e:
        raise InputError(f"{where}: {e}") from e


def _fillable(args) -> Optional[list[str]]:
    raw = getattr(args, "assert_fillable", None)
    if raw is None:
        return None
    return [x for x in raw.replace(",", " ").split() if x]


def load_record(arg: str, args, fillable: Optional[list[str]] = None):
    atlas = _atlas(args)
    if atlas is not None and not arg.startswith("@") and not Path(arg).exists() and arg in atlas:
        return atlas.load(arg, fillable)
    f = read_front(arg)
    name = f.name or Path(arg.lstrip("@")).stem
    return knot_record(f, name=name, fillable=fillable or ())


def _atlas(args) -> Optional[Atlas]:
    root = getattr(args, "atlas", None)
    return Atlas(root) if root else None


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args) -> int:
    f = read_front(args.diagram)
    rec = knot_record(f)
    line = invariants_line(f, rec.chord_degrees)
    counts: dict[str, int] = {}
    for d in rec.chord_degrees:
        counts[str(d)] = counts.get(str(d), 0) + 1
    _emit(args, line, {"tb": rec.tb, "rotation": rec.rotation, "chords": counts})
    return EXIT_OK


def cmd_dga(args) -> int:
    rec = knot_record(read_front(args.diagram))
    text = export_dga(rec.dga)
    payload = {
        "grading_modulus": rec.dga.grading_modulus,
        "generators": [{"id": g.id, "degree": g.degree} for g in rec.dga.generators],
        "differential": {
            g.id: sorted(rec.dga.format_word(w) for w in rec.dga.differential[i])
            for i, g in enumerate(rec.dga.generators)
        },
    }
    _emit(args, text.rstrip("\n"), payload)
    return EXIT_OK


def cmd_augment(args) -> int:
    rec = knot_record(read_front(args.diagram))
    lines = [f"{len(rec.augmentations)} augmentation(s)"]
    payload = {}
    for name in rec.augmentations:
        body = serialize_augmentation(rec.dga, rec.aug_objects[name]).split()
        lines.append(f"{name}: " + (" ".join(body) if body else "0"))
        payload[name] = [b.split("=")[0] for b in body]
    _emit(args, "\n".join(lines), {"count": len(payload), "augmentations": payload})
    return EXIT_OK


def cmd_bilch(args) -> int:
    rec = knot_record(read_front(args.diagram))
    lines = [f"{a} {b} : {rec.bilch[(a, b)]}" for a in rec.augmentations for b in rec.augmentations]
    multiset = [p.serialize() for p in rec.bilch_multiset()]
    lines.append("multiset: " + ("; ".join(multiset) if multiset else "empty"))
    table = {f"{a},{b}": rec.bilch[(a, b)].serialize() for a in rec.augmentations for b in rec.augmentations}
    _emit(args, "\n".join(lines), {"pairs": table, "multiset": multiset})
    return EXIT_OK


def cmd_obstruct(args) -> int:
    source = load_record(args.source, args, _fillable(args))
    target = load_record(args.target, args)
    try:
        report = obstruct_concordance(source, target, args.n)
    except MissingFillabilityAssertions as e:
        print(f"error: {e}\nhint: pass --assert-fillable <ids> for the source", file=sys.stderr)
        return EXIT_ASSERTIONS
    _emit(args, str(report), report.to_dict())
    return EXIT_OBSTRUCTED if report.obstructed else EXIT_OK


def cmd_spin(args) -> int:
    base = load_record(args.diagram, args, _fillable(args))
    rec = spin_iterated(base, args.m)
    degrees: dict[int, int] = {}
    for d in rec.chord_degrees:
        degrees[d] = degrees.get(d, 0) + 1
    chords = " ".join(f"{k}:{v}" for k, v in sorted(degrees.items()))
    lines = [f"{rec.name}: Legendrian dimension {rec.dimension}, chords: {chords}"]
    lines += [f"{a} {b} : {rec.bilch[(a, b)]}" for a in rec.augmentations for b in rec.augmentations]
    payload = {
        "name": rec.name,
        "spins": list(rec.spins),
        "dimension": rec.dimension,
        "chord_degrees": list(rec.chord_degrees),
        "pairs": {f"{a},{b}": p.serialize() for (a, b), p in sorted(rec.bilch.items())},
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_certify(args) -> int:
    base = load_record(args.base, args, _fillable(args))
    unknot = load_record(args.unknot, args)
    try:
        cert = nonsymmetry_certificate(base, unknot, args.m, args.n)
    except PreconditionUnmet as e:
        print(f"precondition unmet: {e.clause}", file=sys.stderr)
        return EXIT_ASSERTIONS
    atlas = _atlas(args)
    if args.save:
        if atlas is None or base.name not in atlas:
            raise InputError("--save needs --atlas and a base stored in it")
        name = "nonsym-" + "-".join(str(m) for m in cert.spins)
        atlas.save_certificate(base.name, name, cert.to_dict())
    _emit(args, str(cert), cert.to_dict())
    return EXIT_OK


def cmd_render(args) -> int:
    svg = render_svg(read_front(args.diagram), labels=not args.no_labels)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_atlas(args) -> int:
    atlas = _atlas(args)
    if atlas is None:
        raise InputError("atlas commands need --atlas <dir>")
    if args.atlas_cmd == "add":
        f = read_front(args.diagram)
        knot_id = args.id or f.name or Path(args.diagram.lstrip("@")).stem
        rec = atlas.add(f, knot_id, _fillable(args) or ())
        _emit(args, f"added {rec.knot_id} {rec.diagram_hash[:12]}", {"id": rec.knot_id, "digests": rec.digests})
        return EXIT_OK
    if args.atlas_cmd == "list":
        rows = [(k, atlas.stored(k)) for k in atlas.ids()]
        text = "\n".join(f"{k}\t{r.diagram_hash[:12]}\t{r.invariants}" for k, r in rows)
        _emit(args, text or "(empty)", [{"id": k, "diagram": r.diagram_hash, "invariants": r.invariants} for k, r in rows])
        return EXIT_OK
    results = atlas.verify(args.ids or None)
    _emit(args, "\n".join(str(r) for r in results) or "(empty)", [{"id": r.knot_id, "ok": r.ok, "mismatches": list(r.mismatches)} for r in results])
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _spins(text: str) -> list[int]:
    try:
        ms = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected sphere dimensions, got {text!r}")
    if not ms or any(m < 1 for m in ms):
        raise argparse.ArgumentTypeError("sphere dimensions must be positive")
    return ms


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--atlas", metavar="DIR", default=argparse.SUPPRESS)
    common.add_argument("--assert-fillable", metavar="IDS", default=argparse.SUPPRESS,
                        help="comma-separated augmentation ids asserted to come from exact fillings")

    p = argparse.ArgumentParser(prog="legconc", description="Legendrian DGA invariants and concordance obstructions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--atlas", metavar="DIR")
    p.add_argument("--assert-fillable", metavar="IDS")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("invariants", cmd_invariants, "tb, rotation and chord degrees").add_argument("diagram")
    add("dga", cmd_dga, "Chekanov-Eliashberg DGA export").add_argument("diagram")
    add("augment", cmd_augment, "all graded augmentations").add_argument("diagram")
    add("bilch", cmd_bilch, "bilinearised cohomology for every ordered pair").add_argument("diagram")

    sp = add("obstruct", cmd_obstruct, "test for a concordance SOURCE -> TARGET")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("-n", type=int, default=None, help="Legendrian dimension (default: that of the records)")

    sp = add("spin", cmd_spin, "spun invariants")
    sp.add_argument("diagram")
    sp.add_argument("-m", type=_spins, required=True, help="sphere dimension(s), e.g. 2 or 1,1")

    sp = add("certify", cmd_certify, "non-symmetry certificate for spun concordances")
    sp.add_argument("base")
    sp.add_argument("unknot")
    sp.add_argument("-m", type=_spins, required=True)
    sp.add_argument("-n", type=int, default=None)
    sp.add_argument("--save", action="store_true", help="store the certificate in the atlas")

    sp = add("render", cmd_render, "SVG of the front and resolved diagram")
    sp.add_argument("diagram")
    sp.add_argument("-o", "--output")
    sp.add_argument("--no-labels", action="store_true")

    sp = add("atlas", cmd_atlas, "manage an atlas directory")
    asub = sp.add_subparsers(dest="atlas_cmd", required=True)
    a = asub.add_parser("add", parents=[common])
    a.add_argument("diagram")
    a.add_argument("--id")
    asub.add_parser("list", parents=[common])
    v = asub.add_parser("verify", parents=[common])
    v.add_argument("ids", nargs="*")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AtlasError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except MissingFillabilityAssertions as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ASSERTIONS


if __name__ == "__main__":
    sys.exit(main())
