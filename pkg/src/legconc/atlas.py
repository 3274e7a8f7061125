"""On-disk atlas of computed invariants.

Layout::

    <root>/index.tsv                 id, diagram hash, dga digest, bilch digest
    <root>/.lock                     advisory lock held by the single writer
    <root>/<id>/diagram.front        canonical front serialization
    <root>/<id>/invariants.txt
    <root>/<id>/dga.txt
    <root>/<id>/augmentations.txt
    <root>/<id>/bilch.txt
    <root>/<id>/fillable.txt
    <root>/<id>/record.json          digests and timestamps
    <root>/<id>/certificates/*.json

Everything except ``record.json`` is a pure function of the diagram and the
fillability assertions, which is what ``verify`` checks.
"""

from __future__ import annotations

import contextlib
import datetime as _dt
import fcntl
import hashlib
import json
import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .augmentation import serialize_augmentation
from .concordance import KnotRecord, knot_record
from .diagram import FrontWord, classical_invariants, parse_front, serialize_front
from .dga import export_dga, parse_dga

_ID = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.+-]*")
INDEX = "index.tsv"
LOCK = ".lock"


class AtlasError(RuntimeError):
    pass


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def invariants_line(front: FrontWord, chord_degrees: Iterable[int]) -> str:
    inv = classical_invariants(front)
    counts: dict[int, int] = {}
    for d in chord_degrees:
        counts[d] = counts.get(d, 0) + 1
    chords = " ".join(f"{k}:{v}" for k, v in sorted(counts.items()))
    return f"tb={inv.tb} rot={inv.rotation} chords: {chords}"


def augmentations_text(rec: KnotRecord) -> str:
    blocks = []
    for name in rec.augmentations:
        body = serialize_augmentation(rec.dga, rec.aug_objects[name])
        blocks.append(f"aug {name}\n{body}")
    return "\n".join(blocks)


def bilch_text(rec: KnotRecord) -> str:
    rows = [f"{a} {b} : {rec.bilch[(a, b)]}" for a in rec.augmentations for b in rec.augmentations]
    return "".join(r + "\n" for r in rows)


@dataclass(frozen=True)
class AtlasRecord:
    knot_id: str
    diagram_hash: str
    invariants: str
    dga_export: str
    augmentations: str
    bilch: str
    fillable: tuple[str, ...]
    created: str = ""
    updated: str = ""

    @property
    def digests(self) -> dict[str, str]:
        return {
            "diagram": self.diagram_hash,
            "dga": digest(self.dga_export),
            "augmentations": digest(self.augmentations),
            "bilch": digest(self.bilch),
        }

    def files(self, front_text: str) -> dict[str, str]:
        return {
            "diagram.front": front_text,
            "invariants.txt": self.invariants + "\n",
            "dga.txt": self.dga_export,
            "augmentations.txt": self.augmentations,
            "bilch.txt": self.bilch,
            "fillable.txt": "".join(f + "\n" for f in self.fillable),
        }


def compute(front: FrontWord, knot_id: str, fillable: Iterable[str] = ()) -> tuple[AtlasRecord, KnotRecord, str]:
    """Compute every stored artefact from a front."""
    text = serialize_front(front)
    rec = knot_record(front, name=knot_id, fillable=fillable)
    fill = tuple(a for a in rec.augmentations if a in rec.fillable)
    ar = AtlasRecord(
        knot_id=knot_id,
        diagram_hash=digest(text),
        invariants=invariants_line(front, rec.chord_degrees),
        dga_export=export_dga(rec.dga),
        augmentations=augmentations_text(rec),
        bilch=bilch_text(rec),
        fillable=fill,
    )
    return ar, rec, text


@dataclass(frozen=True)
class VerifyResult:
    knot_id: str
    ok: bool
    mismatches: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.knot_id}: " + ("ok" if self.ok else "DRIFT in " + ", ".join(self.mismatches))


class Atlas:
    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)

    # -- locking ----------------------------------------------------------

    @contextlib.contextmanager
    def lock(self) -> Iterator[None]:
        self.root.mkdir(parents=True, exist_ok=True)
        with open(self.root / LOCK, "a+") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    # -- index ------------------------------------------------------------

    def _read_index(self) -> dict[str, list[str]]:
        path = self.root / INDEX
        if not path.exists():
            return {}
        out = {}
        for line in path.read_text().splitlines():
            if line and not line.startswith("#"):
                cols = line.split("\t")
                out[cols[0]] = cols[1:]
        return out

    def _write_index(self, entries: dict[str, list[str]]) -> None:
        lines = ["# id\tdiagram\tdga\tbilch"]
        lines += ["\t".join([k, *entries[k]]) for k in sorted(entries)]
        _atomic_write(self.root / INDEX, "\n".join(lines) + "\n")

    def ids(self) -> list[str]:
        return sorted(self._read_index())

    def __contains__(self, knot_id: str) -> bool:
        return knot_id in self._read_index()

    # -- records ----------------------------------------------------------

    def add(self, front: FrontWord, knot_id: Optional[str] = None, fillable: Iterable[str] = ()) -> AtlasRecord:
        knot_id = knot_id or front.name
        if not knot_id or not _ID.fullmatch(knot_id):
            raise AtlasError(f"invalid knot id {knot_id!r}")
        ar, _, text = compute(front, knot_id, fillable)
        now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        with self.lock():
            d = self.root / knot_id
            created = now
            if (d / "record.json").exists():
                created = json.loads((d / "record.json").read_text()).get("created", now)
            d.mkdir(parents=True, exist_ok=True)
            for name, body in ar.files(text).items():
                _atomic_write(d / name, body)
            meta = {"id": knot_id, "digests": ar.digests, "fillable": list(ar.fillable), "created": created, "updated": now}
            _atomic_write(d / "record.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")
            idx = self._read_index()
            dg = ar.digests
            idx[knot_id] = [dg["diagram"], dg["dga"], dg["bilch"]]
            self._write_index(idx)
        return AtlasRecord(**{**ar.__dict__, "created": created, "updated": now})

    def stored(self, knot_id: str) -> AtlasRecord:
        d = self._dir(knot_id)
        meta = json.loads((d / "record.json").read_text())
        return AtlasRecord(
            knot_id=knot_id,
            diagram_hash=digest((d / "diagram.front").read_text()),
            invariants=(d / "invariants.txt").read_text().rstrip("\n"),
            dga_export=(d / "dga.txt").read_text(),
            augmentations=(d / "augmentations.txt").read_text(),
            bilch=(d / "bilch.txt").read_text(),
            fillable=tuple((d / "fillable.txt").read_text().split()),
            created=meta.get("created", ""),
            updated=meta.get("updated", ""),
        )

    def front(self, knot_id: str) -> FrontWord:
        return parse_front((self._dir(knot_id) / "diagram.front").read_text())

    def load(self, knot_id: str, fillable: Optional[Iterable[str]] = None) -> KnotRecord:
        """Knot record from stored files; the DGA is read, not recomputed."""
        d = self._dir(knot_id)
        dga = parse_dga((d / "dga.txt").read_text())
        fill = (d / "fillable.txt").read_text().split() if fillable is None else list(fillable)
        return knot_record(self.front(knot_id), name=knot_id, fillable=fill, dga=dga)

    def verify(self, ids: Optional[Iterable[str]] = None) -> list[VerifyResult]:
        out = []
        index = self._read_index()
        for knot_id in sorted(ids) if ids is not None else sorted(index):
            if knot_id not in index:
                out.append(VerifyResult(knot_id, False, ("missing",)))
                continue
            have = self.stored(knot_id)
            fresh, _, _ = compute(self.front(knot_id), knot_id, have.fillable)
            meta = json.loads((self._dir(knot_id) / "record.json").read_text())
            bad = []
            for key, value in fresh.digests.items():
                if have.digests[key] != value or meta["digests"].get(key) != value:
                    bad.append(key)
            if index[knot_id] != [fresh.digests["diagram"], fresh.digests["dga"], fresh.digests["bilch"]]:
                bad.append("index")
            if have.invariants != fresh.invariants:
                bad.append("invariants")
            out.append(VerifyResult(knot_id, not bad, tuple(bad)))
        return out

    def save_certificate(self, knot_id: str, name: str, payload: dict) -> Path:
        if not _ID.fullmatch(name):
            raise AtlasError(f"invalid certificate name {name!r}")
        with self.lock():
            d = self._dir(knot_id) / "certificates"
            d.mkdir(exist_ok=True)
            path = d / f"{name}.json"
            _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path

    def _dir(self, knot_id: str) -> Path:
        d = self.root / knot_id
        if not _ID.fullmatch(knot_id) or not (d / "record.json").exists():
            raise AtlasError(f"no atlas record {knot_id!r} in {self.root}")
        return d


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
