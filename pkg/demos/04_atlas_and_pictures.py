"""
Atlas and pictures
==================

Store computed invariants on disk, check them for drift, draw a front.
"""

import tempfile
from pathlib import Path

from legconc.atlas import Atlas
from legconc.cli import read_front
from legconc.render import count_text_nodes, render_svg

root = Path(tempfile.mkdtemp(prefix="atlas-"))
atlas = Atlas(root)
atlas.add(read_front("@unknot"), "unknot")
atlas.add(read_front("@trefoil"), "trefoil")
atlas.add(read_front("@m946"), "m946", fillable=["e0", "e1"])

for knot_id in atlas.ids():
    print(knot_id, atlas.stored(knot_id).invariants)
print(*atlas.verify(), sep="\n")

# hand-edit a stored file: verify notices
dga = root / "trefoil" / "dga.txt"
dga.write_text(dga.read_text().replace("d q4 = 1 + ", "d q4 = "))
print(*atlas.verify(["trefoil"]), sep="\n")

#############################################################################
# SVG of the front (top) and its resolution (bottom)

svg = render_svg(read_front("@m946"))
out = root / "m946.svg"
out.write_text(svg)
print(out, count_text_nodes(svg), "labels")
