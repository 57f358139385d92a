#!/usr/bin/env python3
"""Emit DOT files for the Newton polygon posets up to a given height,
plus the symmetric sub-posets, into a target directory.

Usage: python scripts/poset_gallery.py [max_h] [outdir]
"""

import pathlib
import sys

from isolab.poset import dot_export, poset_build


def main(max_h=6, outdir="poset-gallery"):
    out = pathlib.Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for h in range(1, max_h + 1):
        for d in range(h + 1):
            poset = poset_build(h, d)
            (out / ("np_%d_%d.dot" % (h, d))).write_text(dot_export(poset))
        if h % 2 == 0:
            sym = poset_build(h, h // 2, symmetric=True)
            (out / ("np_%d_%d_sym.dot" % (h, h // 2))).write_text(dot_export(sym))
    print("wrote DOT files to %s" % out)


if __name__ == "__main__":
    max_h = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    outdir = sys.argv[2] if len(sys.argv) > 2 else "poset-gallery"
    main(max_h, outdir)
