#!/usr/bin/env python3
"""Analyze the worked example cones and write reports plus chamber maps.

Writes <name>.json for every cone and <name>.svg for the rank-two ones
into the output directory (default ./out).
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from conic import from_normals, render_svg_2d
from conic.cli_io import AnalyzeOptions, analyze, serialize_report

# name -> (rank, normals, svg window or None)
EXAMPLES = {
    "quadric": (2, [(1, 1), (-1, 1)], (-2, 2, -2, 2)),
    "square": (3, [(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)], None),
    "cyclic": (2, [(0, 1), (3, -2)], (-2, 1, -2, 1)),
    "orthant": (2, [(1, 0), (0, 1)], (-2, 2, -2, 2)),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--skip-frobenius", action="store_true",
                    help="omit the minimal complete Frobenius search")
    args = ap.parse_args(argv)
    os.makedirs(args.out, exist_ok=True)

    options = AnalyzeOptions(
        acyclicity_radius=None,
        frobenius_minimal=not args.skip_frobenius)
    for name, (rank, normals, window) in EXAMPLES.items():
        spec = from_normals(rank, normals)
        report = analyze(spec, options)
        path = os.path.join(args.out, name + ".json")
        with open(path, "w") as fh:
            fh.write(serialize_report(report))
        nccr = report["nccr"]["verdict"]
        print(f"{name}: {report['class_count']} classes, "
              f"global dimension {report['global_dimension']}, {nccr}"
              f" -> {path}")
        if window is not None:
            svg = render_svg_2d(spec, window)
            svg_path = os.path.join(args.out, name + ".svg")
            with open(svg_path, "w") as fh:
                fh.write(svg)
            print(f"{name}: chamber map -> {svg_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
