#!/usr/bin/env python3
"""Dump forward and backward cascade trajectories as CSV for plotting.

Each row is (iteration, tier, angle, radius, rim_distance).  Forward rows
have nonnegative iteration indices, backward rows negative ones.
"""

import argparse
import csv
import sys

from flowrel.circles import CirclePoint, center, trajectory_rows


def parse_point(desc: str) -> CirclePoint:
    if desc == "center":
        return center()
    fam, idx, angle = desc.split(":")
    return CirclePoint(fam, int(idx), float(angle))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--point", default="C:2:1.0", help="center or FAMILY:INDEX:ANGLE")
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--out", default="-", help="output CSV path, - for stdout")
    args = ap.parse_args()

    p = parse_point(args.point)
    rows = trajectory_rows(p, args.steps, backward=True)[::-1]
    rows.extend(trajectory_rows(p, args.steps)[1:])

    sink = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(sink, fieldnames=["iteration", "tier", "angle", "radius", "rim_distance"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if sink is not sys.stdout:
            sink.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
