#!/usr/bin/env python3
"""Regenerates the fixture CSVs in this directory. Deterministic."""
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, rows, closed=False):
    path = os.path.join(HERE, name)
    with open(path, "w") as f:
        if closed:
            f.write("# closed\n")
        for row in rows:
            f.write(",".join("%.12g" % v for v in row) + "\n")
    print(name, len(rows))


def polar(radius_fn, n, phase=0.0):
    pts = []
    for i in range(n):
        phi = 2.0 * math.pi * i / n + phase
        r = radius_fn(phi)
        pts.append((r * math.cos(phi), r * math.sin(phi)))
    return pts


def bump(phi, center, width):
    d = math.atan2(math.sin(phi - center), math.cos(phi - center))
    return math.exp(-(d / width) ** 2)


def hand(fingers):
    def r(phi):
        v = 0.5
        for center, height, width in fingers:
            v += height * bump(phi, center, width)
        return v
    return r


def main():
    write("segment_plus_x.csv", [(0.0, 0.0), (1.0, 0.0)])
    write("segment_minus_x.csv", [(0.0, 0.0), (-1.0, 0.0)])
    write("segment_plus_y.csv", [(0.0, 0.0), (0.0, 1.0)])

    write("circle.csv", polar(lambda phi: 0.5, 256), closed=True)

    # Square traversed counterclockwise, 100 points per side, corners exact.
    sq = []
    corners = [(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)]
    for k in range(4):
        ax, ay = corners[k]
        bx, by = corners[(k + 1) % 4]
        for i in range(100):
            t = i / 100.0
            sq.append((ax + t * (bx - ax), ay + t * (by - ay)))
    write("square.csv", sq, closed=True)

    base = 1.9
    spread = 0.36
    f1 = [(base + spread * (k - 2), 0.42, 0.11) for k in range(5)]
    write("hand1.csv", polar(hand(f1), 600), closed=True)
    # Second hand: one finger folded away, the rest reshaped.
    f2 = [
        (base - 2 * spread, 0.40, 0.10),
        (base - spread, 0.05, 0.09),
        (base, 0.46, 0.12),
        (base + spread, 0.38, 0.10),
        (base + 2 * spread, 0.30, 0.13),
    ]
    write("hand2.csv", polar(hand(f2), 600), closed=True)

    def horse1(phi):
        return (0.62 + 0.22 * math.cos(2 * phi + 1.1) +
                0.13 * math.cos(3 * phi - 0.4) + 0.06 * math.cos(5 * phi))

    def horse2(phi):
        return (0.60 + 0.18 * math.cos(2 * phi + 0.7) +
                0.16 * math.cos(3 * phi + 0.2) + 0.05 * math.cos(4 * phi - 0.9))

    write("horse1.csv", polar(horse1, 500), closed=True)
    write("horse2.csv", polar(horse2, 500), closed=True)

    write("scurve.csv",
          [(t / 400.0, 0.3 * math.sin(2.0 * math.pi * t / 400.0))
           for t in range(401)])

    # Open polyline that doubles back along the x axis: tangents +x, -x, +x.
    write("zigzag.csv", [(0.0, 0.0), (0.45, 0.0), (0.25, 0.0), (1.0, 0.0)])

    write("helix3d.csv",
          [(math.cos(4.0 * math.pi * t / 300.0),
            math.sin(4.0 * math.pi * t / 300.0), 1.5 * t / 300.0)
           for t in range(301)])

    write("f_mono.csv", [(i / 100.0,) for i in range(101)])
    tri = [(2.0 * i / 100.0,) for i in range(51)]
    tri += [(2.0 * (100 - i) / 100.0,) for i in range(51, 101)]
    write("f_tri.csv", tri)


if __name__ == "__main__":
    main()
