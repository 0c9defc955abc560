#!/usr/bin/env python3
"""Generate the piecewise polynomial table for erfcx(x) = exp(x^2) erfc(x).

The table covers [0, 27) in intervals of width 0.5. On each interval the
function is approximated by a degree-DEG polynomial in s = x - midpoint,
obtained by Chebyshev interpolation in extended precision and converted to
monomial form. Writes src/kernels/erfcx_table.inc.
"""
import sys
from mpmath import mp, mpf, erfc, exp, cos, pi, matrix, lu_solve

mp.dps = 50
WIDTH = mpf("0.5")
LIMIT = 27
DEG = 13


def erfcx(x):
    return exp(x * x) * erfc(x)


def fit(a, b):
    mid = (a + b) / 2
    half = (b - a) / 2
    nodes = [mid + half * cos(pi * (k + mpf(1) / 2) / (DEG + 1)) for k in range(DEG + 1)]
    A = matrix(DEG + 1, DEG + 1)
    y = matrix(DEG + 1, 1)
    for i, x in enumerate(nodes):
        for j in range(DEG + 1):
            A[i, j] = (x - mid) ** j
        y[i] = erfcx(x)
    c = lu_solve(A, y)
    return mid, [c[j] for j in range(DEG + 1)]


def horner(coeffs, s):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def main(out_path):
    count = int(LIMIT / WIDTH)
    rows = []
    worst = 0.0
    for k in range(count):
        a = WIDTH * k
        mid, coeffs = fit(a, a + WIDTH)
        dc = [float(c) for c in coeffs]
        for i in range(201):
            x = a + WIDTH * i / 200
            ref = erfcx(x)
            got = horner(dc, float(x - mid))
            worst = max(worst, abs(float((got - ref) / ref)))
        rows.append(dc)
    sys.stderr.write(f"max relative error (double Horner): {worst:.3e}\n")
    with open(out_path, "w") as f:
        f.write("// Generated by tools/gen_erfcx_table.py. Do not edit.\n")
        f.write(f"// erfcx on [0, {LIMIT}), {count} intervals of width {float(WIDTH)},\n")
        f.write(f"// degree {DEG} in (x - midpoint), lowest order first.\n")
        f.write(f"constexpr int kErfcxIntervals = {count};\n")
        f.write(f"constexpr int kErfcxDegree = {DEG};\n")
        f.write(f"constexpr double kErfcxWidth = {float(WIDTH)!r};\n")
        f.write(f"alignas(64) constexpr double kErfcxCoeffs[{count}][{DEG + 1}] = {{\n")
        for dc in rows:
            f.write("    {" + ", ".join(repr(c) for c in dc) + "},\n")
        f.write("};\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/kernels/erfcx_table.inc")
