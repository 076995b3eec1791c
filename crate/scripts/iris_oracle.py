#!/usr/bin/env python3
"""Brute-force reference counts for the single fuzzy rule in fixtures/nmeef_iris.txt.

Reads fixtures/iris.dat with a plain line loop (no shared code with the Rust
engine), evaluates the triangular label (-1.95, 1.0, 3.95) on petalLength,
and prints tp/fp/fn/tn, the class frequencies and a few membership degrees.
"""
import sys
from collections import Counter
from fractions import Fraction

path = sys.argv[1] if len(sys.argv) > 1 else "fixtures/iris.dat"
rows = []
in_data = False
for line in open(path):
    line = line.strip()
    if not line or line.startswith("%"):
        continue
    if line.lower() == "@data":
        in_data = True
        continue
    if in_data:
        rows.append([c.strip() for c in line.split(",")])

a, b, c = -1.95, 1.0, 3.95


def mu(x):
    if x <= a or x >= c:
        return 0.0
    if x == b:
        return 1.0
    if x < b:
        return (x - a) / (b - a)
    return (c - x) / (c - b)


tp = fp = fn = tn = 0
covered_degrees = []
for r in rows:
    d = mu(float(r[2]))
    pos = r[4] == "Iris-setosa"
    if d > 0:
        covered_degrees.append(d)
        if pos:
            tp += 1
        else:
            fp += 1
    else:
        if pos:
            fn += 1
        else:
            tn += 1

print("rows", len(rows))
print("class_counts", sorted(Counter(r[4] for r in rows).items()))
print("tp fp fn tn", tp, fp, fn, tn)
P, N, T = tp + fn, fp + tn, tp + fp + fn + tn
print("tpr", Fraction(tp, P), float(Fraction(tp, P)))
print("fpr", Fraction(fp, N), float(Fraction(fp, N)))
print("conf", Fraction(tp, tp + fp), float(Fraction(tp, tp + fp)))
raw = Fraction(tp + fp, T) * (Fraction(tp, tp + fp) - Fraction(P, T))
pn = Fraction(P * N, T * T)
print("wracc_raw", raw, float(raw))
print("wracc_norm", (raw + pn) / (2 * pn), float((raw + pn) / (2 * pn)))
print("mu(1.4)", repr(mu(1.4)), "hand:", repr((3.95 - 1.4) / (3.95 - 1.0)))
print("degree_sum", repr(sum(covered_degrees)))
