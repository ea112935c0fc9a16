#!/usr/bin/env python3
"""Euler-factor table of the reducible representation 1 + chi3 + chi4, where
chi3 and chi4 are the odd quadratic characters of conductor 3 and 4.

Local factor at p: (1 - x)(1 - chi3(p) x)(1 - chi4(p) x). The conductor is 12
and the root number is W(chi3) W(chi4) = 1.
"""
import json
import sys

from sympy import primerange

BOUND = int(sys.argv[1]) if len(sys.argv) > 1 else 1000


def chi3(p):
    return [0, 1, -1][p % 3]


def chi4(p):
    return [0, 1, 0, -1][p % 4]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


factors = {}
for p in primerange(2, BOUND + 1):
    poly = [1, -1]
    for c in (chi3(p), chi4(p)):
        if c != 0:
            poly = poly_mul(poly, [1, -c])
    factors[str(p)] = [[float(c), 0.0] for c in poly]

table = {
    "dimension": 3,
    "conductor": 12,
    "p_plus": 1,
    "m_minus": 2,
    "bad_primes": [2, 3],
    "root_number": [1.0, 0.0],
    "factors": factors,
}
json.dump(table, sys.stdout, sort_keys=True)
