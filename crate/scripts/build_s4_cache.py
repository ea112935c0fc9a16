#!/usr/bin/env python3
"""Build the cached Euler-factor table for the 3-dimensional S4 representation
attached to x^4 - x + 1 (label 3.229.4t5.a.a).

The permutation representation on the four roots is 1 + rho, so for an
unramified prime with factorization degrees (d1, d2, ...) the local factor of
rho is prod(1 - x^di) / (1 - x).  At the ramified prime 229 the factor is read
off from the splitting of 229 in the quartic field.
"""
import json
import sys

from sympy import Poly, primerange, symbols, factor_list

X = symbols("x")
F = X**4 - X + 1
BOUND = int(sys.argv[1]) if len(sys.argv) > 1 else 1000


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def poly_div_one_minus_x(a):
    # exact division by (1 - x)
    q = []
    carry = 0
    for c in a[:-1]:
        carry += c
        q.append(carry)
    assert carry + a[-1] == 0
    return q


factors = {}
for p in primerange(2, BOUND + 1):
    _, parts = factor_list(F, modulus=p)
    if p == 229:
        # (x+75)^2 * irreducible quadratic: primes e=2,f=1 and e=1,f=2
        # zeta_K factor 1/((1-x)(1-x^2)); divide by zeta's 1/(1-x)
        poly = [1, 0, -1]
    else:
        poly = [1]
        for g, e in parts:
            assert e == 1
            d = Poly(g, X).degree()
            poly = poly_mul(poly, [1] + [0] * (d - 1) + [-1])
        poly = poly_div_one_minus_x(poly)
    factors[str(p)] = [[float(c), 0.0] for c in poly]

table = {
    "label": "3.229.4t5.a.a",
    "dimension": 3,
    "conductor": 229,
    "p_plus": 1,
    "m_minus": 2,
    "bad_primes": [229],
    "root_number": [1.0, 0.0],
    "factors": factors,
}
json.dump(table, sys.stdout, sort_keys=True)
print()
