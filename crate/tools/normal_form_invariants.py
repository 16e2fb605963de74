"""Derive J2..J10 of y^2 = x(x-1)(x^3 + a2 x^2 + a1 x + a0) as polynomials in a0, a1, a2.

The Weierstrass points are 0, 1, infinity and the roots r1, r2, r3 of the cubic. The orbit sums
A, B, C', D are symmetric in r1, r2, r3, so they are polynomials in the cubic's coefficients.
Writes crates/core/src/census/normal_form_data.rs.
"""
import itertools
import sys

import sympy as sp
from sympy.polys.polyfuncs import symmetrize

r1, r2, r3, a0, a1, a2 = sp.symbols("r1 r2 r3 a0 a1 a2")
INF = "inf"
pts = [0, 1, INF, r1, r2, r3]


def d(i, j):
    x, y = pts[i], pts[j]
    if x == INF or y == INF:
        return sp.Integer(1)
    return sp.expand((x - y) ** 2)


matchings = []
for a in range(1, 6):
    rest = [v for v in range(1, 6) if v != a]
    for (i, j), (k, l) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]:
        matchings.append([(0, a), (rest[i], rest[j]), (rest[k], rest[l])])
splits = []
for a, b in itertools.combinations(range(1, 6), 2):
    splits.append(([0, a, b], [v for v in range(1, 6) if v not in (a, b)]))

gens = (r1, r2, r3)
P = lambda e: sp.Poly(e, *gens)
D = {(i, j): P(d(i, j)) for i in range(6) for j in range(6) if i != j}

A = sum((D[m[0]] * D[m[1]] * D[m[2]] for m in matchings), P(0))
tri = lambda t: D[(t[0], t[1])] * D[(t[0], t[2])] * D[(t[1], t[2])]
B = P(0)
C = P(0)
for s, t in splits:
    tt = tri(s) * tri(t)
    B += tt
    perm = P(0)
    for sig in itertools.permutations(range(3)):
        perm += D[(s[0], t[sig[0]])] * D[(s[1], t[sig[1]])] * D[(s[2], t[sig[2]])]
    C += tt * perm
DD = P(1)
for i in range(6):
    for j in range(i + 1, 6):
        DD *= D[(i, j)]


def sym(poly):
    expr, rem, elementary = symmetrize(poly.as_expr(), r1, r2, r3, formal=True)
    assert rem == 0
    # e1 = -a2, e2 = a1, e3 = -a0
    repl = {}
    for sname, val in elementary:
        v = sp.expand(val)
        if v == sp.expand(r1 + r2 + r3):
            repl[sname] = -a2
        elif v == sp.expand(r1 * r2 + r1 * r3 + r2 * r3):
            repl[sname] = a1
        else:
            repl[sname] = -a0
    return sp.expand(expr.subs(repl))


Ae, Be, Ce, De = (sym(x) for x in (A, B, C, DD))
J = [
    2 * Ae,
    (Ae**2 - 16 * Be) / 6,
    (Ae**3 + 80 * Ae * Be - 384 * Ce) / 54,
    (Ae**4 + 416 * Ae**2 * Be - 1536 * Ae * Ce - 768 * Be**2) / 432,
    256 * De,
]

names = ["J2", "J4", "J6", "J8", "J10"]
lines = [
    "// Generated by tools/normal_form_invariants.py; do not edit by hand.",
    "",
    "/// `(coefficient, exponents of (a0, a1, a2))` terms of J2..J10 of",
    "/// `y^2 = x(x-1)(x^3 + a2 x^2 + a1 x + a0)`.",
    "#[rustfmt::skip]",
    "pub(crate) const NORMAL_FORM_J: [&[(i64, [u8; 3])]; 5] = [",
]
for name, j in zip(names, J):
    poly = sp.Poly(sp.expand(j), a0, a1, a2)
    terms = []
    for monom, c in sorted(poly.terms()):
        n = sp.Integer(c)  # fails if a coefficient is not integral
        assert abs(n) < 2**62
        terms.append(f"({n}, [{monom[0]}, {monom[1]}, {monom[2]}])")
    lines.append(f"    // {name}")
    lines.append(f"    &[{', '.join(terms)}],")
    print(name, len(terms), "terms", file=sys.stderr)
lines.append("];")
out = sys.argv[1] if len(sys.argv) > 1 else "crates/core/src/census/normal_form_data.rs"
with open(out, "w") as fh:
    fh.write("\n".join(lines) + "\n")
