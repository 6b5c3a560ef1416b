"""Independent reference computations used by the tests."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations

import sympy
from sympy.polys.matrices import DomainMatrix

from effdiv.poly import RatPoly, monomials_of_degree


def sympy_groebner(polys):
    """Reduced grevlex basis from sympy, as a set of monic polynomial strings' term dicts."""
    ring = polys[0].ring
    syms = sympy.symbols(ring)
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**e for s, e in zip(syms, m)])
                 for m, c in p.terms.items()) for p in polys]
    G = sympy.groebner(exprs, *syms, order="grevlex")
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *syms)
        lc = P.LC(order="grevlex")
        out.add(frozenset((m, Fraction(int(sympy.fraction(c / lc)[0]), int(sympy.fraction(c / lc)[1])))
                          for m, c in zip(P.monoms(), P.coeffs())))
    return out


def _rank(rows, ncols):
    if not rows or not ncols:
        return 0
    M = DomainMatrix([[sympy.QQ(v.numerator, v.denominator) for v in r] for r in rows], (len(rows), ncols), sympy.QQ)
    return M.rank()


def koszul_betti(J: list[RatPoly], max_degree: int, gb_normal_form):
    """Graded Betti numbers of S/J by Koszul homology of S/J, in internal degrees <= max_degree.

    Returns a Counter {(k, j): beta_{k,j}} for k >= 1.  ``gb_normal_form`` maps a
    polynomial to its normal form modulo J (standard monomials form a basis of S/J).
    """
    ring = J[0].ring
    n = len(ring)

    def std_basis(t):
        if t < 0:
            return []
        out = []
        for m in monomials_of_degree(n, t):
            if gb_normal_form(RatPoly.monomial(ring, m)) == RatPoly.monomial(ring, m):
                out.append(m)
        return out

    cache = {}

    def basis(t):
        if t not in cache:
            cache[t] = std_basis(t)
        return cache[t]

    def dmatrix(k, j):
        """Koszul differential K_k -> K_{k-1} in internal degree j, as rows of the target."""
        src = [(I, m) for I in combinations(range(n), k) for m in basis(j - k)]
        tgt = [(I, m) for I in combinations(range(n), k - 1) for m in basis(j - k + 1)]
        tidx = {x: i for i, x in enumerate(tgt)}
        cols = []
        for I, m in src:
            col = [Fraction(0)] * len(tgt)
            for pos, i in enumerate(I):
                rest = I[:pos] + I[pos + 1:]
                nf = gb_normal_form(RatPoly.monomial(ring, m) * RatPoly.var(ring, ring[i]))
                for mm, c in nf.terms.items():
                    col[tidx[(rest, mm)]] += (-1) ** pos * c
            cols.append(col)
        return src, tgt, cols

    betti = Counter()
    for j in range(0, max_degree + 1):
        ranks = {}
        dims = {}
        for k in range(0, n + 1):
            src = [(I, m) for I in combinations(range(n), k) for m in basis(j - k)]
            dims[k] = len(src)
        for k in range(1, n + 1):
            if dims[k] == 0:
                ranks[k] = 0
                continue
            _, tgt, cols = dmatrix(k, j)
            ranks[k] = _rank(cols, len(tgt)) if tgt else 0
        ranks[n + 1] = 0
        for k in range(1, n + 1):
            b = dims[k] - ranks[k] - ranks[k + 1]
            if b:
                betti[(k, j)] = b
    return betti


def betti_from_shifts(shifts) -> Counter:
    c = Counter()
    for k, d in enumerate(shifts, start=1):
        for x in d:
            c[(k, x)] += 1
    return c


def bound_reference(degPhi, mu, mu0, d, c_inf, degX, m, n, N, kappa0):
    """One-line reference for the general degree bound (None for c_inf means -infinity)."""
    return max(degPhi + (mu + mu0) * (0 if c_inf is None else d**c_inf * degX), d * min(m, n + 1) + kappa0 - N)


def bound_reference_smooth(degPhi, mu, mu_prime, d, c_inf, degX, m, n, N, kappa0):
    return max(degPhi + mu * (0 if c_inf is None else d**c_inf * degX) + mu_prime, d * min(m, n + 1) + kappa0 - N)


def ext_euclid(a: RatPoly, b: RatPoly):
    """Univariate extended Euclid: (g, s, t) with s a + t b = g monic gcd."""
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = RatPoly.const(ring, 1), RatPoly.zero(ring)
    t0, t1 = RatPoly.zero(ring), RatPoly.const(ring, 1)
    while not r1.is_zero():
        q, r = _udiv(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.leading_coeff("lex")
    return r0.scale(1 / lc), s0.scale(1 / lc), t0.scale(1 / lc)


def _udiv(a: RatPoly, b: RatPoly):
    ring = a.ring
    q = RatPoly.zero(ring)
    r = a
    db, lb = int(b.total_degree()), b.leading_coeff("lex")
    while not r.is_zero() and r.total_degree() >= db:
        dr = int(r.total_degree())
        t = RatPoly.monomial(ring, (dr - db,)).scale(r.leading_coeff("lex") / lb)
        q = q + t
        r = r - t * b
    return q, r
