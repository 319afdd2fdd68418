"""Multivariate gcd, resultants and square-freeness over Q.

The gcd recurses on contents and runs a subresultant pseudo-remainder
sequence in a main variable with coefficients in the polynomial ring of the
remaining variables.  No floating point and no modular shortcuts.
"""

from __future__ import annotations

from typing import Iterable

import gmpy2

from .poly import MPoly, NotDivisible, Rat, ZERO, var_key


def normalize(f: MPoly) -> MPoly:
    """Unit normal form: integer coefficients with content 1, positive leading term."""
    if f.is_zero():
        return f
    den = gmpy2.mpz(1)
    for c in f.terms.values():
        den = gmpy2.lcm(den, c.denominator)
    num = gmpy2.mpz(0)
    for c in f.terms.values():
        num = gmpy2.gcd(num, (c * den).numerator)
    scale = gmpy2.mpq(den, num)
    if f.leading_coefficient() < 0:
        scale = -scale
    if scale == 1:
        return f
    return f * scale


def prem(a: MPoly, b: MPoly, x: str) -> MPoly:
    """Pseudo-remainder of ``a`` by ``b`` in ``x``: ``lc(b)**(m-n+1) * a mod b``."""
    n = b.degree(x)
    if n < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    m = a.degree(x)
    if m < n:
        return a
    lcb = b.coeff(x, n)
    xpow = {}
    r = a
    e = m - n + 1
    while not r.is_zero():
        dr = r.degree(x)
        if dr < n:
            break
        lcr = r.coeff(x, dr)
        k = dr - n
        if k not in xpow:
            xpow[k] = MPoly.var(x, k)
        r = lcb * r - lcr * xpow[k] * b
        e -= 1
    if e:
        r = r * lcb ** e
    return r


def _pick_main_var(vs: Iterable[str], f: MPoly, g: MPoly) -> str:
    return min(vs, key=lambda v: (max(f.degree(v), g.degree(v)), var_key(v)))


def content(f: MPoly, x: str) -> MPoly:
    """gcd of the coefficients of ``f`` viewed as a polynomial in ``x``."""
    cs = sorted(f.coeffs(x).values(), key=lambda c: len(c.terms))
    if not cs:
        return f
    c = normalize(cs[0])
    for d in cs[1:]:
        if c.is_constant():
            break
        c = _gcd(c, d)
    if c.is_constant():
        return MPoly.const(1, f.vars)
    return normalize(c)


def primitive_part(f: MPoly, x: str) -> MPoly:
    if f.is_zero():
        return f
    return normalize(f.exquo(content(f, x)))


def _subresultant_gcd(a: MPoly, b: MPoly, x: str) -> MPoly:
    # a, b primitive in x with positive degree
    if a.degree(x) < b.degree(x):
        a, b = b, a
    g = h = MPoly.const(1, a.vars)
    while True:
        delta = a.degree(x) - b.degree(x)
        r = prem(a, b, x)
        if r.is_zero():
            break
        if r.degree(x) == 0:
            return MPoly.const(1, a.vars)
        a = b
        b = r.exquo(g * h ** delta)
        g = a.lc(x)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exquo(h ** (delta - 1))
    return primitive_part(b, x)


def _gcd(f: MPoly, g: MPoly) -> MPoly:
    # f, g nonzero; result defined up to a rational unit
    fv, gv = set(f.support_vars()), set(g.support_vars())
    if not fv or not gv:
        return MPoly.const(1, f.vars)
    only_f = fv - gv
    if only_f:
        x = _pick_main_var(only_f, f, g)
        return _gcd(content(f, x), g)
    only_g = gv - fv
    if only_g:
        x = _pick_main_var(only_g, f, g)
        return _gcd(f, content(g, x))
    x = _pick_main_var(fv, f, g)
    cf, cg = content(f, x), content(g, x)
    c = _gcd(cf, cg)
    pf, pg = f.exquo(cf), g.exquo(cg)
    h = _subresultant_gcd(pf, pg, x)
    return c * h


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Primitive gcd with positive leading coefficient; ``gcd(0, g) = normalize(g)``."""
    vars = tuple(sorted(set(f.vars) | set(g.vars), key=var_key))
    f, g = f.with_vars(vars), g.with_vars(vars)
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    return normalize(_gcd(f, g))


def gcd_list(polys: Iterable[MPoly]) -> MPoly:
    out = None
    for p in polys:
        out = p if out is None else poly_gcd(out, p)
        if not out.is_zero() and out.is_constant():
            return normalize(out)
    if out is None:
        raise ValueError("gcd of an empty list")
    return normalize(out)


def resultant(f: MPoly, g: MPoly, x: str) -> MPoly:
    """Resultant in ``x`` (the Sylvester determinant), by the subresultant algorithm."""
    m, n = f.degree(x), g.degree(x)
    if m <= 0 and n <= 0:
        raise ValueError(f"both polynomials are constant in {x}")
    vars = tuple(sorted(set(f.vars) | set(g.vars), key=var_key))
    f, g = f.with_vars(vars), g.with_vars(vars)
    if f.is_zero() or g.is_zero():
        return MPoly.zero(vars)
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    a, b = f, g
    s = 1
    if m < n:
        a, b = b, a
        if m % 2 and n % 2:
            s = -1
    gg = h = MPoly.const(1, vars)
    while True:
        da, db = a.degree(x), b.degree(x)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b, x)
        a = b
        b = r.exquo(gg * h ** delta)
        gg = a.lc(x)
        if delta == 1:
            h = gg
        elif delta > 1:
            h = (gg ** delta).exquo(h ** (delta - 1))
        if b.is_zero():
            return MPoly.zero(vars)
        db = b.degree(x)
        if db == 0:
            da = a.degree(x)
            if da == 1:
                h = b
            else:
                h = (b ** da).exquo(h ** (da - 1))
            return h * s
        if db < 0:
            return MPoly.zero(vars)


def sylvester_matrix(f: MPoly, g: MPoly, x: str) -> list:
    m, n = f.degree(x), g.degree(x)
    fc = [f.coeff(x, k) for k in range(m, -1, -1)]
    gc = [g.coeff(x, k) for k in range(n, -1, -1)]
    size = m + n
    zero = MPoly.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def det_bareiss(matrix: list) -> MPoly:
    """Fraction-free determinant of a square matrix of MPoly entries."""
    n = len(matrix)
    if n == 0:
        return MPoly.const(1)
    a = [[e if isinstance(e, MPoly) else MPoly.const(e) for e in row] for row in matrix]
    sign = 1
    prev = MPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exquo(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant_sylvester(f: MPoly, g: MPoly, x: str) -> MPoly:
    """Resultant as an explicit Sylvester determinant (slower; used as a cross-check)."""
    m, n = f.degree(x), g.degree(x)
    if m <= 0 and n <= 0:
        raise ValueError(f"both polynomials are constant in {x}")
    if f.is_zero() or g.is_zero():
        return MPoly.zero()
    return det_bareiss(sylvester_matrix(f, g, x))


def squarefree_test(f: MPoly, vars: Iterable[str]) -> bool:
    """True iff ``f`` has no repeated factor of positive degree in ``vars``.

    Coefficients in the remaining variables are treated as rational
    functions, so a repeated factor free of ``vars`` does not count.
    """
    if f.is_zero():
        raise ValueError("squarefree_test of the zero polynomial")
    vars = list(vars)
    g = f
    for v in vars:
        g = poly_gcd(g, f.diff(v))
        if g.degree_in(vars) <= 0:
            return True
    return g.degree_in(vars) <= 0


def is_unit(f: MPoly) -> bool:
    return f.is_constant() and not f.is_zero()


__all__ = [
    "normalize",
    "prem",
    "content",
    "primitive_part",
    "poly_gcd",
    "gcd_list",
    "resultant",
    "resultant_sylvester",
    "sylvester_matrix",
    "det_bareiss",
    "squarefree_test",
    "NotDivisible",
    "Rat",
    "ZERO",
]
