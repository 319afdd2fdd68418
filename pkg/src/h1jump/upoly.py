"""Dense univariate polynomials over Q, stored low degree first.

Used for the u-line arithmetic in elimination and for rational roots of
parameter polynomials.  Plain tuples of mpq; the zero polynomial is ``()``.
"""

from __future__ import annotations

import gmpy2

from .poly import MPoly, ONE, ZERO, rat


def trim(a) -> tuple:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def deg(a) -> int:
    return len(a) - 1


def from_mpoly(f: MPoly, var: str) -> tuple:
    others = [v for v in f.support_vars() if v != var]
    if others:
        raise ValueError(f"{f} is not univariate in {var}")
    out = [ZERO] * (f.degree(var) + 1 if not f.is_zero() else 0)
    for k, c in f.coeffs(var).items():
        out[k] = c.constant_value()
    return trim(out)


def to_mpoly(a, var: str) -> MPoly:
    return MPoly({(k,): c for k, c in enumerate(a) if c}, (var,))


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def sub(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO) for i in range(n)])


def scale(a, c):
    c = rat(c)
    return trim([x * c for x in a]) if c else ()


def mul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    db = len(b) - 1
    inv = ONE / b[-1]
    q = [ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return trim(q), trim(a[:db])


def rem(a, b):
    return divmod_(a, b)[1]


def monic(a):
    if not a:
        return a
    inv = ONE / a[-1]
    return tuple(x * inv for x in a)


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = (ONE,), ()
    t0, t1 = (), (ONE,)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), s0, t0
    inv = ONE / r0[-1]
    return monic(r0), scale(s0, inv), scale(t0, inv)


def deriv(a):
    return trim([a[k] * k for k in range(1, len(a))])


def squarefree_part(a):
    a = trim(a)
    if len(a) <= 1:
        return monic(a)
    g = gcd(a, deriv(a))
    return monic(divmod_(a, g)[0])


def evaluate(a, x):
    x = rat(x)
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _divisors(n: int, trial_limit: int = 10 ** 6) -> list:
    n = abs(int(n))
    if n == 0:
        raise ValueError("divisors of zero")
    factors: dict = {}
    p = 2
    while p * p <= n and p <= trial_limit:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        if p * p <= n and not gmpy2.is_prime(n):
            raise ValueError("integer too large to enumerate divisors")
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for prime, k in factors.items():
        divs = [d * prime ** i for d in divs for i in range(k + 1)]
    return sorted(divs)


def rational_roots(a) -> list:
    """Distinct rational roots, ascending (rational root theorem on the square-free part)."""
    a = squarefree_part(trim(a))
    if len(a) <= 1:
        return []
    roots = []
    if not a[0]:
        roots.append(ZERO)
        k = next(i for i, c in enumerate(a) if c)
        a = a[k:]
    den = gmpy2.mpz(1)
    for c in a:
        den = gmpy2.lcm(den, c.denominator)
    ints = [int((c * den).numerator) for c in a]
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for sign in (1, -1):
                    r = gmpy2.mpq(sign * p, q)
                    if r not in roots and not evaluate(a, r):
                        roots.append(r)
    return sorted(roots)


def fmt(a, var: str = "t") -> str:
    return str(to_mpoly(a, var))
