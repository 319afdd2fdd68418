"""Exact certificates: smoothness of bidegree-(1,4) hypersurfaces in P^1 x P^2,
fibrewise nonvanishing and generic square-freeness of the special fibre.

Emptiness of a singular locus is decided by elimination, never by sampling.
A rational-point search may only ever report *presence* of a singular point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import gcd as igcd
from typing import Iterable, Sequence

from . import upoly
from .gcd import gcd_list, resultant, squarefree_test
from .poly import MPoly, ZERO, as_poly, rat, var_key

XVARS = ("x1", "x2", "x3")


class EliminationError(RuntimeError):
    pass


class ZeroDivisorFound(Exception):
    def __init__(self, factor):
        super().__init__("zero divisor")
        self.factor = factor


# -- linear forms ------------------------------------------------------------

@dataclass(frozen=True)
class LinearFormPair:
    """The linear form ``alpha*z0 + beta*z1`` on P^1."""

    alpha: object
    beta: object

    def __post_init__(self):
        a, b = rat(self.alpha), rat(self.beta)
        if not a and not b:
            raise ValueError("linear form (0, 0) is not a section")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def parse(cls, value) -> "LinearFormPair":
        """From ``[alpha, beta]`` or a string such as ``"z0 + 2*z1"``."""
        if isinstance(value, LinearFormPair):
            return value
        if isinstance(value, str):
            f = as_poly(value)
            if set(f.support_vars()) - {"z0", "z1"} or f.degree() != 1 or not f.is_homogeneous():
                raise ValueError(f"{value!r} is not a linear form in z0, z1")
            return cls(f.coeff("z0", 1).constant_value() if "z0" in f.vars else 0,
                       f.coeff("z1", 1).constant_value() if "z1" in f.vars else 0)
        alpha, beta = value
        return cls(alpha, beta)

    def poly(self) -> MPoly:
        return MPoly.var("z0") * self.alpha + MPoly.var("z1") * self.beta

    def at(self, z0, z1):
        return self.alpha * rat(z0) + self.beta * rat(z1)

    def __str__(self):
        return str(self.poly())


def linear_resultant(p: LinearFormPair, q: LinearFormPair):
    """Homogeneous resultant of two linear forms (zero iff they share a zero on P^1)."""
    return p.alpha * q.beta - p.beta * q.alpha


def _check_distinct(a, b, s):
    for (n1, p), (n2, q) in itertools.combinations((("a", a), ("b", b), ("s", s)), 2):
        if not linear_resultant(p, q):
            raise ValueError(f"sections not distinct: {n1} and {n2} are proportional")


def fiberwise_nonvanishing(a: LinearFormPair, b: LinearFormPair, s: LinearFormPair) -> bool:
    """a and b*s^4 have no common zero on P^1, certified by Res(a,b), Res(a,s) != 0."""
    a, b, s = (LinearFormPair.parse(x) for x in (a, b, s))
    _check_distinct(a, b, s)
    return bool(linear_resultant(a, b)) and bool(linear_resultant(a, s))


def special_fiber_polynomial(a, b, s, chart: int = 0) -> MPoly:
    """``a*v^4 + b*s^4*w^4`` restricted to the chart z0 = 1 (or z1 = 1), coordinate beta."""
    beta = MPoly.var("beta")
    one = MPoly.const(1)

    def restrict(f: LinearFormPair):
        return f.alpha * one + f.beta * beta if chart == 0 else f.alpha * beta + f.beta * one

    v, w = MPoly.var("v"), MPoly.var("w")
    return restrict(a) * v ** 4 + restrict(b) * restrict(s) ** 4 * w ** 4


def generic_fiber_squarefree(a, b, s) -> bool:
    a, b, s = (LinearFormPair.parse(x) for x in (a, b, s))
    _check_distinct(a, b, s)
    return all(squarefree_test(special_fiber_polynomial(a, b, s, c), ["v", "w"]) for c in (0, 1))


# -- forms on P^1 x P^2 --------------------------------------------------------

@dataclass(frozen=True)
class Bidegree14Form:
    """``z0*g0(x) + z1*g1(x)`` with quartic forms g0, g1 in x1, x2, x3."""

    g0: MPoly
    g1: MPoly

    def __post_init__(self):
        g0, g1 = as_poly(self.g0), as_poly(self.g1)
        for g in (g0, g1):
            if set(g.support_vars()) - set(XVARS):
                raise ValueError(f"{g} must be a form in x1, x2, x3")
            if not g.is_zero() and not (g.is_homogeneous() and g.degree() == 4):
                raise ValueError(f"{g} is not a quartic form")
        if g0.is_zero() and g1.is_zero():
            raise ValueError("the form is identically zero")
        object.__setattr__(self, "g0", g0)
        object.__setattr__(self, "g1", g1)

    @classmethod
    def from_form(cls, F: MPoly) -> "Bidegree14Form":
        if F.degree_in(["z0", "z1"]) != 1 or not F.is_homogeneous(["z0", "z1"]):
            raise ValueError("not of degree 1 in z0, z1")
        return cls(F.coeff("z0", 1).coeff("z1", 0).trim(), F.coeff("z1", 1).coeff("z0", 0).trim())

    def form(self) -> MPoly:
        return MPoly.var("z0") * self.g0 + MPoly.var("z1") * self.g1

    def singular_system(self) -> list:
        """g0, g1 and the 2x2 minors of the Jacobian of (g0, g1) in x1, x2, x3."""
        d0 = [self.g0.diff(x) for x in XVARS]
        d1 = [self.g1.diff(x) for x in XVARS]
        minors = [d0[i] * d1[j] - d0[j] * d1[i] for i, j in ((0, 1), (0, 2), (1, 2))]
        return [self.g0, self.g1] + minors


# -- arithmetic in (Q[u]/m)[v] -------------------------------------------------

def _inverse_mod(c, m):
    g, s, _ = upoly.xgcd(c, m)
    if len(g) > 1:
        raise ZeroDivisorFound(g)
    return upoly.rem(s, m)


def _strip(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _monic_mod(p, m):
    inv = _inverse_mod(p[-1], m)
    return [upoly.rem(upoly.mul(c, inv), m) for c in p[:-1]] + [(rat(1),)]


def _rem_mod(a, b, m):
    # b monic
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c:
            for j in range(db + 1):
                a[k + j] = upoly.rem(upoly.sub(a[k + j], upoly.mul(c, b[j])), m)
    return _strip(a[:db])


def _gcd_degree_mod(polys, m) -> int:
    """Degree in v of the gcd over Q[u]/m, valid at every root of m, or -1 for 'all zero'."""
    reduced = []
    for p in polys:
        q = _strip([upoly.rem(c, m) for c in p])
        if q:
            reduced.append(q)
    if not reduced:
        return -1
    g = _monic_mod(reduced[0], m)
    for p in reduced[1:]:
        if len(g) == 1:
            return 0
        a, b = p, g
        while b:
            b = _monic_mod(b, m)
            a, b = b, _rem_mod(a, b, m)
        g = _monic_mod(a, m)
    return len(g) - 1


def _branches(polys, m, trace) -> list:
    try:
        d = _gcd_degree_mod(polys, m)
        trace.setdefault("branches", []).append({"modulus_degree": len(m) - 1, "gcd_degree": d})
        return [(m, d)]
    except ZeroDivisorFound as z:
        f = upoly.monic(z.factor)
        other = upoly.monic(upoly.divmod_(m, f)[0])
        return _branches(polys, f, trace) + _branches(polys, other, trace)


def _to_uv(p: MPoly, u: str, v: str) -> list:
    out = []
    cs = p.coeffs(v)
    for k in range(p.degree(v) + 1):
        c = cs.get(k)
        out.append(upoly.from_mpoly(c, u) if c is not None else ())
    return out


def bivariate_common_zero_exists(polys: Sequence, *, seed: int = 0, rng: random.Random | None = None,
                                 max_shears: int = 64, trace: dict | None = None) -> bool:
    """Decide whether polynomials in two variables share a zero over the algebraic closure."""
    trace = {} if trace is None else trace
    rng = rng or random.Random(seed)
    ps = [as_poly(p) for p in polys]
    if not ps:
        raise ValueError("need at least one polynomial")
    nonzero = [p for p in ps if not p.is_zero()]
    if not nonzero:
        raise ValueError("all polynomials are zero")
    support = sorted({x for p in nonzero for x in p.support_vars()}, key=var_key)
    if len(support) > 2:
        raise ValueError(f"expected two variables, got {support}")
    if any(p.is_constant() for p in nonzero):
        trace["reason"] = "nonzero constant"
        return False
    G = gcd_list(nonzero)
    if not G.is_constant():
        trace["reason"] = "common factor"
        trace["common_factor"] = str(G)
        return True
    if len(support) < 2:
        trace["reason"] = "coprime univariate"
        return False
    u, v = support
    # shear u -> u + lam*v until some input has constant leading coefficient in v
    for attempt in range(max_shears):
        lam = rng.randint(-(3 + attempt), 3 + attempt)
        sheared = [p.subs({u: MPoly.var(u) + MPoly.var(v) * lam}) if lam else p for p in nonzero]
        good = [h for h in sheared if h.lc(v).is_constant()]
        if good:
            break
    else:
        raise EliminationError("shear retry cap exceeded")
    trace.setdefault("shears", []).append(lam)
    h1 = min(good, key=lambda h: (h.degree(v), len(h.terms)))
    others = [h for h in sheared if h is not h1]
    others.sort(key=lambda h: (h.degree(), len(h.terms)))
    R = ()
    for h in others:
        r = upoly.from_mpoly(resultant(h1, h, v), u)
        if r:
            R = upoly.gcd(R, r) if R else upoly.monic(r)
            if len(R) == 1:
                trace["reason"] = "resultant gcd is constant"
                return False
    tries = 0
    while not R:
        tries += 1
        if tries > max_shears:
            raise EliminationError("could not find a nonvanishing resultant")
        combo = MPoly.zero()
        for h in others:
            combo = combo + h * rng.randint(1, 10 * tries)
        R = upoly.from_mpoly(resultant(h1, combo, v), u)
        if R and len(R) == 1:
            trace["reason"] = "resultant is constant"
            return False
    m = upoly.squarefree_part(R)
    trace["candidate_degree"] = len(m) - 1
    uv = [_to_uv(h, u, v) for h in sheared]
    for _, d in _branches(uv, m, trace):
        if d != 0:
            trace["reason"] = "common root above a candidate"
            return True
    trace["reason"] = "no common root above candidates"
    return False


# -- singular locus of z0*g0 + z1*g1 ----------------------------------------------

def _eval_int(p: MPoly, point: dict):
    vals = [point[x] for x in p.vars]
    acc = ZERO
    for e, c in p.terms.items():
        t = c
        for x, k in zip(vals, e):
            if k:
                t = t * x ** k
        acc += t
    return acc


def _projective_points(bound: int):
    rng = range(-bound, bound + 1)
    for pt in itertools.product(rng, repeat=3):
        if not any(pt):
            continue
        first = next(x for x in pt if x)
        if first < 0 or igcd(igcd(pt[0], pt[1]), pt[2]) != 1:
            continue
        yield pt


def rational_singular_point(form: Bidegree14Form, bound: int = 2):
    """Fast path: a small integer point of P^2 where g0, g1 and all minors vanish."""
    system = form.singular_system()
    for pt in _projective_points(bound):
        point = dict(zip(XVARS, (rat(x) for x in pt)))
        if all(p.is_zero() or not _eval_int(p, point) for p in system):
            return pt
    return None


def singular_z_point(form: Bidegree14Form, x_point) -> tuple:
    """A ``[z0:z1]`` making ``([z], x_point)`` singular (kernel of the Jacobian)."""
    point = dict(zip(XVARS, (rat(x) for x in x_point)))
    r0 = [_eval_int(form.g0.diff(x), point) for x in XVARS]
    r1 = [_eval_int(form.g1.diff(x), point) for x in XVARS]
    # z0*r0 + z1*r1 = 0
    if any(r1):
        i = next(k for k, x in enumerate(r1) if x)
        return (r1[i], -r0[i])
    if any(r0):
        return (0, 1)
    return (1, 0)


@dataclass
class SmoothnessResult:
    smooth: bool
    method: str
    witness: tuple | None = None
    charts: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"smooth": self.smooth, "method": self.method, "charts": self.charts}
        if self.witness is not None:
            out["witness"] = [str(x) for x in self.witness]
        return out


def certify_smoothness(form: Bidegree14Form, *, seed: int = 0, fast_path: bool = True,
                       chart_order: Iterable[int] = (0, 1, 2)) -> SmoothnessResult:
    """Decide smoothness of ``z0*g0 + z1*g1 = 0`` in P^1 x P^2 exactly."""
    if fast_path:
        pt = rational_singular_point(form)
        if pt is not None:
            zpt = singular_z_point(form, pt)
            return SmoothnessResult(False, "rational point", tuple(zpt) + tuple(pt))
    system = [p for p in form.singular_system() if not p.is_zero()]
    rng = random.Random(seed)
    charts = []
    singular = False
    for j in chart_order:
        xj = XVARS[j]
        restricted = [p.subs({xj: 1}) for p in system]
        trace = {"chart": xj}
        found = bivariate_common_zero_exists(restricted, rng=rng, trace=trace)
        trace["common_zero"] = found
        charts.append(trace)
        singular = singular or found
    return SmoothnessResult(not singular, "elimination", None, charts)


def singular_locus_empty(form: Bidegree14Form, *, seed: int = 0) -> bool:
    return certify_smoothness(form, seed=seed).smooth
