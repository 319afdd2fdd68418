"""Vector bundles on P^1 given by transition matrices on the two standard charts.

Conventions (fixed throughout the package):

* chart 0 has coordinate ``z = z1/z0``, chart 1 has ``w = z0/z1``;
* a section of ``E(d)`` is a pair of polynomial vectors ``(f0(z), f1(w))`` with
  ``f0(z) = z**d * T(z) * f1(1/z)``; the line bundle ``O(d)`` has transition ``z**d``;
* for an extension ``0 -> O(m) -> G -> O(n) -> 0`` the sub-bundle is the first
  basis vector and the quotient the second.

Transition entries may involve one parameter ``t``; most operations need the
parameter specialized first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from . import linalg
from .gcd import det_bareiss
from .poly import (
    LaurentPoly,
    MPoly,
    ONE,
    ZERO,
    Rat,
    parse_laurent,
    rat,
)

Z = "z"
W = "w"
T = "t"

#: retries and degree enlargement when a splitting-type certificate fails
CERT_RETRIES = 5
CERT_STEP = 4


class BundleError(ValueError):
    pass


class CertificateError(BundleError):
    pass


class LiftObstruction(BundleError):
    pass


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, str):
        return parse_laurent(x, Z)
    return LaurentPoly(x, 0, Z)


def _tdict(c: MPoly) -> dict:
    """Split a coefficient polynomial in ``t`` into ``{power: rational}``."""
    out = {}
    for k, v in c.coeffs(T).items():
        if v.support_vars():
            raise BundleError(f"unexpected variables {v.support_vars()} in transition data")
        out[k] = v.constant_value()
    return out


def _laurent_det(rows) -> LaurentPoly:
    shifts = []
    polys = []
    for row in rows:
        nz = [e for e in row if not e.is_zero()]
        if not nz:
            return LaurentPoly(0, 0, Z)
        s = min(e.min_exp() for e in nz)
        shifts.append(s)
        polys.append([(e * LaurentPoly.monomial(-s)).to_mpoly() for e in row])
    return LaurentPoly(det_bareiss(polys), sum(shifts), Z)


@dataclass(frozen=True)
class ExtClassSpec:
    """Extension of ``O(quot_degree)`` by ``O(sub_degree)`` with off-diagonal cocycle."""

    sub_degree: int
    quot_degree: int
    cocycle: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "cocycle", _lp(self.cocycle))

    def class_representative(self) -> LaurentPoly:
        """``cocycle * z**(-n)``, read in H^1(O(m - n))."""
        return self.cocycle * LaurentPoly.monomial(-self.quot_degree)

    def class_coordinates(self) -> dict:
        """Coefficients on the H^1 basis ``z**j``, ``m - n < j < 0``."""
        rep = self.class_representative().zdict()
        lo = self.sub_degree - self.quot_degree
        return {j: c for j, c in rep.items() if lo < j < 0}


@dataclass(frozen=True, eq=False)
class TransitionBundle:
    matrix: tuple
    det_scalar: MPoly
    det_degree: int
    inv_min_exp: int
    extension: ExtClassSpec | None = None
    _tz: tuple = field(default=(), repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __eq__(self, other):
        return isinstance(other, TransitionBundle) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def has_parameter(self) -> bool:
        return any(T in e.body.support_vars() for row in self.matrix for e in row)

    def max_abs_exp(self) -> int:
        out = 0
        for row in self.matrix:
            for e in row:
                if not e.is_zero():
                    out = max(out, abs(e.min_exp()), abs(e.max_exp()))
        return out

    def t_degree(self) -> int:
        return max((e.body.degree(T) for row in self.matrix for e in row if not e.is_zero()), default=0)

    def entry_terms(self):
        """Per entry, a list of ``(z_exp, t_exp, coeff)``; cached."""
        if not self._tz:
            tz = []
            for row in self.matrix:
                trow = []
                for e in row:
                    terms = []
                    for k, c in e.zdict().items():
                        for m, v in _tdict(c).items():
                            terms.append((k, m, v))
                    trow.append(tuple(terms))
                tz.append(tuple(trow))
            object.__setattr__(self, "_tz", tuple(tz))
        return self._tz

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.matrix) + "]"


def _build(matrix, extension=None, det: LaurentPoly | None = None, inv_min_exp: int | None = None):
    rows = tuple(tuple(_lp(e) for e in row) for row in matrix)
    r = len(rows)
    if r == 0 or any(len(row) != r for row in rows):
        raise BundleError("transition matrix must be square and nonempty")
    if det is None:
        det = _laurent_det(rows)
    zd = det.zdict()
    if len(zd) != 1:
        raise BundleError(f"determinant {det} is not of the form gamma*z^k")
    (k, gamma), = zd.items()
    if inv_min_exp is None:
        if r == 1:
            inv_min_exp = -rows[0][0].max_exp()
        else:
            lo = 0
            for i in range(r):
                for j in range(r):
                    minor = [[rows[a][b] for b in range(r) if b != j] for a in range(r) if a != i]
                    cof = _laurent_det(minor)
                    if not cof.is_zero():
                        lo = min(lo, cof.min_exp())
            inv_min_exp = lo - k
    return TransitionBundle(rows, gamma, k, inv_min_exp, extension)


def make_transition_bundle(matrix) -> TransitionBundle:
    """Validate a square Laurent matrix with determinant ``gamma * z**k``."""
    return _build(matrix)


def det_degree(bundle: TransitionBundle) -> int:
    return bundle.det_degree


def make_extension(spec: ExtClassSpec) -> TransitionBundle:
    m, n = spec.sub_degree, spec.quot_degree
    mat = [
        [LaurentPoly.monomial(m), spec.cocycle],
        [LaurentPoly(0, 0, Z), LaurentPoly.monomial(n)],
    ]
    return _build(mat, extension=spec)


def direct_sum(a: TransitionBundle, b: TransitionBundle) -> TransitionBundle:
    zero = LaurentPoly(0, 0, Z)
    rows = [list(row) + [zero] * b.rank for row in a.matrix]
    rows += [[zero] * a.rank + list(row) for row in b.matrix]
    det = LaurentPoly(a.det_scalar * b.det_scalar, a.det_degree + b.det_degree, Z)
    return _build(rows, det=det, inv_min_exp=min(a.inv_min_exp, b.inv_min_exp))


def twist(bundle: TransitionBundle, d: int) -> TransitionBundle:
    zd = LaurentPoly.monomial(d)
    rows = [[e * zd for e in row] for row in bundle.matrix]
    det = LaurentPoly(bundle.det_scalar, bundle.det_degree + bundle.rank * d, Z)
    ext = None
    if bundle.extension is not None:
        s = bundle.extension
        ext = ExtClassSpec(s.sub_degree + d, s.quot_degree + d, s.cocycle * zd)
    return _build(rows, extension=ext, det=det, inv_min_exp=bundle.inv_min_exp - d)


def line_bundle(d: int) -> TransitionBundle:
    return make_transition_bundle([[LaurentPoly.monomial(d)]])


def trivial_bundle(r: int = 1) -> TransitionBundle:
    return _build([[1 if i == j else 0 for j in range(r)] for i in range(r)],
                  det=LaurentPoly(1, 0, Z), inv_min_exp=0)


def specialize_parameter(bundle: TransitionBundle, c) -> TransitionBundle:
    """Substitute ``t = c`` entrywise."""
    c = rat(c)
    gamma = bundle.det_scalar.subs({T: c})
    if gamma.is_zero():
        raise BundleError(f"determinant scalar {bundle.det_scalar} vanishes at t = {c}")
    rows = [[e.subs({T: c}) for e in row] for row in bundle.matrix]
    ext = None
    if bundle.extension is not None:
        s = bundle.extension
        ext = ExtClassSpec(s.sub_degree, s.quot_degree, s.cocycle.subs({T: c}))
    det = LaurentPoly(gamma, bundle.det_degree, Z)
    return _build(rows, extension=ext, det=det, inv_min_exp=bundle.inv_min_exp)


def gauge_transform(bundle: TransitionBundle, g0, g1) -> TransitionBundle:
    """``g0(z) * T(z) * g1(1/z)`` for polynomial matrices ``g0`` in z and ``g1`` in w."""
    r = bundle.rank
    G0 = [[_lp(e) for e in row] for row in g0]
    G1 = [[_w_to_laurent(e if isinstance(e, MPoly) else MPoly.const(e)) for e in row] for row in g1]
    zero = LaurentPoly(0, 0, Z)

    def matmul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(r)), zero) for j in range(r)] for i in range(r)]

    return make_transition_bundle(matmul(matmul(G0, [list(row) for row in bundle.matrix]), G1))


def _w_to_laurent(f: MPoly) -> LaurentPoly:
    """``f(w)`` read at ``w = 1/z``."""
    if f.is_zero():
        return LaurentPoly(0, 0, Z)
    return LaurentPoly.from_zdict({-k: c for k, c in f.coeffs(W).items()})


# -- sections ---------------------------------------------------------------

def _as_poly(x) -> MPoly:
    return x if isinstance(x, MPoly) else MPoly.const(x)


@dataclass(frozen=True, eq=False)
class GlobalSection:
    """Chart data of a section of ``bundle (x) O(twist)``; validated on construction."""

    bundle: TransitionBundle
    twist: int
    f0: tuple
    f1: tuple

    def __post_init__(self):
        f0 = tuple(_as_poly(x) for x in self.f0)
        f1 = tuple(_as_poly(x) for x in self.f1)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "f1", f1)
        r = self.bundle.rank
        if len(f0) != r or len(f1) != r:
            raise BundleError("section length does not match bundle rank")
        for f in f0:
            if W in f.support_vars():
                raise BundleError("chart-0 data must not involve w")
        for f in f1:
            if Z in f.support_vars():
                raise BundleError("chart-1 data must not involve z")
        if transported(self.bundle, self.twist, f1) != tuple(LaurentPoly(f, 0, Z) for f in f0):
            raise BundleError("transition identity f0(z) = z^d T(z) f1(1/z) fails")

    def __eq__(self, other):
        return (
            isinstance(other, GlobalSection)
            and self.twist == other.twist
            and self.bundle == other.bundle
            and self.f0 == other.f0
        )

    def __hash__(self):
        return hash((self.twist, self.f0))

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.f0)

    def __add__(self, other: "GlobalSection") -> "GlobalSection":
        _check_same_owner(self, other)
        return GlobalSection(self.bundle, self.twist,
                             tuple(a + b for a, b in zip(self.f0, other.f0)),
                             tuple(a + b for a, b in zip(self.f1, other.f1)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GlobalSection":
        """Multiply by a rational or a polynomial in the parameter ``t``."""
        c = _as_poly(rat(c) if not isinstance(c, MPoly) else c)
        if set(c.support_vars()) - {T}:
            raise BundleError("sections can only be scaled by polynomials in t")
        return GlobalSection(self.bundle, self.twist,
                             tuple(a * c for a in self.f0), tuple(a * c for a in self.f1))

    def specialize(self, c) -> "GlobalSection":
        c = rat(c)
        return GlobalSection(specialize_parameter(self.bundle, c), self.twist,
                             tuple(a.subs({T: c}) for a in self.f0),
                             tuple(a.subs({T: c}) for a in self.f1))

    def times_line(self, ell: "GlobalSection") -> "GlobalSection":
        """Product with a section of a twisted trivial line bundle ``O(k)``."""
        if ell.bundle != trivial_bundle(1):
            raise BundleError("multiplier must be a section of O(k) on the trivial chart")
        return GlobalSection(self.bundle, self.twist + ell.twist,
                             tuple(a * ell.f0[0] for a in self.f0),
                             tuple(a * ell.f1[0] for a in self.f1))

    def to_dict(self) -> dict:
        return {"twist": self.twist, "f0": [str(f) for f in self.f0], "f1": [str(f) for f in self.f1]}


def _check_same_owner(a: GlobalSection, b: GlobalSection):
    if a.twist != b.twist or a.bundle != b.bundle:
        raise BundleError("sections belong to different bundles or twists")


def transported(bundle: TransitionBundle, d: int, f1) -> tuple:
    """``z**d * T(z) * f1(1/z)`` as a tuple of Laurent polynomials."""
    zd = LaurentPoly.monomial(d)
    v = [_w_to_laurent(_as_poly(f)) for f in f1]
    out = []
    for row in bundle.matrix:
        acc = LaurentPoly(0, 0, Z)
        for e, x in zip(row, v):
            if not e.is_zero() and not x.is_zero():
                acc = acc + e * x
        out.append(acc * zd)
    return tuple(out)


def linear_form_section(alpha, beta) -> GlobalSection:
    """Section ``alpha*z0 + beta*z1`` of O(1): chart data ``(alpha + beta*z, alpha*w + beta)``."""
    alpha, beta = rat(alpha), rat(beta)
    f0 = MPoly.const(alpha) + MPoly.var(Z) * beta
    f1 = MPoly.var(W) * alpha + MPoly.const(beta)
    return GlobalSection(trivial_bundle(1), 1, (f0,), (f1,))


def section_degree_bound(bundle: TransitionBundle, d: int) -> int:
    """Bound on deg_w f1 for sections of ``bundle(d)``.

    From ``f1(1/z) = z**(-d) T(z)**(-1) f0(z)`` with ``f0`` polynomial.
    """
    return max(0, d - bundle.inv_min_exp)


def _section_system(bundle: TransitionBundle, d: int, D: int, Dt: int):
    """Unknowns: coefficient of ``w**j t**l`` in component ``i`` of ``f1``."""
    r = bundle.rank
    tz = bundle.entry_terms()
    nt = Dt + 1

    def idx(i, j, l):
        return (i * (D + 1) + j) * nt + l

    rows: dict = {}
    for row in range(r):
        for i in range(r):
            for (e, m, c) in tz[row][i]:
                for j in range(D + 1):
                    p = d + e - j
                    if p >= 0:
                        continue
                    for l in range(nt):
                        key = (row, p, m + l)
                        eq = rows.setdefault(key, {})
                        u = idx(i, j, l)
                        v = eq.get(u, ZERO) + c
                        if v:
                            eq[u] = v
                        else:
                            eq.pop(u, None)
    ncols = r * (D + 1) * nt
    return [rows[k] for k in sorted(rows)], ncols, idx


def _assemble(bundle, d, D, Dt, vec, idx) -> GlobalSection:
    r = bundle.rank
    f1 = []
    for i in range(r):
        terms = {}
        for j in range(D + 1):
            for l in range(Dt + 1):
                v = vec.get(idx(i, j, l))
                if v:
                    terms[(j, l)] = v
        f1.append(MPoly(terms, (W, T)).trim() if terms else MPoly.zero())
    f0 = tuple(x.to_mpoly() if not x.is_zero() else MPoly.zero() for x in transported(bundle, d, f1))
    return GlobalSection(bundle, d, f0, tuple(f1))


def global_sections(bundle: TransitionBundle, d: int = 0, extra_degree: int = 0) -> list:
    """A basis of H^0(bundle(d)) over Q; the bundle must be parameter-free."""
    if bundle.has_parameter():
        raise BundleError("specialize the parameter before computing global sections")
    D = section_degree_bound(bundle, d) + extra_degree
    rows, ncols, idx = _section_system(bundle, d, D, 0)
    return [_assemble(bundle, d, D, 0, vec, idx) for vec in linalg.nullspace(rows, ncols)]


def h0(bundle: TransitionBundle, d: int = 0, extra_degree: int = 0) -> int:
    if bundle.has_parameter():
        raise BundleError("specialize the parameter before computing h0")
    D = section_degree_bound(bundle, d) + extra_degree
    if D < 0:
        return 0
    rows, ncols, _ = _section_system(bundle, d, D, 0)
    return ncols - linalg.rank(rows, ncols)


def sections_with_parameter(bundle: TransitionBundle, d: int, t_degree: int) -> list:
    """Q-basis of the sections of ``bundle(d)`` whose chart-1 data has t-degree <= t_degree."""
    D = section_degree_bound(bundle, d)
    rows, ncols, idx = _section_system(bundle, d, D, t_degree)
    return [_assemble(bundle, d, D, t_degree, vec, idx) for vec in linalg.nullspace(rows, ncols)]


def splitting_type(bundle: TransitionBundle) -> tuple:
    """Grothendieck splitting type, ascending, from the jumps of h0 under twisting."""
    if bundle.has_parameter():
        raise BundleError("specialize the parameter before computing the splitting type")
    r = bundle.rank
    window = abs(bundle.det_degree) + r * bundle.max_abs_exp() + 6
    extra = 0
    for _ in range(CERT_RETRIES + 1):
        hs = {d: h0(bundle, d, extra) for d in range(-window - 2, window + 1)}
        delta = {d: hs[d] - hs[d - 1] for d in range(-window - 1, window + 1)}
        if delta[-window - 1] != 0 or delta[window] != r:
            extra += CERT_STEP
            continue
        degrees = []
        for d in range(-window, window + 1):
            mult = delta[d] - delta[d - 1]
            if mult < 0:
                break
            degrees.extend([-d] * mult)
        else:
            if len(degrees) == r and sum(degrees) == bundle.det_degree:
                return tuple(sorted(degrees))
        extra += CERT_STEP
    raise CertificateError("degree bound not certified: splitting type does not sum to det degree")


# -- lifts ---------------------------------------------------------------

def lift_section(bundle: TransitionBundle, s) -> GlobalSection:
    """Lift a section ``s`` of the quotient ``O(n)`` of an extension bundle.

    ``s`` is a pair ``(s0(z), s1(w))`` or a rank-one :class:`GlobalSection`.
    """
    spec = bundle.extension
    if spec is None:
        raise BundleError("lift_section needs a bundle built by make_extension")
    if isinstance(s, GlobalSection):
        if s.bundle.rank != 1:
            raise BundleError("s must be a section of a line bundle")
        s0, s1 = s.f0[0], s.f1[0]
    else:
        s0, s1 = (_as_poly(x) for x in s)
    m, n = spec.sub_degree, spec.quot_degree
    if LaurentPoly(s0, 0, Z) != LaurentPoly.monomial(n) * _w_to_laurent(s1):
        raise BundleError(f"s is not a section of O({n})")
    c = spec.cocycle
    known = c * _w_to_laurent(s1)  # contribution of the quotient coordinate
    D = max(0, -m) + max(0, -bundle.inv_min_exp)
    Dt = bundle.t_degree() + max(s0.degree(T), s1.degree(T), 0) + 2
    nt = Dt + 1
    # unknown f1_1 = sum a_{j,l} w^j t^l ; constraint: negative z-powers of z^m f1_1(1/z) + known vanish
    eqs: dict = {}
    rhs: dict = {}
    for j in range(D + 1):
        p = m - j
        if p >= 0:
            continue
        for l in range(nt):
            eqs.setdefault((p, l), {})[j * nt + l] = ONE
    for p, coeff in known.zdict().items():
        if p >= 0:
            continue
        for l, v in _tdict(coeff).items():
            eqs.setdefault((p, l), {})
            rhs[(p, l)] = rhs.get((p, l), ZERO) - v
    keys = sorted(eqs)
    sol = linalg.solve([eqs[k] for k in keys], [rhs.get(k, ZERO) for k in keys], (D + 1) * nt)
    if sol is None:
        raise LiftObstruction("obstruction nonzero: s does not lift")
    terms = {(u // nt, u % nt): v for u, v in sol.items()}
    f11 = MPoly(terms, (W, T)).trim() if terms else MPoly.zero()
    f1 = (f11, s1)
    f0 = tuple(x.to_mpoly() if not x.is_zero() else MPoly.zero() for x in transported(bundle, 0, f1))
    return GlobalSection(bundle, 0, f0, f1)


# -- symmetric powers -----------------------------------------------------

def sym_basis(r: int, k: int) -> list:
    """Exponent vectors of degree-k monomials in r variables, lexicographically descending."""
    if r == 1:
        return [(k,)]
    out = []
    for a in range(k, -1, -1):
        out.extend((a,) + rest for rest in sym_basis(r - 1, k - a))
    return out


def _evars(r: int) -> tuple:
    return tuple(f"_e{i + 1}" for i in range(r))


def _split_frame(poly: MPoly, evars: tuple) -> dict:
    """Split a polynomial in frame variables into ``{exponent: coefficient}``."""
    idx = [poly.vars.index(v) if v in poly.vars else None for v in evars]
    rest_vars = tuple(v for v in poly.vars if v not in evars)
    rest_idx = [poly.vars.index(v) for v in rest_vars]
    out: dict = {}
    for e, c in poly.terms.items():
        key = tuple(e[i] if i is not None else 0 for i in idx)
        out.setdefault(key, {})[tuple(e[i] for i in rest_idx)] = c
    return {k: MPoly(v, rest_vars) for k, v in out.items()}


@functools.lru_cache(maxsize=64)
def sym_power_transition(bundle: TransitionBundle, k: int) -> TransitionBundle:
    """Transition of Sym^k on the basis :func:`sym_basis` of the rank-r frame."""
    r = bundle.rank
    if k < 0:
        raise BundleError("negative symmetric power")
    basis = sym_basis(r, k)
    pos = {b: i for i, b in enumerate(basis)}
    ev = _evars(r)
    # column j of T is the image of the j-th chart-1 basis vector
    shift = min((e.min_exp() for row in bundle.matrix for e in row if not e.is_zero()), default=0)
    cols = []
    for j in range(r):
        acc = MPoly.zero()
        for i in range(r):
            e = bundle.matrix[i][j]
            if not e.is_zero():
                acc = acc + (e * LaurentPoly.monomial(-shift)).to_mpoly() * MPoly.var(ev[i])
        cols.append(acc)
    n = len(basis)
    zero = LaurentPoly(0, 0, Z)
    mat = [[zero] * n for _ in range(n)]
    powcache: dict = {}
    for a in basis:
        prod = MPoly.const(1)
        for j, aj in enumerate(a):
            if aj:
                key = (j, aj)
                if key not in powcache:
                    powcache[key] = cols[j] ** aj
                prod = prod * powcache[key]
        for b, coeff in _split_frame(prod, ev).items():
            mat[pos[b]][pos[a]] = LaurentPoly(coeff, shift * k, Z)
    N = comb(r + k - 1, k)
    power = k * N // r
    det = LaurentPoly(bundle.det_scalar ** power, bundle.det_degree * power, Z)
    return _build(mat, det=det, inv_min_exp=k * bundle.inv_min_exp)


def _frame_product(vectors: Sequence, ev: tuple) -> dict:
    prod = MPoly.const(1)
    for vec in vectors:
        lin = MPoly.zero()
        for x, e in zip(vec, ev):
            if not x.is_zero():
                lin = lin + x * MPoly.var(e)
        prod = prod * lin
    return _split_frame(prod, ev)


def section_sym_product(sections: Sequence[GlobalSection]) -> GlobalSection:
    """Product of k sections of the same bundle, as a section of Sym^k."""
    if not sections:
        raise BundleError("need at least one section")
    bundle = sections[0].bundle
    for s in sections[1:]:
        if s.bundle != bundle:
            raise BundleError("sections belong to different bundles")
    k = len(sections)
    r = bundle.rank
    ev = _evars(r)
    basis = sym_basis(r, k)
    p0 = _frame_product([s.f0 for s in sections], ev)
    p1 = _frame_product([s.f1 for s in sections], ev)
    zero = MPoly.zero()
    f0 = tuple(p0.get(b, zero) for b in basis)
    f1 = tuple(p1.get(b, zero) for b in basis)
    return GlobalSection(sym_power_transition(bundle, k), sum(s.twist for s in sections), f0, f1)


def sym_degree_of(section: GlobalSection, base: TransitionBundle) -> int:
    """The k with ``section.bundle == Sym^k(base)``."""
    r = base.rank
    k = 0
    while comb(r + k - 1, k) < section.bundle.rank:
        k += 1
    if comb(r + k - 1, k) != section.bundle.rank or sym_power_transition(base, k) != section.bundle:
        raise BundleError("section is not a section of a symmetric power of the frame bundle")
    return k


# -- frames -----------------------------------------------------------------

def trivialization_frame(bundle: TransitionBundle) -> list:
    """Global sections forming a frame of a trivial bundle (chart-0 determinant constant)."""
    st = splitting_type(bundle)
    if any(st):
        raise BundleError(f"bundle is not trivial: splitting type {st}")
    frame = global_sections(bundle, 0)
    M = [[frame[j].f0[i] for j in range(len(frame))] for i in range(bundle.rank)]
    det = det_bareiss(M)
    if det.is_zero() or not det.is_constant():
        raise BundleError("global sections do not form a frame")
    return frame


def _adjugate_inverse(M: list) -> list:
    n = len(M)
    det = det_bareiss(M)
    if det.is_zero() or not det.is_constant():
        raise BundleError("frame matrix is not unimodular")
    dv = det.constant_value()
    if n == 1:
        return [[MPoly.const(ONE / dv)]]
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            cof = det_bareiss(minor) * (-1 if (i + j) % 2 else 1)
            inv[j][i] = cof / dv
    return inv


def frame_variables(r: int) -> tuple:
    return tuple(f"x{i + 1}" for i in range(r))


def change_frame(section: GlobalSection, frame: Sequence[GlobalSection]) -> MPoly:
    """Bihomogeneous form in ``z0, z1; x1..xr`` of a section of Sym^k(E)(b).

    ``x_i`` is the coordinate dual to the i-th frame section.  Both charts are
    converted and must agree.
    """
    base = frame[0].bundle
    r = base.rank
    k = sym_degree_of(section, base)
    b = section.twist
    xs = [MPoly.var(x) for x in frame_variables(r)]
    basis = sym_basis(r, k)
    forms = []
    for chart, data, var in ((0, section.f0, Z), (1, section.f1, W)):
        M = [[(frame[j].f0 if chart == 0 else frame[j].f1)[i] for j in range(r)] for i in range(r)]
        Minv = _adjugate_inverse(M)
        # e_i = sum_j Minv[j][i] x_j
        images = [sum((Minv[j][i] * xs[j] for j in range(r)), MPoly.zero()) for i in range(r)]
        F = MPoly.zero()
        powcache: dict = {}
        for alpha, coeff in zip(basis, data):
            if coeff.is_zero():
                continue
            term = coeff
            for i, ai in enumerate(alpha):
                if ai:
                    if (i, ai) not in powcache:
                        powcache[(i, ai)] = images[i] ** ai
                    term = term * powcache[(i, ai)]
            F = F + term
        if F.degree(var) > b:
            raise BundleError("chart data exceeds the twist degree")
        hom = MPoly.zero()
        for p, c in F.coeffs(var).items():
            if chart == 0:
                mono = MPoly.var("z0", b - p) * MPoly.var("z1", p)
            else:
                mono = MPoly.var("z0", p) * MPoly.var("z1", b - p)
            hom = hom + c * mono
        forms.append(hom)
    if forms[0] != forms[1]:
        raise BundleError("chart disagreement in change of frame")
    return forms[0]
