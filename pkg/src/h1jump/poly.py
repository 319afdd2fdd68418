"""Exact rationals, sparse multivariate polynomials and Laurent polynomials.

Coefficients are ``gmpy2.mpq`` values.  Every polynomial carries a tuple of
variable names kept in the global order :data:`VAR_ORDER`; binary operations
merge variable lists by name, so ``x + y`` works whatever the operands were
declared over.

Terms are ordered graded-lexicographically over the declared variable order,
which fixes the output of :func:`str` and therefore of every report.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import gmpy2

Rat = type(gmpy2.mpq())

VAR_ORDER = ("z0", "z1", "x1", "x2", "x3", "z", "t", "u", "v", "w", "beta")
_VAR_RANK = {name: i for i, name in enumerate(VAR_ORDER)}

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def var_key(name: str):
    """Sort key placing the fixed alphabet first, then other names alphabetically."""
    rank = _VAR_RANK.get(name)
    return (0, rank, "") if rank is not None else (1, 0, name)


def rat(x) -> Rat:
    """Coerce ``x`` (int, str like ``"5/2"``, Fraction, mpq) to an exact rational."""
    if isinstance(x, Rat):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, type(gmpy2.mpz()))):
        return gmpy2.mpq(x)
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ValueError(f"not a rational literal: {x!r}")
        return gmpy2.mpq(s)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _is_scalar(x) -> bool:
    return isinstance(x, (Rat, int, type(gmpy2.mpz()), Fraction)) and not isinstance(x, bool)


def _grlex(e):
    return (sum(e), e)


class NotDivisible(ArithmeticError):
    pass


class MPoly:
    """Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    rationals.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_canon")

    def __init__(self, terms: Mapping | None = None, vars: Iterable[str] = ()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variables in {vars}")
        order = sorted(range(len(vars)), key=lambda i: var_key(vars[i]))
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(vars):
                raise ValueError("exponent vector length does not match variables")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent in MPoly")
            c = rat(c)
            if c:
                key = tuple(e[i] for i in order)
                c = clean.get(key, ZERO) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.vars = tuple(vars[i] for i in order)
        self.terms = clean
        self._canon = None

    @classmethod
    def _new(cls, vars: tuple, terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._canon = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c, vars: Iterable[str] = ()) -> "MPoly":
        vars = tuple(sorted(vars, key=var_key))
        c = rat(c)
        return cls._new(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        if power < 0:
            raise ValueError("negative exponent in MPoly")
        return cls._new((name,), {(power,): ONE})

    @classmethod
    def zero(cls, vars: Iterable[str] = ()) -> "MPoly":
        return cls._new(tuple(sorted(vars, key=var_key)), {})

    @classmethod
    def one(cls, vars: Iterable[str] = ()) -> "MPoly":
        return cls.const(1, vars)

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Rat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values())) if self.terms else ZERO

    def constant_term(self) -> Rat:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def support_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def trim(self) -> "MPoly":
        """Drop variables that do not occur."""
        keep = self.support_vars()
        if keep == self.vars:
            return self
        idx = [self.vars.index(v) for v in keep]
        return MPoly._new(keep, {tuple(e[i] for i in idx): c for e, c in self.terms.items()})

    def with_vars(self, vars: Iterable[str]) -> "MPoly":
        """Re-express over a superset of the current variables."""
        vars = tuple(sorted(set(vars) | set(self.vars), key=var_key))
        return MPoly._new(vars, self._lift(vars))

    def _lift(self, vars: tuple) -> dict:
        if vars == self.vars:
            return self.terms
        n = len(vars)
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return out

    def _align(self, other: "MPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))
        return vars, self._lift(vars), other._lift(vars)

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if _is_scalar(other):
            return MPoly.const(other, self.vars)
        return NotImplemented

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if omitted); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        if not self.terms or var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def degree_in(self, vars: Iterable[str]) -> int:
        """Total degree in a subset of variables."""
        idx = [self.vars.index(v) for v in vars if v in self.vars]
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    def is_homogeneous(self, vars: Iterable[str] | None = None) -> bool:
        if not self.terms:
            return True
        if vars is None:
            degs = {sum(e) for e in self.terms}
        else:
            idx = [self.vars.index(v) for v in vars if v in self.vars]
            degs = {sum(e[i] for i in idx) for e in self.terms}
        return len(degs) == 1

    def coeff(self, var: str, k: int) -> "MPoly":
        """Coefficient of ``var**k``, a polynomial not involving ``var``."""
        if var not in self.vars:
            return self if k == 0 else MPoly._new(self.vars, {})
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MPoly._new(self.vars, out)

    def coeffs(self, var: str) -> dict:
        """Map ``k -> coefficient of var**k`` (only nonzero coefficients)."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        buckets: dict = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MPoly._new(self.vars, d) for k, d in buckets.items()}

    def lc(self, var: str) -> "MPoly":
        return self.coeff(var, self.degree(var))

    def leading_exponent(self) -> tuple:
        return max(self.terms, key=_grlex)

    def leading_coefficient(self) -> Rat:
        """Coefficient of the grlex-largest term."""
        if not self.terms:
            return ZERO
        return self.terms[self.leading_exponent()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return MPoly._new(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        vars, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._new(vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = rat(other)
            if not c:
                return MPoly._new(self.vars, {})
            return MPoly._new(self.vars, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        vars, a, b = self._align(other)
        out: dict = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, ZERO) + c1 * c2
        return MPoly._new(vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            c = rat(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return MPoly._new(self.vars, {e: v / c for e, v in self.terms.items()})
        if isinstance(other, MPoly):
            return self.exquo(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k < 0:
            raise ValueError("negative exponent in polynomial power")
        result = MPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exquo(self, g: "MPoly") -> "MPoly":
        """Exact quotient ``self / g``; raises :class:`NotDivisible` otherwise."""
        if not g.terms:
            raise ZeroDivisionError("polynomial division by zero")
        vars, rem, gt = self._align(g)
        if g.is_constant():
            c = next(iter(gt.values()))
            return MPoly._new(vars, {e: v / c for e, v in rem.items()})
        rem = dict(rem)
        eg = max(gt, key=_grlex)
        cg = gt[eg]
        gitems = list(gt.items())
        quot = {}
        while rem:
            er = max(rem, key=_grlex)
            shift = tuple(x - y for x, y in zip(er, eg))
            if min(shift) < 0:
                raise NotDivisible("polynomial division is not exact")
            qc = rem[er] / cg
            quot[shift] = qc
            for e, c in gitems:
                key = tuple(x + y for x, y in zip(e, shift))
                v = rem.get(key, ZERO) - qc * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return MPoly._new(vars, quot)

    def divides(self, f: "MPoly") -> bool:
        try:
            f.exquo(self)
        except NotDivisible:
            return False
        return True

    # -- calculus and substitution ---------------------------------------
    def diff(self, var: str) -> "MPoly":
        if var not in self.vars:
            return MPoly._new(self.vars, {})
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MPoly._new(self.vars, out)

    def subs(self, bindings: Mapping[str, object]) -> "MPoly":
        """Substitute rationals or polynomials for variables."""
        bindings = {k: v for k, v in bindings.items() if k in self.vars}
        if not bindings:
            return self
        keep = tuple(v for v in self.vars if v not in bindings)
        keep_idx = [self.vars.index(v) for v in keep]
        scal = {}
        polys = {}
        for name, value in bindings.items():
            if isinstance(value, MPoly):
                if value.is_constant():
                    scal[self.vars.index(name)] = value.constant_value()
                else:
                    polys[self.vars.index(name)] = value
            else:
                scal[self.vars.index(name)] = rat(value)
        # scalar part first: collapses terms
        partial: dict = {}
        pow_cache: dict = {}
        for e, c in self.terms.items():
            for i, val in scal.items():
                k = e[i]
                if k:
                    key = (i, k)
                    p = pow_cache.get(key)
                    if p is None:
                        p = pow_cache[key] = val ** k
                    c = c * p
                    if not c:
                        break
            if not c:
                continue
            key = (tuple(e[i] for i in keep_idx), tuple(e[i] for i in sorted(polys)))
            partial[key] = partial.get(key, ZERO) + c
        base = MPoly._new(keep, {})
        if not polys:
            return MPoly._new(keep, {k[0]: c for k, c in partial.items() if c})
        order = sorted(polys)
        ppow: dict = {}
        result = base
        grouped: dict = {}
        for (ek, ep), c in partial.items():
            if c:
                grouped.setdefault(ep, {})[ek] = c
        for ep, terms in grouped.items():
            factor = MPoly._new(keep, terms)
            for i, k in zip(order, ep):
                if k:
                    key = (i, k)
                    p = ppow.get(key)
                    if p is None:
                        p = ppow[key] = polys[i] ** k
                    factor = factor * p
            result = result + factor
        return result

    def __call__(self, **values):
        return self.subs(values)

    def evaluate(self, point: Mapping[str, object]) -> Rat:
        """Evaluate at a point assigning every occurring variable."""
        r = self.subs(point)
        if not r.is_constant():
            raise ValueError(f"unassigned variables {r.support_vars()}")
        return r.constant_value()

    def map_coeffs(self, fn: Callable) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            c = rat(fn(c))
            if c:
                out[e] = c
        return MPoly._new(self.vars, out)

    # -- equality / hashing / printing -----------------------------------
    def canonical(self) -> frozenset:
        if self._canon is None:
            self._canon = frozenset(
                (tuple((v, k) for v, k in zip(self.vars, e) if k), c) for e, c in self.terms.items()
            )
        return self._canon

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            return self.canonical() == other.canonical()
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == rat(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r})"


def _format_term(c: Rat, names: list) -> str:
    mono = "*".join(names)
    if not mono:
        return str(abs(c))
    if abs(c) == 1:
        return mono
    return f"{abs(c)}*{mono}"


def format_poly(f: MPoly) -> str:
    """Canonical text: terms in descending grlex order, e.g. ``z0*x2^4 + z1*x3^4``."""
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        names = [v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k]
        body = _format_term(c, names)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# -- Laurent polynomials in one distinguished variable --------------------

class LaurentPoly:
    """``var**shift * body`` with ``body`` an MPoly not divisible by ``var``."""

    __slots__ = ("var", "shift", "body")

    def __init__(self, body: MPoly | int | Rat = 0, shift: int = 0, var: str = "z"):
        if not isinstance(body, MPoly):
            body = MPoly.const(body)
        self.var = var
        if body.is_zero():
            self.shift, self.body = 0, body
            return
        k = body.min_degree(var)
        if k:
            i = body.vars.index(var)
            body = MPoly._new(
                body.vars,
                {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in body.terms.items()},
            )
        self.shift = shift + k
        self.body = body

    @classmethod
    def monomial(cls, k: int, coeff=1, var: str = "z") -> "LaurentPoly":
        c = coeff if isinstance(coeff, MPoly) else MPoly.const(coeff)
        return cls(c, k, var)

    @classmethod
    def from_zdict(cls, d: Mapping[int, object], var: str = "z") -> "LaurentPoly":
        d = {k: (c if isinstance(c, MPoly) else MPoly.const(c)) for k, c in d.items()}
        d = {k: c for k, c in d.items() if not c.is_zero()}
        if not d:
            return cls(0, 0, var)
        lo = min(d)
        body = MPoly.zero()
        for k, c in d.items():
            body = body + c * MPoly.var(var, k - lo)
        return cls(body, lo, var)

    def zdict(self) -> dict:
        """Map exponent of ``var`` to its coefficient polynomial."""
        return {k + self.shift: c for k, c in self.body.coeffs(self.var).items()}

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def min_exp(self) -> int:
        return self.shift

    def max_exp(self) -> int:
        return self.shift + self.body.degree(self.var)

    def is_polynomial(self) -> bool:
        return self.is_zero() or self.shift >= 0

    def to_mpoly(self) -> MPoly:
        if self.shift < 0 and not self.is_zero():
            raise ValueError(f"{self} has negative powers of {self.var}")
        return self.body * MPoly.var(self.var, self.shift) if self.shift else self.body

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise ValueError("Laurent variables differ")
            return other
        if isinstance(other, MPoly) or _is_scalar(other):
            return LaurentPoly(other, 0, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.shift, other.shift)
        a = self.body * MPoly.var(self.var, self.shift - lo)
        b = other.body * MPoly.var(self.var, other.shift - lo)
        return LaurentPoly(a + b, lo, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.body, self.shift, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.body * other.body, self.shift + other.shift, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k >= 0:
            return LaurentPoly(self.body ** k, self.shift * k, self.var)
        if self.body == 1:
            return LaurentPoly(self.body, self.shift * k, self.var)
        raise ValueError("negative powers are only defined for monomials in the Laurent variable")

    def subs(self, bindings: Mapping[str, object]):
        """Substitute; binding the Laurent variable itself returns an MPoly."""
        if self.var in bindings:
            val = bindings[self.var]
            if not isinstance(val, MPoly):
                val = rat(val)
                if self.shift < 0 and not val and not self.is_zero():
                    raise ZeroDivisionError(f"{self.var}=0 substituted into a negative power")
                factor = val ** self.shift if val else (ONE if self.shift == 0 else ZERO)
                return self.body.subs(bindings) * factor
            if self.shift < 0:
                raise ValueError("cannot substitute a polynomial into a negative power")
            return self.to_mpoly().subs(bindings)
        return LaurentPoly(self.body.subs(bindings), self.shift, self.var)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ValueError:
            return False
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.shift == other.shift and self.body == other.body

    def __hash__(self):
        return hash((self.var, self.shift, self.body))

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.shift == 0:
            return format_poly(self.body)
        parts = []
        i = self.body.vars.index(self.var) if self.var in self.body.vars else None
        for e, c in self.body.sorted_terms():
            names = []
            for v, k in zip(self.body.vars, e):
                if v == self.var:
                    continue
                if k:
                    names.append(v if k == 1 else f"{v}^{k}")
            zk = (e[i] if i is not None else 0) + self.shift
            if zk:
                names.append(self.var if zk == 1 else f"{self.var}^{zk}")
            body = _format_term(c, names)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


# -- parsing --------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_β][A-Za-z_0-9]*)|(\S))")
_ALIASES = {"β": "beta"}


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", _ALIASES.get(name, name)))
        elif op in "+-*^()":
            out.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} in {text!r}")
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, make_const, make_var, power, allow_negative_exponents):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.const = make_const
        self.var = make_var
        self.power = power
        self.neg_exp = allow_negative_exponents

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            tok = self.peek()
            if tok[0] in ("num", "name") or tok[1] == "(":
                raise ParseError(f"implicit multiplication is not allowed in {self.text!r}")
            raise ParseError(f"trailing input {tok[1]!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.unary()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.unary()
            val = val + rhs if op == "+" else val - rhs
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.term()

    def term(self):
        val = self.power_expr()
        while self.peek() == ("op", "*"):
            self.take()
            val = val * self.signed_power()
        return val

    def signed_power(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.signed_power()
        return self.power_expr()

    def power_expr(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            tok = self.take("num")
            if "/" in tok[1]:
                raise ParseError("exponents must be integers")
            k = sign * int(tok[1])
            if k < 0 and not self.neg_exp:
                raise ParseError(f"negative exponent in {self.text!r}")
            return self.power(base, k)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.const(rat(val))
        if kind == "name":
            self.take()
            return self.var(val)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_poly(text: str) -> MPoly:
    """Parse ``+ - * ^`` expressions with rational literals into an MPoly."""
    p = _Parser(text, MPoly.const, MPoly.var, lambda b, k: b ** k, False)
    return p.parse()


def parse_laurent(text: str, var: str = "z") -> LaurentPoly:
    """Parse an expression in which ``var`` may carry negative exponents (``z^-1``)."""

    def make_var(name):
        if name == var:
            return LaurentPoly.monomial(1, 1, var)
        return LaurentPoly(MPoly.var(name), 0, var)

    p = _Parser(
        text,
        lambda c: LaurentPoly(MPoly.const(c), 0, var),
        make_var,
        lambda b, k: b ** k,
        True,
    )
    return p.parse()


def as_poly(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, str):
        return parse_poly(x)
    return MPoly.const(x)


def specialize(f, bindings: Mapping[str, object]):
    """Exact substitution of rationals into an MPoly or LaurentPoly."""
    if isinstance(f, (MPoly, LaurentPoly)):
        return f.subs(bindings)
    raise TypeError(f"cannot specialize {type(f).__name__}")


def poly_arith(f: MPoly, g, op: str) -> MPoly:
    """``op`` in ``add|sub|mul|pow``; for ``pow`` the second argument is the exponent."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        if not isinstance(g, int) or g < 0:
            raise ValueError("pow requires a nonnegative integer exponent")
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def poly_derivative(f: MPoly, var: str) -> MPoly:
    if var not in f.vars and var not in _VAR_RANK:
        raise ValueError(f"unknown variable {var!r}")
    return f.diff(var)
