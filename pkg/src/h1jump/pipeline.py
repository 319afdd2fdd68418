"""End-to-end construction of the family and its verification report.

The family lives on ``P(E)`` with ``E = G + O`` over ``A^1_t x P^1``, where
``G`` is the extension of ``O(1)`` by ``O(-1)`` with class ``t*[z^-1]``.  Its
defining section is ``sigma = a*y^4 + b*q^4 + t*tau``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

from . import linalg, upoly
from .bundle import (
    T,
    BundleError,
    ExtClassSpec,
    GlobalSection,
    TransitionBundle,
    change_frame,
    direct_sum,
    lift_section,
    linear_form_section,
    make_transition_bundle,
    make_extension,
    sections_with_parameter,
    section_sym_product,
    specialize_parameter,
    splitting_type,
    sym_basis,
    sym_power_transition,
    trivial_bundle,
    transported,
    trivialization_frame,
    det_degree,
)
from .cohomology import (
    LineBundleOnPE,
    SplitBundle,
    cohomology_PE,
    h1_closed_form,
    hypersurface_h,
)
from .cox import cox_cohomology
from .gcd import gcd_list
from .poly import MPoly, ONE, parse_laurent, rat
from .smooth import (
    Bidegree14Form,
    LinearFormPair,
    certify_smoothness,
    fiberwise_nonvanishing,
    generic_fiber_squarefree,
    special_fiber_polynomial,
)

REPORT_VERSION = "1.0"
BASIS_ORDER_VERSION = 1
FIBER_DEGREE = 4
BASE_TWIST = 1
TAU_T_SLACK = 2
GRID = {"e": (-2, 2), "a": (-7, 4), "b": (-4, 4)}


class ConfigError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


# -- configuration --------------------------------------------------------------

@dataclass(frozen=True)
class TauSpec:
    mode: str = "search"
    seed: int = 0
    max_attempts: int = 1000
    coeff_range: tuple = (-3, 3)
    coeffs: tuple = ()  # fixed mode: sorted (index, Rat) pairs

    def to_dict(self) -> dict:
        if self.mode == "fixed":
            return {"mode": "fixed", "coeffs": {str(i): str(c) for i, c in self.coeffs}}
        return {"mode": "search", "seed": self.seed, "max_attempts": self.max_attempts,
                "coeff_range": list(self.coeff_range)}


def _nat(value, name) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"{name} must be a nonnegative integer")
    return value


def _parse_tau(d) -> TauSpec:
    if not isinstance(d, dict):
        raise ConfigError("tau must be an object")
    mode = d.get("mode", "search")
    if mode == "search":
        lo, hi = d.get("coeff_range", [-3, 3])
        if not (isinstance(lo, int) and isinstance(hi, int)) or lo > hi:
            raise ConfigError("coeff_range must be a nonempty integer interval")
        return TauSpec("search", _nat(d.get("seed", 0), "seed"),
                       _nat(d.get("max_attempts", 1000), "max_attempts"), (lo, hi))
    if mode == "fixed":
        coeffs = d.get("coeffs")
        if not isinstance(coeffs, dict):
            raise ConfigError("fixed tau needs a coeffs map")
        try:
            items = sorted((int(k), rat(v)) for k, v in coeffs.items())
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad tau coefficient: {exc}") from None
        return TauSpec("fixed", coeffs=tuple((i, c) for i, c in items if c))
    raise ConfigError(f"unknown tau mode {mode!r}")


@dataclass(frozen=True)
class FamilyConfig:
    a: LinearFormPair = LinearFormPair(1, 0)
    b: LinearFormPair = LinearFormPair(0, 1)
    s: LinearFormPair = LinearFormPair(1, 1)
    samples: tuple = (rat(1), rat(-1), rat(2))
    tau: TauSpec = TauSpec()
    smooth_check: bool = True
    jobs: int = 1

    def __post_init__(self):
        if not self.samples:
            raise ConfigError("samples must be nonempty")
        if any(not c for c in self.samples):
            raise ConfigError("c = 0 is processed separately and may not appear in samples")
        try:
            fiberwise_nonvanishing(self.a, self.b, self.s)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_dict(cls, d: dict) -> "FamilyConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = {"a", "b", "s", "samples", "tau", "smooth_check", "jobs"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        kw = {}
        try:
            for key in ("a", "b", "s"):
                if key in d:
                    kw[key] = LinearFormPair.parse(d[key])
            if "samples" in d:
                kw["samples"] = tuple(rat(c) for c in d["samples"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if "tau" in d:
            kw["tau"] = _parse_tau(d["tau"])
        if "smooth_check" in d:
            if not isinstance(d["smooth_check"], bool):
                raise ConfigError("smooth_check must be a boolean")
            kw["smooth_check"] = d["smooth_check"]
        if "jobs" in d:
            kw["jobs"] = max(1, _nat(d["jobs"], "jobs"))
        return cls(**kw)

    @classmethod
    def load(cls, path) -> "FamilyConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        pair = lambda f: [str(f.alpha), str(f.beta)]  # noqa: E731
        return {"a": pair(self.a), "b": pair(self.b), "s": pair(self.s),
                "samples": [str(c) for c in self.samples], "tau": self.tau.to_dict(),
                "smooth_check": self.smooth_check, "jobs": self.jobs}

    def replace(self, **kw) -> "FamilyConfig":
        d = {f: getattr(self, f) for f in ("a", "b", "s", "samples", "tau", "smooth_check", "jobs")}
        d.update(kw)
        return FamilyConfig(**d)


# -- the family -------------------------------------------------------------------

def _line(f: LinearFormPair) -> GlobalSection:
    return linear_form_section(f.alpha, f.beta)


def _pad(section: GlobalSection, bundle: TransitionBundle) -> GlobalSection:
    z = MPoly.zero()
    return GlobalSection(bundle, section.twist, section.f0 + (z,), section.f1 + (z,))


@dataclass
class FamilyData:
    config: FamilyConfig
    G: TransitionBundle
    E: TransitionBundle
    q: GlobalSection
    y: GlobalSection
    sigma0: GlobalSection
    tau: GlobalSection | None = None
    tau_coeffs: dict = field(default_factory=dict)

    @property
    def sigma(self) -> GlobalSection:
        if self.tau is None:
            raise RuntimeError("tau has not been fixed")
        return assemble_sigma(self, self.tau)

    @cached_property
    def untwisted(self) -> GlobalSection:
        """``a*y^4 + b*q^4`` over Q[t]."""
        cfg = self.config
        return (section_sym_product([self.y] * FIBER_DEGREE).times_line(_line(cfg.a))
                + section_sym_product([self.q] * FIBER_DEGREE).times_line(_line(cfg.b)))


def build_family(config: FamilyConfig) -> FamilyData:
    G = make_extension(ExtClassSpec(-1, 1, parse_laurent("t")))
    E = direct_sum(G, trivial_bundle(1))
    try:
        qG = lift_section(G, _line(config.s))
    except BundleError as exc:  # cannot happen for this shape
        raise AssertionError(f"lift of s failed: {exc}") from exc
    q = _pad(qG, E)
    one = MPoly.const(1)
    y = GlobalSection(E, 0, (MPoly.zero(), MPoly.zero(), one), (MPoly.zero(), MPoly.zero(), one))
    # sigma_0 is built directly on E_0 = O(-1) + O(1) + O, with q_0 = (0, s, 0)
    E0 = specialize_parameter(E, 0)
    s = _line(config.s)
    z = MPoly.zero()
    q0 = GlobalSection(E0, 0, (z, s.f0[0], z), (z, s.f1[0], z))
    y0 = GlobalSection(E0, 0, (z, z, one), (z, z, one))
    sigma0 = (section_sym_product([y0] * FIBER_DEGREE).times_line(_line(config.a))
              + section_sym_product([q0] * FIBER_DEGREE).times_line(_line(config.b)))
    return FamilyData(config, G, E, q, y, sigma0)


def assemble_sigma(family: FamilyData, tau: GlobalSection) -> GlobalSection:
    return family.untwisted + tau.scale(MPoly.var(T))


# -- tau ----------------------------------------------------------------------------

def _independent_at(sections, t0, target: int) -> list:
    """Greedy subset whose specializations at ``t0`` are linearly independent."""
    chosen, rows = [], []
    for sec in sections:
        vals = sec.specialize(t0).f0
        row = {}
        col = 0
        for f in vals:
            for e, c in sorted(f.terms.items()):
                row[(col, e)] = c
            col += 1
        trial = rows + [row]
        keys = sorted({k for r in trial for k in r})
        index = {k: i for i, k in enumerate(keys)}
        if linalg.rank([{index[k]: v for k, v in r.items()} for r in trial], len(keys)) == len(trial):
            rows = trial
            chosen.append(sec)
            if len(chosen) == target:
                break
    return chosen


def tau_basis(E: TransitionBundle, t0=1) -> list:
    """Sections of ``Sym^4 E (1)`` over Q[t], piece by piece ``Sym^k G * y^(4-k)``.

    Each piece contributes as many elements as ``h0`` at the generic value
    ``t0``, chosen among parameter sections of bounded t-degree so that they
    stay independent there.
    """
    G = _g_part(E)
    S4 = sym_power_transition(E, FIBER_DEGREE)
    pos = {b: i for i, b in enumerate(sym_basis(3, FIBER_DEGREE))}
    zero = MPoly.zero()
    out = []
    for k in range(FIBER_DEGREE + 1):
        SkG = sym_power_transition(G, k)
        target = (k + 1) * (BASE_TWIST + 1)  # Sym^k of a trivial rank-2 bundle, twisted by O(1)
        candidates = sections_with_parameter(SkG, BASE_TWIST, k + TAU_T_SLACK)
        candidates.sort(key=lambda s: max(f.degree(T) for f in s.f1))
        piece = _independent_at(candidates, t0, target)
        if len(piece) != target:
            raise BundleError(f"tau basis piece k={k}: found {len(piece)} of {target} sections")
        for sec in piece:
            f0, f1 = [zero] * len(pos), [zero] * len(pos)
            for alpha, g0, g1 in zip(sym_basis(2, k), sec.f0, sec.f1):
                i = pos[alpha + (FIBER_DEGREE - k,)]
                f0[i], f1[i] = g0, g1
            out.append(GlobalSection(S4, BASE_TWIST, tuple(f0), tuple(f1)))
    return out


def _g_part(E: TransitionBundle) -> TransitionBundle:
    return make_transition_bundle([row[:2] for row in E.matrix[:2]])


def combine(basis, coeffs: dict) -> GlobalSection:
    acc = None
    for i, c in sorted(coeffs.items()):
        if not c:
            continue
        term = basis[i].scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        return basis[0].scale(0)
    return acc


@dataclass
class FiberForms:
    """Frame forms of the pieces of sigma at a fixed nonzero ``c``."""

    c: object
    untwisted: MPoly
    basis: list

    def form(self, coeffs: dict) -> MPoly:
        F = self.untwisted
        for i, v in coeffs.items():
            if v:
                F = F + self.basis[i] * (v * self.c)
        return F


def fiber_forms(family: FamilyData, basis, c) -> FiberForms:
    c = rat(c)
    frame = trivialization_frame(specialize_parameter(family.E, c))
    base = change_frame(family.untwisted.specialize(c), frame)
    return FiberForms(c, base, [change_frame(m.specialize(c), frame) for m in basis])


def _check_smooth(args):
    g0, g1, seed = args
    from .poly import parse_poly
    return certify_smoothness(Bidegree14Form(parse_poly(g0), parse_poly(g1)), seed=seed).to_dict()


def find_tau(config: FamilyConfig, family: FamilyData, basis=None) -> tuple:
    """Seeded search for tau making the fibre at ``samples[0]`` smooth.

    Returns ``(tau, lock)`` with ``lock`` the JSON-ready lockfile record.
    """
    spec = config.tau
    if spec.mode != "search":
        raise ConfigError("find_tau needs tau.mode = 'search'")
    basis = basis if basis is not None else tau_basis(family.E)
    forms = fiber_forms(family, basis, config.samples[0])
    rng = random.Random(spec.seed)
    lo, hi = spec.coeff_range
    for attempt in range(spec.max_attempts):
        coeffs = {i: rat(rng.randint(lo, hi)) for i in range(len(basis))}
        form = Bidegree14Form.from_form(forms.form(coeffs))
        if certify_smoothness(form, seed=spec.seed).smooth:
            lock = {"seed": spec.seed, "attempt": attempt,
                    "coeffs": {str(i): str(c) for i, c in coeffs.items() if c},
                    "basis_order_version": BASIS_ORDER_VERSION}
            return combine(basis, coeffs), lock
    raise SearchExhausted("no smooth member found; enlarge coeff_range")


def lock_to_tau(lock: dict) -> TauSpec:
    if lock.get("basis_order_version") != BASIS_ORDER_VERSION:
        raise ConfigError("lockfile basis order version mismatch")
    return _parse_tau({"mode": "fixed", "coeffs": lock.get("coeffs", {})})


# -- flatness witness -----------------------------------------------------------------

def bad_parameter_gcd(sigma: GlobalSection) -> tuple:
    """gcd in Q[t] of all t-polynomial coefficients of the chart-0 data (dense, monic)."""
    coeffs = []
    for f in sigma.f0:
        for c in f.coeffs("z").values() if "z" in f.vars else [f]:
            if not c.is_zero():
                coeffs.append(c)
    if not coeffs:
        return ()
    g = gcd_list(coeffs)
    return upoly.monic(upoly.from_mpoly(g, T)) if not g.is_constant() else (ONE,)


def bad_parameter_roots(sigma: GlobalSection) -> list:
    g = bad_parameter_gcd(sigma)
    if not g:
        raise ValueError("sigma vanishes identically")
    return sorted(upoly.rational_roots(g)) if len(g) > 1 else []


# -- cross-checks -------------------------------------------------------------------

def oracle_grid(jobs: int = 1) -> dict:
    es = list(itertools.product(range(GRID["e"][0], GRID["e"][1] + 1), repeat=3))
    results = _pmap(_grid_cell, es, jobs)
    cases = sum(r[0] for r in results)
    bad = [d for r in results for d in r[1]]
    return {"cases": cases, "disagreements": len(bad), "first_disagreements": bad[:5],
            "pass": not bad}


def _grid_cell(e):
    n, bad = 0, []
    E = SplitBundle(e)
    for a in range(GRID["a"][0], GRID["a"][1] + 1):
        for b in range(GRID["b"][0], GRID["b"][1] + 1):
            n += 1
            lhs = cohomology_PE(LineBundleOnPE(E, a, b))
            rhs = cox_cohomology(E, a, b)
            if lhs != rhs:
                bad.append({"e": list(e), "a": a, "b": b, "pushforward": list(lhs), "cox": list(rhs)})
    return n, bad


def _pmap(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def sigma0_matches_fiber_polynomial(family: FamilyData) -> bool:
    """Chart-0 data of sigma_0 against ``a*v^4 + b*s^4*w^4`` (v for y, w for the quotient)."""
    cfg = family.config
    expected = special_fiber_polynomial(cfg.a, cfg.b, cfg.s, 0)
    got = MPoly.zero()
    names = (MPoly.var("u"), MPoly.var("w"), MPoly.var("v"))
    for alpha, coeff in zip(sym_basis(3, FIBER_DEGREE), family.sigma0.f0):
        if coeff.is_zero():
            continue
        mono = MPoly.const(1)
        for x, k in zip(names, alpha):
            mono = mono * x ** k
        got = got + coeff.subs({"z": MPoly.var("beta")}) * mono
    return got == expected


# -- report ---------------------------------------------------------------------------

class Checks:
    def __init__(self):
        self.items = []

    def add(self, name: str, ok: bool, mandatory: bool = True, **detail):
        self.items.append({"name": name, "pass": bool(ok), "mandatory": mandatory, **detail})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.items if c["mandatory"])


@dataclass
class VerificationReport:
    data: dict

    @property
    def passed(self) -> bool:
        return bool(self.data.get("pass"))

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    def h1_at(self, c) -> int:
        if rat(c) == 0:
            return self.data["t0"]["h1"]
        for rec in self.data["samples"]:
            if rat(rec["c"]) == rat(c):
                return rec["h1"]
        raise KeyError(c)


def _hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _st(t) -> list:
    return [int(x) for x in t]


def verify(config: FamilyConfig, lock: dict | None = None) -> tuple:
    """Run every check in order; returns ``(report, lock)``.

    A lock (as written by :func:`find_tau`) replaces a search-mode tau spec.
    """
    echo = config.to_dict()
    echo.pop("jobs")  # parallelism does not change the result
    if lock is not None:
        config = config.replace(tau=lock_to_tau(lock))
    seed = lock.get("seed") if lock and lock.get("seed") is not None else config.tau.seed
    checks = Checks()
    data = {
        "version": REPORT_VERSION,
        "config": echo,
        "normalization": {
            "extension_class": "t*[z^-1] in H^1(O(-2)) tensor Q[t]",
            "G": "[[z^-1, t], [0, z]] (sub O(-1), quotient O(1))",
            "E": "G + O",
            "charts": "z = z1/z0, w = z0/z1; f0(z) = z^d T(z) f1(1/z)",
            "projective_bundle": "p_* O_P(k) = Sym^k E",
            "sigma": "a*y^4 + b*q^4 + t*tau in H^0(Sym^4 E (1))",
            "field": "Q",
        },
    }
    stage = "start"
    try:
        stage = "oracle grid"
        grid = oracle_grid(config.jobs)
        data["oracle_grid"] = grid
        data["oracle_grid_pass"] = checks.add("oracle_grid", grid["pass"])

        stage = "build family"
        fam = build_family(config)

        stage = "splitting types"
        G0 = specialize_parameter(fam.G, 0)
        E0 = specialize_parameter(fam.E, 0)
        st_G0, st_E0 = splitting_type(G0), splitting_type(E0)
        checks.add("splitting_type_G0", st_G0 == (-1, 1), value=_st(st_G0))
        checks.add("splitting_type_E0", st_E0 == (-1, 0, 1), value=_st(st_E0))
        types = {}
        for c in config.samples:
            Gc, Ec = specialize_parameter(fam.G, c), specialize_parameter(fam.E, c)
            types[c] = (splitting_type(Gc), splitting_type(Ec), det_degree(Ec))
            checks.add(f"splitting_type_G[{c}]", types[c][0] == (0, 0), value=_st(types[c][0]))
            checks.add(f"splitting_type_E[{c}]", types[c][1] == (0, 0, 0) and types[c][2] == 0,
                       value=_st(types[c][1]))

        stage = "lift and slice"
        q0 = fam.q.specialize(0)
        s = _line(config.s)
        lifted = tuple(x.to_mpoly() if not x.is_zero() else MPoly.zero()
                       for x in transported(fam.E, 0, fam.q.f1))
        checks.add("lift_identity", lifted == fam.q.f0 and fam.q.f1[1] == s.f1[0])
        checks.add("q_at_0_equals_(0,s)", q0.f0 == (MPoly.zero(), s.f0[0], MPoly.zero()),
                   q=fam.q.to_dict())
        checks.add("sigma0_is_fiber_polynomial", sigma0_matches_fiber_polynomial(fam))

        stage = "special fibre witnesses"
        fnv = fiberwise_nonvanishing(config.a, config.b, config.s)
        sqf = generic_fiber_squarefree(config.a, config.b, config.s)
        checks.add("fiberwise_nonvanishing", fnv)
        checks.add("generic_fiber_squarefree", sqf)

        stage = "tau"
        basis = tau_basis(fam.E)
        data["tau_basis_size"] = len(basis)
        checks.add("tau_basis_size", len(basis) == cox_cohomology((0, 0, 0), FIBER_DEGREE, BASE_TWIST).h0,
                   value=len(basis))
        if config.tau.mode == "search":
            tau, lock = find_tau(config, fam, basis)
        else:
            coeffs = dict(config.tau.coeffs)
            if any(i >= len(basis) or i < 0 for i in coeffs):
                raise ConfigError("tau coefficient index out of range")
            tau = combine(basis, coeffs)
            lock = lock or {"seed": None, "attempt": None,
                            "coeffs": {str(i): str(c) for i, c in sorted(coeffs.items())},
                            "basis_order_version": BASIS_ORDER_VERSION}
        fam.tau = tau
        data["tau_lock"] = lock
        sigma = fam.sigma
        checks.add("sigma_at_0_equals_sigma0", sigma.specialize(0) == fam.sigma0)

        stage = "bad parameters"
        g = bad_parameter_gcd(sigma)
        roots = bad_parameter_roots(sigma)
        data["bad_parameter_roots"] = [str(r) for r in roots]
        data["bad_parameter_gcd"] = upoly.fmt(g, T)
        checks.add("bad_parameter_roots_avoid_fibres",
                   not set(roots) & (set(config.samples) | {rat(0)}))

        stage = "fibres"
        # the special fibre
        h0 = hypersurface_h(st_E0, FIBER_DEGREE, BASE_TWIST)
        data["t0"] = {"c": "0", "splitting_type_G": _st(st_G0), "splitting_type_E": _st(st_E0),
                      "fiberwise_nonvanishing": fnv, "generic_squarefree": sqf,
                      "sigma_nonzero": not fam.sigma0.is_zero(), "h1": h0[1], "h2": h0[2]}
        checks.add("h1_at_0", h0[1] == 1, value=h0[1])
        checks.add("h2_at_0", h0[2] == 1, value=h0[2])
        checks.add("h1_closed_form[0]", h1_closed_form(st_E0) == h0[1])
        checks.add("chi[0]", 1 - h0[1] + h0[2] == 1)
        records = []
        jobs = []
        for c in config.samples:
            st_G, st_E, _ = types[c]
            h = hypersurface_h(st_E, FIBER_DEGREE, BASE_TWIST)
            sig_c = sigma.specialize(c)
            rec = {"c": str(c), "splitting_type_G": _st(st_G), "splitting_type_E": _st(st_E),
                   "sigma_nonzero": not sig_c.is_zero(), "h1": h[1], "h2": h[2]}
            checks.add(f"sigma_nonzero[{c}]", rec["sigma_nonzero"])
            checks.add(f"h1[{c}]", h[1] == 0, value=h[1])
            checks.add(f"h2[{c}]", h[2] == 0, value=h[2])
            checks.add(f"h1_closed_form[{c}]", h1_closed_form(st_E) == h[1])
            checks.add(f"chi[{c}]", 1 - h[1] + h[2] == 1)
            if config.smooth_check:
                F = Bidegree14Form.from_form(change_frame(
                    sig_c, trivialization_frame(specialize_parameter(fam.E, c))))
                rec["g0"], rec["g1"] = str(F.g0), str(F.g1)
                jobs.append((rec["g0"], rec["g1"], seed))
            records.append(rec)

        stage = "smoothness"
        candidate_z = []
        if config.smooth_check:
            results = _pmap(_check_smooth, jobs, config.jobs)
            for rec, res in zip(records, results):
                rec["smooth"] = "verified_smooth" if res["smooth"] else "singular"
                rec["smoothness_certificate"] = res
                if not res["smooth"]:
                    candidate_z.append(rec["c"])
            checks.add("some_sample_verified_smooth", len(candidate_z) < len(records))
        else:
            for rec in records:
                rec["smooth"] = "skipped"
        data["samples"] = records
        data["candidate_Z"] = candidate_z
    except (ConfigError, BundleError, ArithmeticError, ValueError, RuntimeError, AssertionError) as exc:
        data["error"] = {"stage": stage, "type": type(exc).__name__, "message": str(exc)}
        checks.add(f"stage:{stage}", False)
        lock = data.get("tau_lock")
    data["checks"] = checks.items
    data["pass"] = checks.passed and "error" not in data
    data["report_hash"] = _hash(data)
    return VerificationReport(data), data.get("tau_lock")
