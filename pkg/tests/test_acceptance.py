"""Acceptance suite: one pass/fail line per criterion, with its time budget.

Run ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester

from h1jump import cli, pipeline
from h1jump.bundle import (
    ExtClassSpec,
    det_degree,
    linear_form_section,
    make_extension,
    specialize_parameter,
    splitting_type,
    transported,
)
from h1jump.cohomology import LineBundleOnPE, SplitBundle, cohomology_PE, h1_closed_form, h_p1_line, hypersurface_h
from h1jump.cox import cox_cohomology
from h1jump.gcd import poly_gcd, resultant, squarefree_test
from h1jump.pipeline import FamilyConfig, bad_parameter_roots, build_family, find_tau, tau_basis
from h1jump.poly import MPoly, NotDivisible, parse_laurent, parse_poly, rat
from h1jump.smooth import Bidegree14Form, fiberwise_nonvanishing, generic_fiber_squarefree, singular_locus_empty
from bundle_gen import diagonal, random_gauge
from strategies import from_sympy, to_sympy

P = parse_poly


@contextmanager
def criterion(capsys, number, title, limit=None):
    start = time.perf_counter()
    ok, note = False, ""
    try:
        yield
        ok = True
    except BaseException as exc:
        note = f" ({type(exc).__name__})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and limit is not None and elapsed >= limit:
            ok, note = False, f" (over the {limit:g} s budget)"
        budget = f" < {limit:g} s" if limit is not None else ""
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{elapsed:.2f} s{budget}]{note}")
    if limit is not None:
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f} s"


def _G():
    return make_extension(ExtClassSpec(-1, 1, parse_laurent("t")))


def test_criterion_01_headline_jump(capsys, tmp_path):
    cfg = tmp_path / "config.json"
    cfg.write_text("{}")
    out = tmp_path / "report.json"
    with criterion(capsys, 1, "h1 = 1 at c = 0 and h1 = 0 at c in {1, -1, 2}", 60):
        code = cli.main(["verify", "--config", str(cfg), "--out", str(out)])
        report = json.loads(out.read_text())
        assert code == 0 and report["pass"]
        assert report["t0"]["h1"] == 1
        assert {r["c"]: r["h1"] for r in report["samples"]} == {"1": 0, "-1": 0, "2": 0}


def test_criterion_02_splitting_jump(capsys):
    r = random.Random(0)
    samples = [1, -1, 2]
    while len(samples) < 23:
        c = Fraction(r.randint(-10, 10), r.randint(1, 10))
        if c:
            samples.append(c)
    with criterion(capsys, 2, "splitting type (-1,1) at 0 and (0,0) at 23 nonzero values", 5):
        G = _G()
        assert splitting_type(specialize_parameter(G, 0)) == (-1, 1)
        for c in samples:
            assert splitting_type(specialize_parameter(G, c)) == (0, 0)


def test_criterion_03_oracle_equivalence(capsys):
    with criterion(capsys, 3, "Cox count equals pushforward on 13,500 cases", 30):
        cases = bad = 0
        for e in itertools.product(range(-2, 3), repeat=3):
            for a in range(-7, 5):
                for b in range(-4, 5):
                    cases += 1
                    bad += cox_cohomology(e, a, b) != cohomology_PE(LineBundleOnPE(e, a, b))
        assert (cases, bad) == (13500, 0)


def test_criterion_04_closed_form(capsys):
    triples = [e for e in itertools.product(range(-3, 4), repeat=3) if sum(e) == 0]
    with criterion(capsys, 4, f"closed form and chi-constancy on {len(triples)} splitting types"):
        for e in triples:
            h = hypersurface_h(SplitBundle.of(e), 4, 1)
            assert h[1] == h1_closed_form(SplitBundle.of(e))
            assert h == (1, h[1], h[1])


def test_criterion_05_anchors(capsys):
    with criterion(capsys, 5, "cohomology anchors"):
        assert h_p1_line(-2)[1] == 1
        assert hypersurface_h(SplitBundle.of((0, 0, 0)), 4, 1)[1] == 0
        assert hypersurface_h(SplitBundle.of((-1, 0, 1)), 4, 1)[1] == 1


def test_criterion_06_smoothness(capsys):
    with criterion(capsys, 6, "smoothness certificates and the seed-0 tau search", 120):
        assert singular_locus_empty(Bidegree14Form(P("x1^4 + x2^4"), P("x2^4 + x3^4")))
        assert not singular_locus_empty(Bidegree14Form(P("x1^4"), P("x2^4")))
        assert not singular_locus_empty(Bidegree14Form(P("x3^4"), P("(x1 + x2)^4")))
        cfg = FamilyConfig()
        fam = build_family(cfg)
        basis = tau_basis(fam.E)
        _, lock = find_tau(cfg, fam, basis)
        assert lock["seed"] == 0 and lock["attempt"] < cfg.tau.max_attempts
        coeffs = {int(k): rat(v) for k, v in lock["coeffs"].items()}
        forms = pipeline.fiber_forms(fam, basis, 1)
        assert singular_locus_empty(Bidegree14Form.from_form(forms.form(coeffs)))


def test_criterion_07_reducedness(capsys):
    with criterion(capsys, 7, "special fibre reduced: nonvanishing and squarefree witnesses"):
        cfg = FamilyConfig()
        assert fiberwise_nonvanishing(cfg.a, cfg.b, cfg.s)
        assert generic_fiber_squarefree(cfg.a, cfg.b, cfg.s)
        assert not squarefree_test(P("v^4"), ["v"])


def test_criterion_08_lift_and_slice(capsys):
    with criterion(capsys, 8, "lift identity over Q[t], q_0 = (0, s), sigma at 0 equals sigma_0"):
        fam = build_family(FamilyConfig())
        q = fam.q
        lifted = tuple(x.to_mpoly() for x in transported(fam.E, 0, q.f1))
        assert lifted == q.f0
        s = linear_form_section(1, 1)
        assert q.f0[1] == s.f0[0] and q.f1[1] == s.f1[0]
        assert q.specialize(0).f0 == (MPoly.zero(), s.f0[0], MPoly.zero())
        tau, _ = find_tau(FamilyConfig(), fam)
        sigma = pipeline.assemble_sigma(fam, tau)
        assert sigma.specialize(0) == fam.sigma0


def test_criterion_09_flatness(capsys):
    with criterion(capsys, 9, "no bad parameter values for the locked default family"):
        fam = build_family(FamilyConfig())
        tau, _ = find_tau(FamilyConfig(), fam)
        assert bad_parameter_roots(pipeline.assemble_sigma(fam, tau)) == []


def _rand_poly(r, names=("u", "v", "w"), max_exp=3, terms=4, coeff=5):
    d = {tuple(r.randint(0, max_exp) for _ in names): r.choice([c for c in range(-coeff, coeff + 1) if c])
         for _ in range(r.randint(0, terms))}
    return MPoly(d, names).trim() if d else MPoly.zero()


def _property_suites():
    r = random.Random(0)
    # ring axioms
    for _ in range(1000):
        f, g, h = (_rand_poly(r) for _ in range(3))
        assert f + g == g + f and f * g == g * f
        assert (f * g) * h == f * (g * h) and f * (g + h) == f * g + f * h
        assert f - f == MPoly.zero() and f * MPoly.const(1) == f
    # gcd against sympy
    u, v = sympy.symbols("u v")
    for _ in range(1000):
        f, g, h = (_rand_poly(r, ("u", "v"), 2, 3, 3) for _ in range(3))
        if h.is_zero():
            h = MPoly.const(1)
        a, b = f * h, g * h
        gg = poly_gcd(a, b)
        if a.is_zero() and b.is_zero():
            assert gg.is_zero()
            continue
        ref = from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)), ("u", "v")) if gg.support_vars() else None
        for x in (a, b):
            try:
                x.exquo(gg)
            except NotDivisible:
                raise AssertionError(f"gcd does not divide {x}")
        if ref is not None:
            assert gg.exquo(ref).is_constant() and ref.exquo(gg).is_constant()
        else:
            assert sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), u, v).total_degree() <= 0
    # resultant against the Sylvester determinant
    for _ in range(1000):
        f = _rand_poly(r, ("u", "v"), 3, 3, 4)
        g = _rand_poly(r, ("u", "v"), 3, 3, 4)
        if f.degree("v") < 1 or g.degree("v") < 1:
            continue
        ref = sympy.expand(sylvester(to_sympy(f), to_sympy(g), v, 1).det())
        assert to_sympy(resultant(f, g, "v")) - ref == 0
    # splitting type under gauge changes
    for types in [(-3, 3), (-1, 1), (0, 0), (-2, 0, 2), (-1, 0, 1)]:
        rr = random.Random(sum(types) + 7 * len(types))
        B = diagonal(types)
        for _ in range(20):
            assert splitting_type(random_gauge(rr, B, deg=2, steps=3)) == tuple(sorted(types))
    # det-degree certificate
    rr = random.Random(0)
    for _ in range(100):
        rank = rr.choice((1, 2, 3))
        types = [rr.randint(-3, 3) for _ in range(rank)]
        B = random_gauge(rr, diagonal(types)) if rank > 1 else diagonal(types)
        assert sum(splitting_type(B)) == det_degree(B)


def test_criterion_10_property_suites(capsys):
    with criterion(capsys, 10, "property suites under seed 0 (1000 cases each for the kernel)"):
        _property_suites()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
