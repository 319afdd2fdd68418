import random
from fractions import Fraction

import pytest

from h1jump.bundle import (
    BundleError,
    CertificateError,
    ExtClassSpec,
    GlobalSection,
    LiftObstruction,
    change_frame,
    det_degree,
    direct_sum,
    global_sections,
    h0,
    lift_section,
    linear_form_section,
    make_extension,
    make_transition_bundle,
    section_sym_product,
    specialize_parameter,
    splitting_type,
    sym_basis,
    sym_power_transition,
    trivial_bundle,
    trivialization_frame,
    twist,
)
from h1jump.cohomology import h_p1_line
from h1jump.poly import LaurentPoly, MPoly, parse_laurent, parse_poly, rat
from bundle_gen import diagonal, random_gauge, rng

L, P = parse_laurent, parse_poly


def G():
    return make_extension(ExtClassSpec(-1, 1, L("t")))


def E():
    return direct_sum(G(), trivial_bundle(1))


def random_nonzero_rationals(n, height=10, seed=0):
    r = random.Random(seed)
    out = []
    while len(out) < n:
        c = Fraction(r.randint(-height, height), r.randint(1, height))
        if c:
            out.append(c)
    return out


# -- construction ----------------------------------------------------------------

def test_make_transition_bundle_examples():
    O1 = make_transition_bundle([[L("z")]])
    assert (O1.rank, det_degree(O1)) == (1, 1)
    g = make_transition_bundle([[L("z^-1"), L("t")], [L("0"), L("z")]])
    assert det_degree(g) == 0 and g == G()
    with pytest.raises(BundleError):
        make_transition_bundle([[L("z"), L("0")], [L("0"), L("1+z")]])


def test_make_extension_examples():
    assert [[str(e) for e in row] for row in G().matrix] == [["z^-1", "t"], ["0", "z"]]
    assert G().extension.class_coordinates() == {-1: P("t")}
    split = make_extension(ExtClassSpec(-1, 1, L("0")))
    assert split == diagonal((-1, 1))
    assert splitting_type(make_extension(ExtClassSpec(0, 0, L("5")))) == (0, 0)


def test_specialize_examples():
    assert specialize_parameter(G(), 0) == diagonal((-1, 1))
    for c in (1, 2):
        assert [[str(e) for e in row] for row in specialize_parameter(G(), c).matrix] == \
            [["z^-1", str(c)], ["0", "z"]]
    with pytest.raises(BundleError):
        specialize_parameter(make_transition_bundle([[L("t*z")]]), 0)


def test_sum_twist_det():
    assert det_degree(E()) == 0
    assert det_degree(diagonal((-1, 1))) == 0
    assert twist(trivial_bundle(1), 3) == make_transition_bundle([[L("z^3")]])


# -- sections ------------------------------------------------------------------------

def _data(s):
    return tuple(str(f) for f in s.f0), tuple(str(f) for f in s.f1)


def test_global_sections_examples():
    assert global_sections(make_transition_bundle([[L("z^-2")]]), 0) == []
    assert h_p1_line(-2) == (0, 1)
    G1 = specialize_parameter(G(), 1)
    assert [_data(s) for s in global_sections(G1, 0)] == [
        (("1", "z"), ("0", "1")),
        (("0", "1"), ("-1", "w")),
    ]
    G0 = specialize_parameter(G(), 0)
    secs = global_sections(G0, 0)
    assert len(secs) == 2 and all(s.f0[0].is_zero() and s.f1[0].is_zero() for s in secs)


def test_parameter_needs_specializing():
    with pytest.raises(BundleError):
        splitting_type(G())


def test_transition_identity_enforced():
    with pytest.raises(BundleError):
        GlobalSection(trivial_bundle(1), 1, (P("1"),), (P("1"),))


# -- splitting types --------------------------------------------------------------------

def test_extension_dichotomy():
    assert splitting_type(specialize_parameter(G(), 0)) == (-1, 1)
    for c in [1, -1, 2] + random_nonzero_rationals(20):
        assert splitting_type(specialize_parameter(G(), c)) == (0, 0)


def test_extension_with_obstructed_lift_is_balanced():
    assert splitting_type(make_extension(ExtClassSpec(-2, 0, L("z^-1")))) == (-1, -1)


BASE_TYPES = [(-3, 3), (-1, 1), (0, 0), (-2, 0, 2), (-1, 0, 1)]


@pytest.mark.parametrize("types", BASE_TYPES)
def test_gauge_invariance(types):
    r = rng(sum(types) + 7 * len(types))
    B = diagonal(types)
    for _ in range(20):
        assert splitting_type(random_gauge(r, B, deg=2, steps=3)) == tuple(sorted(types))


def test_det_certificate_on_random_matrices():
    r = rng(0)
    for _ in range(100):
        rank = r.choice((1, 2, 3))
        types = [r.randint(-3, 3) for _ in range(rank)]
        B = random_gauge(r, diagonal(types)) if rank > 1 else diagonal(types)
        st = splitting_type(B)
        assert sum(st) == det_degree(B)
        assert st == tuple(sorted(types))


@pytest.mark.parametrize("types", BASE_TYPES)
def test_dimension_consistency(types):
    B = random_gauge(rng(1), diagonal(types))
    st = splitting_type(B)
    for d in range(-5, 6):
        assert len(global_sections(B, d)) == sum(max(a + d + 1, 0) for a in st) == h0(B, d)


def test_certificate_error_type():
    assert issubclass(CertificateError, BundleError)


# -- lifts -------------------------------------------------------------------------------

def test_lift_default():
    q = lift_section(G(), linear_form_section(1, 1))
    assert _data(q) == (("t", "z + 1"), ("-t", "w + 1"))
    q0 = q.specialize(0)
    assert _data(q0) == (("0", "z + 1"), ("0", "w + 1"))


@pytest.mark.parametrize("alpha,beta", [(1, 0), (0, 1), (2, -3), ("1/2", 5)])
def test_lift_maps_to_s(alpha, beta):
    s = linear_form_section(alpha, beta)
    q = lift_section(G(), s)
    assert q.f0[1] == s.f0[0] and q.f1[1] == s.f1[0]
    assert q.specialize(0).f0[0].is_zero()


def test_lift_obstruction():
    with pytest.raises(LiftObstruction):
        lift_section(make_extension(ExtClassSpec(-2, 0, L("z^-1"))), (P("1"), P("1")))


# -- symmetric powers and frames --------------------------------------------------------------

def test_sym_basics():
    B = random_gauge(rng(2), diagonal((-1, 2)))
    assert sym_power_transition(B, 1) == B
    S4 = sym_power_transition(E(), 4)
    assert S4.rank == 15 and det_degree(S4) == 0
    assert sym_basis(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_unit_section_power():
    one, z = MPoly.const(1), MPoly.zero()
    y = GlobalSection(E(), 0, (z, z, one), (z, z, one))
    y4 = section_sym_product([y] * 4)
    nonzero = [i for i, f in enumerate(y4.f0) if not f.is_zero()]
    assert nonzero == [sym_basis(3, 4).index((0, 0, 4))]
    assert y4.f0[nonzero[0]] == one


def test_sym_product_multilinear_symmetric():
    E1 = specialize_parameter(E(), 1)
    secs = global_sections(E1, 1)
    r = rng(3)
    for _ in range(10):
        a, b, c = (r.choice(secs) for _ in range(3))
        lam = rat(r.randint(-3, 3))
        lhs = section_sym_product([a + b.scale(lam), c])
        rhs = section_sym_product([a, c]) + section_sym_product([b, c]).scale(lam)
        assert lhs == rhs
        assert section_sym_product([a, c]) == section_sym_product([c, a])


def test_frames():
    G1 = specialize_parameter(G(), 1)
    fr = trivialization_frame(G1)
    assert [_data(s) for s in fr] == [_data(s) for s in global_sections(G1, 0)]
    fr = trivialization_frame(trivial_bundle(2))
    assert [_data(s)[0] for s in fr] == [("1", "0"), ("0", "1")]
    with pytest.raises(BundleError):
        trivialization_frame(specialize_parameter(G(), 0))


def test_change_frame_examples():
    E1 = specialize_parameter(E(), 1)
    fr = trivialization_frame(E1)
    one, z = MPoly.const(1), MPoly.zero()
    y = GlobalSection(E1, 0, (z, z, one), (z, z, one))
    a = linear_form_section(1, 0)
    assert change_frame(section_sym_product([y] * 4).times_line(a), fr) == P("z0*x3^4")
    q = lift_section(G(), linear_form_section(1, 1)).specialize(1)
    qE = GlobalSection(E1, 0, q.f0 + (z,), q.f1 + (z,))
    b = linear_form_section(0, 1)
    assert change_frame(section_sym_product([qE] * 4).times_line(b), fr) == P("z1*(x1+x2)^4")
    zero4 = section_sym_product([y] * 4).scale(0)
    assert change_frame(zero4, fr).is_zero()
