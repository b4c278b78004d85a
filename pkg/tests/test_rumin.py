from fractions import Fraction

import pytest

from ruminalg.errors import DomainError
from ruminalg.forms import ContactModel, Form, exterior_d, is_vertical, random_form, wedge
from ruminalg.poly import Poly
from ruminalg.prng import stream
from ruminalg.rumin import (
    RuminElement,
    certify,
    f1,
    f2,
    fk_zero,
    gamma,
    gamma_invariance_check,
    in_rumin,
    is_primitive,
    m1,
    m2,
    m3,
    mk_zero,
    pi,
)

M1 = ContactModel(1)
M2 = ContactModel(2)


def _dx(model, i=1):
    return model.generator(i)


def _dy(model, i=1):
    return model.generator(model.n + i)


# -- gamma ------------------------------------------------------------------------


def test_gamma_kills_verticals():
    rng = stream(21, 0)
    for model in (M1, M2):
        for deg in range(1, model.dim + 1):
            v = random_form(model, rng, deg, 2, vertical=True)
            assert gamma(v).is_zero()


def test_gamma_of_symplectic_area_form():
    # Solve zeta ^ dtheta = theta ^ (f dx1^dy1) by enumerating the vertical
    # basis in degree 1: zeta = g theta, and g theta^dx1^dy1 = f theta^dx1^dy1
    # forces g = f.
    f = Poly.variable(3, 0) + Poly.constant(3, Fraction(2, 3))
    w = wedge(_dx(M1), _dy(M1)).scale_poly(f)
    expected = M1.theta().scale_poly(f)
    got = gamma(w)
    assert got == expected
    # the defining equation holds
    assert wedge(got, M1.dtheta()) == wedge(M1.theta(), w)


def test_gamma_on_one_forms_is_zero():
    assert gamma(_dx(M1)).is_zero()  # no vertical 0-forms to hit
    rng = stream(22, 0)
    for _ in range(10):
        assert gamma(random_form(M1, rng, 1, 2)).is_zero()


def test_gamma_output_vertical_and_degree():
    rng = stream(23, 0)
    for model in (M1, M2):
        for deg in range(0, model.dim + 1):
            g = gamma(random_form(model, rng, deg, 2))
            assert is_vertical(g)
            if not g.is_zero():
                assert g.degree == deg - 1


def test_gamma_chain_identities():
    rng = stream(24, 0)
    for model in (M1, M2):
        for deg in range(0, model.dim + 1):
            w = random_form(model, rng, deg, 2)
            assert gamma(exterior_d(gamma(w))) == gamma(w)
            assert gamma(gamma(w)).is_zero()
        for deg in range(1, model.n + 1):
            v = random_form(model, rng, deg, 2, vertical=True)
            assert gamma(exterior_d(v)) == v


def test_gamma_image_products_vanish():
    rng = stream(25, 0)
    for _ in range(10):
        a = random_form(M2, rng, rng.randint(0, 5), 2)
        b = random_form(M2, rng, rng.randint(0, 5), 2)
        assert wedge(gamma(a), gamma(b)).is_zero()
        assert gamma(wedge(gamma(a), b)).is_zero()
        assert gamma(wedge(a, gamma(b))).is_zero()


def test_gamma_invariance():
    w = wedge(_dx(M1), _dy(M1))
    assert gamma_invariance_check(w, 2)
    assert gamma_invariance_check(w, Fraction(3, 7))
    assert gamma_invariance_check(wedge(M1.theta(), _dx(M1)), 5)  # both sides zero
    rng = stream(26, 0)
    for model in (M1, M2):
        for deg in range(0, model.dim + 1):
            assert gamma_invariance_check(random_form(model, rng, deg, 2), Fraction(3, 7))


def test_gamma_invariance_rejects_nonpositive():
    with pytest.raises(DomainError):
        gamma_invariance_check(_dx(M1), 0)
    with pytest.raises(DomainError):
        gamma_invariance_check(_dx(M1), Fraction(-2, 3))


# -- primitivity and membership ------------------------------------------------------


def test_is_primitive_examples():
    assert is_primitive(_dx(M1))  # theta^dx1^dtheta lives above top degree
    f = Poly.variable(3, 1)
    assert not is_primitive(wedge(_dx(M1), _dy(M1)).scale_poly(f))
    assert is_primitive(Form.zero(M1, 2))


def test_in_rumin_examples():
    assert in_rumin(wedge(M1.theta(), _dx(M1)))
    assert not in_rumin(wedge(_dx(M1), _dy(M1)))
    assert in_rumin(_dx(M1))


def test_membership_matches_gamma_criterion():
    rng = stream(27, 0)
    for model in (M1, M2):
        for deg in range(0, model.dim + 1):
            for _ in range(5):
                w = random_form(model, rng, deg, 2)
                via_gamma = gamma(w).is_zero() and gamma(exterior_d(w)).is_zero()
                assert in_rumin(w) == via_gamma


# -- projection -------------------------------------------------------------------


def test_pi_examples():
    assert pi(wedge(_dx(M1), _dy(M1))).is_zero()
    tdx = wedge(M1.theta(), _dx(M1))
    assert pi(tdx).form == tdx


def test_pi_idempotent_and_certifying():
    rng = stream(28, 0)
    for model in (M1, M2):
        for deg in range(0, model.dim + 1):
            w = random_form(model, rng, deg, 2)
            p = pi(w)
            assert p.certified
            assert pi(p.form).form == p.form
            assert in_rumin(p.form)
            assert gamma(p.form).is_zero()
            assert pi(exterior_d(w)).form == exterior_d(p.form)


def test_certify():
    rho = certify(wedge(M1.theta(), _dx(M1)))
    assert rho.certified
    with pytest.raises(DomainError):
        certify(wedge(_dx(M1), _dy(M1)))


# -- structure maps ------------------------------------------------------------------


def test_m1_of_closed_form():
    assert m1(certify(_dx(M1))).is_zero()


def test_m1_stays_in_subcomplex():
    rng = stream(29, 0)
    for deg in range(0, M2.dim + 1):
        rho = pi(random_form(M2, rng, deg, 2))
        out = m1(rho)
        assert out.certified and in_rumin(out.form)


def test_m2_example():
    assert m2(certify(_dx(M1)), certify(_dy(M1))).is_zero()


def test_m3_example_frozen():
    a, b = certify(_dx(M1)), certify(_dy(M1))
    got = m3(a, b, a)
    assert got.form == wedge(M1.theta(), _dx(M1)).scale(2)
    assert got.form.to_text() == "2 theta^dx1"


def test_m3_degree_law():
    rng = stream(30, 0)
    for _ in range(10):
        degs = [rng.randint(0, 2) for _ in range(3)]
        rho, sigma, tau = (pi(random_form(M2, rng, d, 2)) for d in degs)
        out = m3(rho, sigma, tau)
        if not out.is_zero():
            assert out.degree == sum(degs) - 1


def test_mk_zero():
    elems = tuple(certify(_dx(M1)) for _ in range(4))
    out = mk_zero(4, elems)
    assert out.is_zero() and out.certified
    with pytest.raises(DomainError):
        mk_zero(3, elems[:3])


def test_f1_f2_examples():
    tdx = wedge(M1.theta(), _dx(M1))
    assert f1(certify(tdx)) == tdx
    a, b = certify(_dx(M1)), certify(_dy(M1))
    assert f2(a, b) == M1.theta().scale(-1)
    assert fk_zero(3, (a, b, a)).is_zero()
    with pytest.raises(DomainError):
        fk_zero(2, (a, b))


def test_f2_shuffle_symmetry():
    # f2 composed with the (1,1)-shuffle sum vanishes:
    # f2(a, b) - (-1)^(|a||b|) f2(b, a) = 0 by graded symmetry of the wedge.
    rng = stream(31, 0)
    for _ in range(8):
        da, db = rng.randint(0, 2), rng.randint(0, 2)
        a = pi(random_form(M1, rng, da, 2))
        b = pi(random_form(M1, rng, db, 2))
        sign = -1 if (da & 1) and (db & 1) else 1
        assert (f2(a, b) - f2(b, a).scale(sign)).is_zero()


def test_uncertified_inputs_rejected():
    raw = RuminElement(wedge(M1.theta(), _dx(M1)), certified=False)
    with pytest.raises(DomainError):
        m1(raw)
    with pytest.raises(DomainError):
        m2(raw, raw)
    with pytest.raises(DomainError):
        f2(raw, raw)


def test_rumin_element_algebra():
    a = certify(_dx(M1))
    b = certify(_dy(M1))
    s = a + b
    assert s.certified and s.degree == 1
    assert s.scale(Fraction(1, 2)) + s.scale(Fraction(1, 2)) == s
    assert a.zero_of_degree(2).is_zero()
