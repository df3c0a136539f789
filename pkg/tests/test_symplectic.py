import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcoh.errors import DegreeError, NotPrimitiveError
from sympcoh.exterior import Form, basis_blades, format_form, parse_form, power
from sympcoh.model import builtin_model
from sympcoh.symplectic import (commutator, star_from_pairing, symplectic_pairing_bruteforce,
                                two_form_matrix)

from conftest import forms

kt = builtin_model("kt")
S = kt.context()
S6 = builtin_model("torus3").context()


def P(text, dim=4):
    return parse_form(text, dim)


def test_lefschetz_examples():
    assert S.L(S.unit()) == kt.omega
    assert S.L(P("e3")) == P("e1^e2^e3")
    assert S.L(P("e1^e2^e3")) == 0
    assert S.Lambda(kt.omega) == P("2")
    assert S.Lambda(P("e1")) == 0
    assert S.Lambda(P("e1^e3")) == 0
    assert S.H(P("e1")) == P("e1")
    assert S.H(P("e1^e2^e3^e4")) == P("-2 * e1^e2^e3^e4")
    assert S.H(P("3")) == P("6")


def test_lambda_is_the_dual_contraction():
    # Λ(e12) = 1 with ω = e12 + e34; rescaling ω rescales Λ inversely
    assert S.Lambda(P("e1^e2")) == P("1")
    from sympcoh.symplectic import SymplecticContext
    from sympcoh.rings import QQ
    s2 = SymplecticContext(P("2 * e1^e2 + e3^e4"), lambda a: Form.zero(4), QQ)
    assert s2.Lambda(P("e1^e2")) == P("1/2")


def test_d_lambda_examples():
    assert S.d_lambda(P("e1^e4")) == P("e3")
    assert S.d_lambda(P("e1^e2^e4")) == P("e2^e3")
    assert S.d_lambda(P("5")) == 0
    assert S.dd_lambda(kt.omega) == 0
    assert S.dd_lambda(P("e1^e4")) == 0


def test_primitivity():
    assert S.is_primitive(P("e1"))
    assert not S.is_primitive(kt.omega)
    assert S.is_primitive(P("e1^e2 - e3^e4"))
    assert not S.is_primitive(P("e1^e2^e3"))
    assert S.is_primitive(Form.zero(4))
    assert len(S6.primitive_basis(2)) == 15 - 1
    assert len(S6.primitive_basis(3)) == 20 - 6


def test_decomposition_examples():
    comps = S.decompose(kt.omega)
    assert comps[1] == P("1") and comps[0] == 0
    comps = S.decompose(P("e1^e2"))
    assert comps[0] == P("1/2 * e1^e2 - 1/2 * e3^e4") and comps[1] == P("1/2")
    assert S.decompose(P("e1")).nonzero() == {0: P("e1")}
    assert S.recompose({1: P("1")}) == kt.omega
    with pytest.raises(NotPrimitiveError):
        S.recompose({0: kt.omega})
    with pytest.raises(DegreeError):
        S.decompose(P("1 + e1"))


@given(st.integers(0, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_decomposition_round_trip_dim6(k, data):
    a = data.draw(forms(dim=6, degree=k))
    comps = S6.decompose(a)
    assert comps.recompose() == a
    assert all(S6.is_primitive(b) for b in comps.values())


def test_example_dim6_coefficients():
    rng = random.Random(3)
    for _ in range(10):
        a = Form(6, {b: Fraction(rng.randint(-4, 4)) for b in basis_blades(6, 4)})
        comps = S6.decompose(a)
        lam, lam2 = S6.Lambda(a), S6.Lambda(a, 2)
        assert comps.get(1, Form.zero(6)) == lam - S6.L(lam2) / 3
        assert comps.get(2, Form.zero(6)) == lam2 / 6


def test_star_s_examples():
    assert S.star_s(P("1")) == power(kt.omega, 2) / 2
    assert S.star_s(kt.omega) == kt.omega
    assert S.star_s(P("e1^e2^e3^e4")) == P("1")


@given(st.integers(0, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_star_s_routes_agree_and_involution(k, data):
    a = data.draw(forms(dim=6, degree=k))
    assert S6.star_s(a) == S6.star_s_pairing(a)
    assert S6.star_s(S6.star_s(a)) == a


def test_symplectic_pairing_matches_tensor_contraction():
    rng = random.Random(7)
    w = S6.omega_inverse
    for k in range(4):
        blades = basis_blades(6, k)
        for _ in range(5):
            a = Form(6, {b: Fraction(rng.randint(-2, 2)) for b in blades})
            b = Form(6, {b: Fraction(rng.randint(-2, 2)) for b in blades})
            assert S6.symplectic_pairing(a, b) == symplectic_pairing_bruteforce(w, a.terms, b.terms, k)


def test_omega_matrix_and_volume():
    assert two_form_matrix(kt.omega)[0][1] == 1 and two_form_matrix(kt.omega)[1][0] == -1
    assert S.volume_form == P("e1^e2^e3^e4")


def test_sl2_relations_on_kt():
    for k in range(5):
        for blade in basis_blades(4, k):
            a = Form.blade(4, blade)
            assert commutator(S.Lambda, S.L)(a) == S.H(a)
            assert commutator(S.H, S.Lambda)(a) == S.Lambda(a).scale(2)
            assert commutator(S.H, S.L)(a) == S.L(a).scale(-2)
            assert S.d_lambda(a) == S.star_s(S.d(S.star_s(a))).scale((-1) ** (k + 1))


def test_h_inverse():
    a = P("e1 + 3 + e1^e2^e3^e4")
    assert S.H(S.H_inverse(a)) == a
    with pytest.raises(DegreeError):
        S.H_inverse(P("e1^e2"))
