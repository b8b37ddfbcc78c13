import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import exterior_monomial_product, omega_power_top_coefficient, sinhc_reciprocal_series
from torsionkit.errors import GenusMismatchError, NonNilpotentInputError
from torsionkit.localization import (K, ExteriorClass, KPoly, LocalizationData, a_hat_coefficients,
                                     a_hat_series, bernoulli_numbers, bw_partition_torus,
                                     eta_prefactor, exp_class, integrate_top, localization_integrand,
                                     symplectic_class, wedge, wedge_power)

E = ExteriorClass


def gen(g, i):
    return E.generator(g, i)


# wedge

def test_wedge_examples():
    assert wedge(gen(1, 1), gen(1, 2)) == -wedge(gen(1, 2), gen(1, 1))
    a = E(2, {(1,): 3, (2, 4): Fraction(1, 2), (): 1})
    assert wedge(a, E.one(2)) == a == wedge(E.one(2), a)
    omega = symplectic_class(2)
    assert wedge(omega, omega) == E(2, {(1, 2, 3, 4): 2})
    assert wedge(gen(2, 3), gen(2, 3)) == E(2)


def test_wedge_genus_mismatch():
    with pytest.raises(GenusMismatchError):
        wedge(gen(1, 1), gen(2, 1))


def test_canonicalization():
    assert E(2, {(2, 1): 1}) == E(2, {(1, 2): -1})
    assert E(2, {(3, 1, 2): 1}) == E(2, {(1, 2, 3): 1})
    assert E(2, {(1, 1): 5}).terms == {}


@st.composite
def homogeneous(draw, genus=3):
    degree = draw(st.integers(0, 2 * genus))
    subsets = draw(st.lists(st.lists(st.integers(1, 2 * genus), min_size=degree, max_size=degree,
                                     unique=True), max_size=3))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(subsets), max_size=len(subsets)))
    return degree, E(genus, {tuple(s): c for s, c in zip(subsets, coeffs)})


@given(homogeneous(), homogeneous())
def test_graded_commutativity(a, b):
    (p, x), (q, y) = a, b
    assert wedge(x, y) == wedge(y, x).scale((-1) ** (p * q))


@settings(max_examples=50)
@given(homogeneous(), homogeneous(), homogeneous())
def test_associativity(a, b, c):
    x, y, z = a[1], b[1], c[1]
    assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))


@given(st.lists(st.integers(1, 6), max_size=4, unique=True),
       st.lists(st.integers(1, 6), max_size=4, unique=True))
def test_monomial_sign_matches_bubble_sort(a, b):
    sign, support = exterior_monomial_product(a, b)
    got = wedge(E(3, {tuple(a): 1}), E(3, {tuple(b): 1}))
    assert got == (E(3, {support: sign}) if sign else E(3))


# exponential and integration

def test_exp_examples():
    assert exp_class(E(0)) == E.one(0)
    assert exp_class(symplectic_class(1).scale(K)) == E(1, {(): 1, (1, 2): K})
    omega = symplectic_class(2)
    expected = E.one(2) + omega.scale(K) + E(2, {(1, 2, 3, 4): K * K})
    assert exp_class(omega.scale(K)) == expected


def test_exp_rejects_degree_zero():
    with pytest.raises(NonNilpotentInputError):
        exp_class(E.one(1))


@pytest.mark.parametrize("g", range(0, 9))
def test_symplectic_volume(g):
    omega = symplectic_class(g)
    assert integrate_top(exp_class(omega.scale(K))) == KPoly.monomial(g)
    assert integrate_top(wedge_power(omega, g)) == omega_power_top_coefficient(g)


def test_integrate_top_wrong_degree():
    for g in range(1, 4):
        assert integrate_top(E.one(g)) == KPoly()
    assert integrate_top(E.one(0)) == 1


# A-hat

def test_bernoulli():
    assert bernoulli_numbers(8)[:5] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_a_hat_coefficients_match_series_division():
    assert a_hat_coefficients(8) == sinhc_reciprocal_series(8)
    c = a_hat_coefficients(4)
    assert c == [1, 0, Fraction(-1, 24), 0, Fraction(7, 5760)]


@pytest.mark.parametrize("g", range(0, 5))
@pytest.mark.parametrize("order", [0, 2, 4, 8])
def test_a_hat_zero_roots_is_unit(g, order):
    assert a_hat_series([E(g)] * g, order, genus=g) == E.one(g)


def test_a_hat_formal_root():
    # in genus 4, x = Omega has x^2, x^4 nonzero, so the full truncated series is visible
    omega = symplectic_class(4)
    got = a_hat_series([omega], 4)
    expected = (E.one(4) - wedge_power(omega, 2).scale(Fraction(1, 24))
                + wedge_power(omega, 4).scale(Fraction(7, 5760)))
    assert got == expected


def test_a_hat_nilpotent_truncation():
    assert a_hat_series([gen(1, 1) ^ gen(1, 2)], 4) == E.one(1)


def test_a_hat_errors():
    with pytest.raises(NonNilpotentInputError):
        a_hat_series([E.one(1)], 2)
    with pytest.raises(GenusMismatchError):
        a_hat_series([E(1)], 2, genus=2)


# eta and the partition function

@pytest.mark.parametrize("n,eta0,angle,phase", [
    (2, Fraction(-1, 3), Fraction(1, 6), None),
    (0, 0, 0, (1, 0)),
    (6, -1, Fraction(1, 2), (0, 1)),
    (12, -2, 1, (-1, 0)),
])
def test_eta_examples(n, eta0, angle, phase):
    e = eta_prefactor(n, 1)
    assert (e.eta0, e.angle_over_pi, e.phase) == (eta0, angle, phase)


def test_eta_scales_with_dim_g():
    assert eta_prefactor(3, 8).eta0 == -4


def test_localization_data():
    d = LocalizationData(4)
    assert d.eta0 == Fraction(-2, 3)
    assert str(d.epsilon) == str(d.epsilon_r) == "2*pi/k"
    assert d.theta_class == 0
    assert localization_integrand(2, d) == exp_class(symplectic_class(2).scale(K))


@pytest.mark.parametrize("g,n,k,mag", [(1, 2, 3, 3), (0, 1, 5, 1), (2, 1, 2, 4), (3, 7, 2, 8)])
def test_bw_partition_examples(g, n, k, mag):
    r = bw_partition_torus(g, n, k)
    assert r.magnitude == mag
    assert r.k_exponent == g
    assert r.polynomial == KPoly.monomial(g)
    assert r.polynomial.is_monomial()
    assert r.eta == eta_prefactor(n)


def test_bw_partition_components():
    assert bw_partition_torus(1, 3, 2, components=3).magnitude == 6


@pytest.mark.parametrize("args", [(-1, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_bw_partition_preconditions(args):
    with pytest.raises(ValueError):
        bw_partition_torus(*args)


# serialization

def test_exterior_json():
    a = symplectic_class(2).scale(K) + E(2, {(): Fraction(1, 3)})
    obj = a.to_json()
    assert obj["terms"][0] == {"generators": [], "coeff": [["1/3"]]}
    assert obj["terms"][1] == {"generators": [1, 2], "coeff": [["0", "1"]]}
    text = json.dumps(obj)
    assert E.from_json(json.loads(text)) == a
    assert json.dumps(E.from_json(json.loads(text)).to_json()) == text
