from fractions import Fraction

import numpy as np
import pytest

from lcak import identities
from lcak.algebra import LieAlgebra, abelian_algebra
from lcak.errors import DimensionMismatch
from lcak.forms import KForm, form_inner_product, hodge_star, merge_sign
from lcak.fuzzing import random_compatible_pair, random_hermitian_structure
from lcak.hermitian import AlmostHermitianStructure


def test_merge_sign():
    assert merge_sign((0, 1), (2, 3)) == (1, (0, 1, 2, 3))
    assert merge_sign((1, 3), (0, 2)) == (-1, (0, 1, 2, 3))
    assert merge_sign((0, 1), (1, 2))[0] == 0


def test_wedge_theta_f_a41(a41):
    theta = a41.lee_form().theta
    assert theta == KForm.from_terms(a41.alg, {(3,): -1})
    assert theta.wedge(a41.F) == KForm.from_terms(a41.alg, {(2, 3, 4): 1})


def test_wedge_square_of_one_form_vanishes(a41):
    rng = np.random.default_rng(0)
    for _ in range(10):
        alpha = KForm.from_vector(a41.alg, np.array(
            [Fraction(int(v)) for v in rng.integers(-3, 4, 4)], dtype=object))
        assert alpha.wedge(alpha).is_zero()


def test_wedge_theta_f_a48(a48):
    theta = a48.lee_form().theta
    assert theta.wedge(a48.F) == KForm.from_terms(a48.alg, {(2, 3, 4): -1})


def test_wedge_graded_commutativity():
    alg = abelian_algebra(6)
    rng = np.random.default_rng(1)

    def rand_form(k):
        coeffs = {}
        from itertools import combinations
        for key in combinations(range(6), k):
            v = int(rng.integers(-2, 3))
            if v:
                coeffs[key] = Fraction(v)
        return KForm(alg, k, coeffs)

    for ka, kb in [(1, 1), (1, 2), (2, 2), (2, 3), (1, 3)]:
        a, b = rand_form(ka), rand_form(kb)
        sign = (-1) ** (ka * kb)
        assert a.wedge(b) == sign * b.wedge(a)


def test_wedge_rejects_mismatched_algebras(a41):
    other = abelian_algebra(6)
    with pytest.raises(DimensionMismatch):
        a41.F.wedge(KForm.basis_one_form(other, 0))


def test_contraction_characteristic_field(a41, a48):
    for s, vexp in [(a41, [-1, 0, 0, 0]), (a48, [-1, 0, 0, 0])]:
        lee = s.lee_form()
        v = np.array([Fraction(x) for x in vexp], dtype=object)
        assert s.F.contract(v) == lee.theta
        assert all(a == b for a, b in zip(lee.V, v))


def test_contraction_linearity_and_nilpotency(a41):
    rng = np.random.default_rng(2)
    x = np.array([Fraction(int(v)) for v in rng.integers(-3, 4, 4)], dtype=object)
    f = Fraction(3, 7)
    assert (f * a41.F).contract(x) == f * a41.F.contract(x)
    three = a41.F.wedge(a41.lee_form().theta)
    assert three.contract(x).contract(x).is_zero()


def test_d_fundamental_form_a41(a41):
    assert a41.F.d() == KForm.from_terms(a41.alg, {(2, 3, 4): 1})


def test_d_fundamental_form_a48(a48):
    assert a48.F.d() == KForm.from_terms(a48.alg, {(2, 3, 4): -1})


def test_d_basis_one_form_a41(a41):
    # d e^1 = -e^{24} since de^k(e_i, e_j) = -c^k_{ij}
    e1 = KForm.basis_one_form(a41.alg, 0)
    assert e1.d() == KForm.from_terms(a41.alg, {(2, 4): -1})


def test_d_abelian_is_zero():
    alg = abelian_algebra(4)
    rng = np.random.default_rng(3)
    from itertools import combinations
    for k in (1, 2, 3):
        coeffs = {key: Fraction(int(rng.integers(-2, 3)))
                  for key in combinations(range(4), k)}
        assert KForm(alg, k, coeffs).d().is_zero()


def test_d_squared_zero_and_leibniz(rng):
    for _ in range(6):
        s = random_hermitian_structure(rng, dim=4)
        alg = s.alg
        from itertools import combinations
        def rand_form(k):
            return KForm(alg, k, {key: float(rng.standard_normal())
                                  for key in combinations(range(4), k)})
        for k in (1, 2):
            a = rand_form(k)
            assert a.d().d().max_abs() <= 1e-9 * max(1.0, a.max_abs())
        a, b = rand_form(1), rand_form(2)
        lhs = a.wedge(b).d()
        rhs = a.d().wedge(b) - a.wedge(b.d())
        assert (lhs - rhs).max_abs() <= 1e-9 * max(1.0, lhs.max_abs())


def test_cartan_formula_matches_direct_lie_derivative(rng):
    for _ in range(5):
        s = random_hermitian_structure(rng, dim=4)
        x = rng.standard_normal(4)
        for form in (s.F, s.lee_form().theta, s.F.wedge(s.lee_form().theta)):
            assert identities.cartan_formula_residual(s, form, x) <= 1e-9


def test_inner_product_orthonormal(a41):
    e13 = KForm.from_terms(a41.alg, {(1, 3): 1})
    assert form_inner_product(e13, e13, a41.g_inv) == 1
    assert form_inner_product(e13, a41.F, a41.g_inv) == 1


def test_inner_product_dj_theta_with_f(a41):
    # <dJtheta, F> = -1 = -(n-1)|theta|^2 - delta theta with n = 2
    djt = a41.lee_form().jtheta.d()
    assert form_inner_product(djt, a41.F, a41.g_inv) == -1


def test_hodge_star_f_self_dual(a41):
    assert hodge_star(a41.F, a41.g_inv, a41.volume) == a41.F


def test_hodge_star_squares(rng):
    for _ in range(4):
        s = random_hermitian_structure(rng, dim=4)
        from itertools import combinations
        for k in (1, 2, 3):
            a = KForm(s.alg, k, {key: float(rng.standard_normal())
                                 for key in combinations(range(4), k)})
            twice = hodge_star(hodge_star(a, s.g_inv, s.volume), s.g_inv, s.volume)
            sign = (-1) ** (k * (4 - k))
            assert (twice - sign * a).max_abs() <= 1e-8 * max(1.0, a.max_abs())


def test_hodge_defining_property(rng):
    s = random_hermitian_structure(rng, dim=4)
    from itertools import combinations
    keys = list(combinations(range(4), 2))
    for _ in range(5):
        a = KForm(s.alg, 2, {k: float(rng.standard_normal()) for k in keys})
        b = KForm(s.alg, 2, {k: float(rng.standard_normal()) for k in keys})
        lhs = a.wedge(hodge_star(b, s.g_inv, s.volume))
        rhs = form_inner_product(a, b, s.g_inv) * s.volume
        assert (lhs - rhs).max_abs() <= 1e-8 * max(1.0, lhs.max_abs())


def test_volume_positive_orientation_a41(a41):
    # F^2/2 = -e^{1234}: the orientation that makes F^n/n! positive
    assert a41.volume == KForm.from_terms(a41.alg, {(1, 2, 3, 4): -1})
    assert form_inner_product(a41.volume, a41.volume, a41.g_inv) == 1


def test_j_invariant_wedge_formula_exact(a41):
    # phi = F, psi = F reproduces the stated coefficient identity exactly
    assert identities.j_invariant_wedge_residual(a41, a41.F, a41.F) == 0
    phi = KForm.from_terms(a41.alg, {(1, 3): 1, (2, 4): -1})  # J-invariant
    psi = KForm.from_terms(a41.alg, {(1, 3): 1})
    assert identities.j_invariant_wedge_residual(a41, phi, psi) == 0


def test_j_invariant_wedge_formula_fuzz(rng):
    from lcak.fuzzing import _random_j_invariant_pair
    for _ in range(10):
        s = random_hermitian_structure(rng, dim=4 if rng.random() < 0.7 else 6)
        phi, psi = _random_j_invariant_pair(s, rng)
        assert identities.j_invariant_wedge_residual(s, phi, psi) <= 1e-9


def test_evaluation_is_antisymmetric(a41):
    f = a41.F
    rng = np.random.default_rng(5)
    x = np.array([Fraction(int(v)) for v in rng.integers(-3, 4, 4)], dtype=object)
    y = np.array([Fraction(int(v)) for v in rng.integers(-3, 4, 4)], dtype=object)
    assert f(x, y) == -f(y, x)
    assert f(x, x) == 0
