from fractions import Fraction

import numpy as np
import pytest

from lcak import arith
from lcak.algebra import LieAlgebra, abelian_algebra
from lcak.conditions import (automorphism_algebra, check_adapted, check_first_kind,
                             check_lcs, classify_metric, symplectic_feasibility,
                             verify_equivalences)
from lcak.errors import NotFirstKind, NotLCS
from lcak.forms import KForm
from lcak.fuzzing import build_almost_abelian, random_params_4d
from lcak.hermitian import AlmostHermitianStructure

A41_BRACKETS = {(2, 4): {1: 1}, (3, 4): {2: 1}}
SPLIT_J = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]


def test_check_lcs_a41(a41):
    out = check_lcs(a41)
    assert out["is_lcs"]
    assert out["theta"] == KForm.from_terms(a41.alg, {(3,): -1})
    assert out["dtheta_residual"] == 0 and out["lee_residual"] == 0


def test_check_lcs_abelian(abelian_kahler):
    out = check_lcs(abelian_kahler)
    assert out["is_lcs"] and out["theta"].is_zero()


def test_check_lcs_incompatible_metric_flags_false():
    # g = diag(1,1,1,4) is not J-invariant for the split J: the (J, g) pair
    # fails compatibility, so the LCS flag must come back false with the
    # defect reported.
    alg = LieAlgebra(4, A41_BRACKETS)
    g = np.diag([1, 1, 1, 4]).astype(object)
    s = AlmostHermitianStructure(alg, SPLIT_J, g, validate=False)
    out = check_lcs(s)
    assert not out["structure_ok"]
    assert not out["is_lcs"]
    assert out["compatibility_residual"] == 3


def test_check_lcs_closed_theta_required():
    # split-adjacent J on A4_1 gives dF = theta ^ F with d theta != 0
    alg = LieAlgebra(4, A41_BRACKETS)
    j = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    s = AlmostHermitianStructure(alg, j)
    out = check_lcs(s)
    assert out["lee_residual"] == 0      # dim 4: exact solve always
    assert out["dtheta_residual"] > 0    # but the Lee form is not closed
    assert not out["is_lcs"]


def test_automorphism_algebra_a41(a41):
    aut = automorphism_algebra(a41)
    assert aut.kind == "first"
    assert aut.dimension == 2
    theta = a41.lee_form().theta.vector()
    assert any(x @ theta != 0 for x in aut.basis)


def test_automorphisms_preserve_theta(a41):
    # L_X F = 0 automatically implies L_X theta = 0
    for x in automorphism_algebra(a41).basis:
        lt = a41.lee_form().theta.lie_derivative(x)
        assert lt.is_zero()


def test_check_first_kind_catalog(a41, a48):
    for s, t_expected in [(a41, [0, 0, -1, 0]), (a48, [0, 0, 0, -1])]:
        out = check_first_kind(s)
        assert out["first_kind"]
        assert all(a == b for a, b in zip(out["T_candidate"], t_expected))
        assert out["theta_of_T"] == 1
        assert out["f_reconstruction_residual"] == 0


def test_check_first_kind_abelian_is_second_kind(abelian_kahler):
    out = check_first_kind(abelian_kahler)
    assert not out["first_kind"]
    assert out["kind"] == "second"


def test_check_first_kind_raises_not_lcs():
    alg = LieAlgebra(4, A41_BRACKETS)
    j = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    s = AlmostHermitianStructure(alg, j)
    with pytest.raises(NotLCS):
        check_first_kind(s)


def test_check_adapted_a41(a41):
    out = check_adapted(a41)
    assert out["adapted"]
    assert all(float(v) == 0 for v in out["residuals"].values())


def test_check_adapted_a48(a48):
    assert check_adapted(a48)["adapted"]


def test_adapted_h_splitting_a41(a41):
    # H = ker theta /\ ker eta = span(e2, e4); d eta(., J.) restricted to H
    # equals the identity in that basis
    lee = a41.lee_form()
    eta = lee.eta
    assert eta == KForm.from_terms(a41.alg, {(1,): -1})
    d_eta = eta.d()
    e2, e4 = a41.basis_vector(1), a41.basis_vector(3)
    assert d_eta(e2, a41.J @ e2) == 1
    assert d_eta(e4, a41.J @ e4) == 1
    assert d_eta(e2, a41.J @ e4) == 0


def test_flipped_j_breaks_characteristic_identity(a41):
    # against the *fixed* LCS structure (F, theta) of A4_1, the flipped J
    # sends the characteristic field V to -T instead of T
    lee = a41.lee_form()
    j_flipped = -1 * a41.J
    assert all(a == -b for a, b in zip(j_flipped @ lee.V, lee.T))
    # and F(., j_flipped .) is negative definite, so the flipped J is not
    # compatible with F at all
    metric = a41.f_matrix @ j_flipped
    assert not arith.is_positive_definite(metric, True)
    assert arith.is_positive_definite(-1 * metric, True)


def test_check_adapted_raises_not_first_kind(abelian_kahler):
    with pytest.raises(NotFirstKind):
        check_adapted(abelian_kahler)


def test_check_adapted_scale_normalizes(a41):
    scaled = a41.rescaled(4)
    out = check_adapted(scaled)
    assert out["adapted"] and out["scale_normalized"]
    assert out["lee_norm_sq"] == Fraction(1, 4)
    strict = check_adapted(scaled, normalize_scale=False)
    assert not strict["adapted"]


def test_classify_metric_a41(a41):
    rep = classify_metric(a41)
    assert rep.flags["pluricanonical"]
    assert not rep.flags["vaisman"]
    assert rep.flags["is_gauduchon"]
    assert rep.flags["first_kind"] and rep.flags["adapted"]
    assert not rep.flags["anti_pluricanonical"]
    assert not rep.flags["lee_field_holomorphic"]
    assert rep.warnings == []
    assert rep.metadata["arithmetic_mode"] == "exact"


def test_classify_metric_a48(a48):
    rep = classify_metric(a48)
    assert rep.flags["pluricanonical"] and not rep.flags["vaisman"]
    assert rep.warnings == []


def test_classify_metric_abelian(abelian_kahler):
    rep = classify_metric(abelian_kahler)
    assert rep.flags["vaisman"] and rep.flags["is_gcs"]
    assert rep.flags["pluricanonical"] and rep.flags["anti_pluricanonical"]
    assert not rep.flags["first_kind"]
    assert rep.kind == "second"
    assert rep.warnings == []


def test_classify_metric_scale_invariance(a41):
    rep = classify_metric(a41.rescaled(9))
    assert rep.flags["pluricanonical"] and rep.flags["adapted"]
    assert rep.warnings == []


def test_verify_equivalences_a41(a41):
    eq = verify_equivalences(a41)
    assert eq["all_consistent"]
    assert eq["unimodular_bracket"]["applicable"]
    assert eq["unimodular_bracket"]["g_T_JT_JT"] == 0
    assert eq["pluricanonical_consequences"]["applicable"]
    assert all(v == 0 for v in
               eq["pluricanonical_consequences"]["residuals"].values())
    assert eq["dim4_integrand"]["applicable"]
    assert eq["dim4_integrand"]["value"] == 0


def test_verify_equivalences_abelian(abelian_kahler):
    eq = verify_equivalences(abelian_kahler)
    assert eq["all_consistent"]
    assert not eq["first_kind_adapted"]["applicable"]  # theta = 0


def test_verify_equivalences_requires_lcs():
    alg = LieAlgebra(4, A41_BRACKETS)
    j = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    s = AlmostHermitianStructure(alg, j)
    with pytest.raises(NotLCS):
        verify_equivalences(s)


def test_equivalences_fuzz_all_families(rng):
    for trial in range(24):
        kind = ("general", "lee_closed", "pluricanonical", "orth_not_pluri")[trial % 4]
        s = build_almost_abelian(random_params_4d(rng, kind))[1].as_float()
        rep = classify_metric(s)
        eq = verify_equivalences(s, strict=False, report=rep)
        assert eq["all_consistent"], (kind, eq)
        assert rep.warnings == [], (kind, rep.warnings)


def test_feasibility_a41_infeasible(a41):
    out = symplectic_feasibility(a41)
    assert out["status"] == "infeasible"
    assert out["optimum"] <= a41.tol
    assert out["certificate"] is not None


def test_feasibility_a48_infeasible(a48):
    out = symplectic_feasibility(a48)
    assert out["status"] == "infeasible"
    assert out["certificate"] is not None


def test_feasibility_abelian_witness_is_f(abelian_kahler):
    out = symplectic_feasibility(abelian_kahler)
    assert out["status"] == "feasible"
    assert out["witness"] == abelian_kahler.F


def test_feasibility_witness_properties(rng):
    # any returned witness must satisfy the constraints and be genuinely
    # compatible: d omega^{n-1} = 0 exactly and omega(., J.) positive definite
    from lcak.catalogs import catalog_entry
    s = catalog_entry("abelian_kahler")
    out = symplectic_feasibility(s)
    w = out["witness"]
    assert w.d().is_zero()
    m = w.matrix() @ s.J
    assert arith.is_positive_definite(Fraction(1, 2) * (m + m.T), True)


def test_feasibility_certificate_is_exact_isotropic(a41):
    out = symplectic_feasibility(a41)
    u = np.array([Fraction(c) for c in out["certificate"]], dtype=object)
    from lcak.conditions import _feasibility_subspace
    for w in _feasibility_subspace(a41):
        assert u @ w.matrix() @ (a41.J @ u) == 0
