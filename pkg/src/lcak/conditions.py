"""Deciders for the structural conditions of an invariant almost Hermitian pair.

The flags live in a :class:`ConditionReport`; every flag is backed by a named
residual so a report can always be audited.  Exact-mode residuals must vanish
identically; float-mode flags compare against ``tol`` scaled by the norms of
the tensors involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import arith, connection, identities
from .conventions import CONVENTIONS
from .errors import NotFirstKind, NotLCS, UnsupportedDimension
from .forms import KForm
from .hermitian import AlmostHermitianStructure, Tensor2


@dataclass
class AutomorphismAlgebra:
    """Solutions of L_X F = 0 with the Lee morphism evaluated on them."""
    basis: list
    lee_values: list
    kind: str  # "first" | "second"

    @property
    def dimension(self):
        return len(self.basis)


@dataclass
class ConditionReport:
    flags: dict
    residuals: dict
    kind: str
    metadata: dict
    warnings: list = field(default_factory=list)

    def as_dict(self):
        return {
            "flags": dict(sorted(self.flags.items())),
            "residuals": {k: float(v) for k, v in sorted(self.residuals.items())},
            "kind": self.kind,
            "metadata": self.metadata,
            "warnings": list(self.warnings),
        }


def _bound(structure, scale=1.0):
    return 0.0 if structure.exact else structure.tol * max(1.0, float(scale))


def _pair_basis(dim):
    return list(combinations(range(dim), 2))


# ---------------------------------------------------------------------------
# LCS / first kind / adapted
# ---------------------------------------------------------------------------

def check_lcs(structure: AlmostHermitianStructure) -> dict:
    """dF = theta ^ F with d theta = 0, on a valid almost Hermitian pair."""
    val = structure.validation
    lee = structure.lee_form()
    scale = max(1.0, lee.theta.max_abs())
    is_lcs = (val.ok
              and lee.solve_residual <= _bound(structure, 1.0)
              and lee.dtheta_residual <= _bound(structure, scale))
    return {
        "is_lcs": bool(is_lcs),
        "theta": lee.theta,
        "structure_ok": val.ok,
        "compatibility_residual": val.compatibility_residual,
        "lee_residual": lee.solve_residual,
        "dtheta_residual": lee.dtheta_residual,
    }


def automorphism_algebra(structure: AlmostHermitianStructure) -> AutomorphismAlgebra:
    """Basis of {X : L_X F = 0} and the Lee morphism on it."""
    dim = structure.dim
    pairs = _pair_basis(dim)
    m = arith.zeros_matrix(len(pairs), dim, structure.exact)
    for col in range(dim):
        lf = structure.lie_derivative_F(structure.basis_vector(col))
        for row, key in enumerate(pairs):
            m[row, col] = lf.coeffs.get(key, structure.g[0, 0] * 0)
    basis = arith.nullspace(m, structure.exact, structure.tol)
    theta_vec = structure.lee_form().theta.vector()
    lee_values = [x @ theta_vec for x in basis]
    scale = max(1.0, arith.max_abs(theta_vec))
    onto = any(abs(float(v)) > _bound(structure, scale) for v in lee_values)
    return AutomorphismAlgebra(basis=basis, lee_values=lee_values,
                               kind="first" if onto else "second")


def check_first_kind(structure: AlmostHermitianStructure, strict: bool = True) -> dict:
    """First kind: some infinitesimal automorphism T has theta(T) = 1.

    When it exists, T is normalized to the minimal g-norm solution and the
    reconstruction F = d eta - theta ^ eta with eta = -i_T F is verified.
    """
    lcs = check_lcs(structure)
    if strict and not lcs["is_lcs"]:
        raise NotLCS("structure is not locally conformally symplectic")
    aut = automorphism_algebra(structure)
    out = {
        "first_kind": aut.kind == "first" and lcs["is_lcs"],
        "kind": aut.kind,
        "automorphism_dim": aut.dimension,
        "T_candidate": None,
        "theta_of_T": None,
        "f_reconstruction_residual": None,
    }
    if not out["first_kind"]:
        return out
    lee = structure.lee_form()
    theta_vec = lee.theta.vector()
    n_mat = arith.zeros_matrix(structure.dim, aut.dimension, structure.exact)
    for c, x in enumerate(aut.basis):
        for r in range(structure.dim):
            n_mat[r, c] = x[r]
    gram = n_mat.T @ structure.g @ n_mat
    w = n_mat.T @ theta_vec
    y = arith.solve_square(gram, w, structure.exact)
    lam = w @ y
    coef = y * (Fraction(1) / lam if structure.exact else 1.0 / lam)
    t_vec = n_mat @ coef
    eta = -1 * structure.F.contract(t_vec)
    recon = eta.d() - lee.theta.wedge(eta) - structure.F
    out["T_candidate"] = t_vec
    out["theta_of_T"] = t_vec @ theta_vec
    scale = max(1.0, structure.F.max_abs())
    out["f_reconstruction_residual"] = recon.max_abs() / scale
    return out


def check_adapted(structure: AlmostHermitianStructure, strict: bool = True,
                  normalize_scale: bool = True) -> dict:
    """Is J adapted to the first-kind structure (after unit Lee-norm scaling)?

    Tests, with T = J V (forced by J theta = -eta):  L_T F = 0, theta(T) = 1,
    J theta = -eta, J preserves H = ker theta  /\\  ker eta, the splitting
    H + span(T, V) is g-orthogonal with T, V orthonormal, and d eta(., J.)
    restricted to H is positive definite.
    """
    fk = check_first_kind(structure, strict=strict)
    if strict and not fk["first_kind"]:
        raise NotFirstKind("LCS structure is not of the first kind")
    lee = structure.lee_form()
    norm_sq = lee.norm_sq
    out = {"adapted": False, "lee_norm_sq": norm_sq, "scale_normalized": False,
           "residuals": {}, "first_kind": fk["first_kind"]}
    if not fk["first_kind"] or float(norm_sq) <= 0:
        return out
    s = structure
    if normalize_scale and norm_sq != 1:
        s = structure.rescaled(norm_sq)
        out["scale_normalized"] = True
    lee = s.lee_form()
    res = out["residuals"]
    v_vec = lee.V
    t_vec = s.J @ v_vec
    theta_vec = lee.theta.vector()
    res["automorphism"] = s.lie_derivative_F(t_vec).max_abs()
    res["theta_of_T"] = abs(float(t_vec @ theta_vec - 1))
    eta = -1 * s.F.contract(t_vec)
    res["jtheta_plus_eta"] = (s.j_one_form(lee.theta) + eta).max_abs()
    # H = ker theta  /\  ker eta
    two = arith.zeros_matrix(2, s.dim, s.exact)
    eta_vec = eta.vector()
    for c in range(s.dim):
        two[0, c] = theta_vec[c]
        two[1, c] = eta_vec[c]
    h_basis = arith.nullspace(two, s.exact, s.tol)
    res["h_dimension_defect"] = abs(len(h_basis) - (s.dim - 2))
    j_pres = 0.0
    orth = 0.0
    for h in h_basis:
        jh = s.J @ h
        j_pres = max(j_pres, abs(float(jh @ theta_vec)), abs(float(jh @ eta_vec)))
        orth = max(orth, abs(float(h @ s.g @ t_vec)), abs(float(h @ s.g @ v_vec)))
    res["j_preserves_h"] = j_pres
    res["splitting_orthogonal"] = orth
    res["tv_orthonormal"] = max(abs(float(t_vec @ s.g @ t_vec - 1)),
                                abs(float(v_vec @ s.g @ v_vec - 1)),
                                abs(float(t_vec @ s.g @ v_vec)))
    d_eta = eta.d()
    k = len(h_basis)
    gram = arith.zeros_matrix(k, k, s.exact)
    for a in range(k):
        for b in range(k):
            gram[a, b] = d_eta(h_basis[a], s.J @ h_basis[b])
    sym_defect = arith.max_abs(gram - gram.T)
    res["deta_metric_symmetric"] = sym_defect
    half = Fraction(1, 2) if s.exact else 0.5
    sym = half * (gram + gram.T)
    pd = arith.is_positive_definite(sym, s.exact, s.tol) if k else True
    res["deta_metric_positive"] = 0.0 if pd else 1.0
    scale = max(1.0, s.F.max_abs(), 1.0 + float(abs(norm_sq)))
    bound = _bound(s, scale)
    out["adapted"] = (pd
                      and res["h_dimension_defect"] == 0
                      and all(r <= bound for key, r in res.items()
                              if key not in ("deta_metric_positive", "h_dimension_defect")))
    return out


# ---------------------------------------------------------------------------
# the full report
# ---------------------------------------------------------------------------

def classify_metric(structure: AlmostHermitianStructure) -> ConditionReport:
    """Populate every structural flag with its residual, plus implication warnings."""
    s = structure
    flags = {}
    residuals = {}
    warnings = []

    val = s.validation
    residuals["jacobi"] = float(s.alg.jacobi_residual())
    residuals["compatibility"] = float(val.compatibility_residual)
    flags["structure_valid"] = bool(val.ok and residuals["jacobi"] <= _bound(s))

    lcs = check_lcs(s)
    lee = s.lee_form()
    theta = lee.theta
    residuals["lee_solve"] = float(lcs["lee_residual"])
    residuals["dtheta"] = float(lcs["dtheta_residual"])
    flags["is_lcs"] = lcs["is_lcs"]
    flags["lee_closed"] = residuals["dtheta"] <= _bound(s, max(1.0, theta.max_abs()))
    residuals["theta_norm"] = float(theta.max_abs())
    flags["is_gcs"] = residuals["theta_norm"] <= _bound(s)

    delta_theta = s.codifferential(theta).coeffs.get((), 0)
    residuals["delta_theta"] = abs(float(delta_theta))
    flags["is_gauduchon"] = residuals["delta_theta"] <= _bound(s, max(1.0, theta.max_abs()))

    # orthogonality of im N to span(T, JT)
    orth = 0.0
    for vec in s._nijenhuis_table.values():
        orth = max(orth, abs(float(vec @ s.g @ lee.T)), abs(float(vec @ s.g @ lee.JT)))
    residuals["imN_span_T_JT"] = orth
    n_scale = max(1.0, max((arith.max_abs(v) for v in s._nijenhuis_table.values()),
                           default=0.0) * max(1.0, arith.max_abs(lee.T)))
    flags["T_orthogonal_to_imN"] = orth <= _bound(s, n_scale)

    dth = connection.covariant_one_form(s, theta)
    parts = s.split_tensor(dth)
    dth_scale = max(1.0, dth.max_abs())
    residuals["dtheta_j_plus"] = float(parts["j_plus"].max_abs())
    residuals["dtheta_j_minus"] = float(parts["j_minus"].max_abs())
    residuals["dtheta_full"] = float(dth.max_abs())
    flags["Dtheta_J_anti_invariant"] = residuals["dtheta_j_plus"] <= _bound(s, dth_scale)
    flags["Dtheta_J_invariant"] = residuals["dtheta_j_minus"] <= _bound(s, dth_scale)
    flags["vaisman"] = flags["is_lcs"] and residuals["dtheta_full"] <= _bound(
        s, max(1.0, theta.max_abs()))

    flags["pluricanonical"] = (flags["is_lcs"] and flags["T_orthogonal_to_imN"]
                               and flags["Dtheta_J_anti_invariant"])
    flags["anti_pluricanonical"] = (flags["is_lcs"] and flags["T_orthogonal_to_imN"]
                                    and flags["Dtheta_J_invariant"])

    ltj = s.lie_derivative_J(lee.T)
    residuals["lie_T_J"] = float(arith.max_abs(ltj))
    flags["lee_field_holomorphic"] = residuals["lie_T_J"] <= _bound(
        s, max(1.0, arith.max_abs(lee.T)))
    ljt_g = s.lie_derivative_g(lee.JT)
    residuals["lie_JT_g"] = float(ljt_g.max_abs())
    flags["JT_killing"] = residuals["lie_JT_g"] <= _bound(s, max(1.0, arith.max_abs(lee.JT)))

    kind = "second"
    flags["first_kind"] = False
    flags["adapted"] = False
    if flags["is_lcs"]:
        fk = check_first_kind(s, strict=False)
        kind = fk["kind"]
        flags["first_kind"] = fk["first_kind"]
        if fk["first_kind"]:
            ad = check_adapted(s, strict=False)
            flags["adapted"] = ad["adapted"]
            residuals["adapted_jtheta_plus_eta"] = float(
                ad["residuals"].get("jtheta_plus_eta", 0.0))

    uni, _traces = s.alg.is_unimodular()
    flags["unimodular"] = bool(uni)

    # implication warnings: hypotheses proved in the source theory; a failure
    # here indicates an implementation bug, not a property of the input.
    def warn_if(cond, hypothesis, conclusion, residual):
        if cond and residual > _bound(s, 10.0):
            warnings.append(f"{hypothesis} should imply {conclusion}; "
                            f"residual {float(residual):.3e}")

    if flags["pluricanonical"]:
        warn_if(True, "pluricanonical", "Gauduchon", residuals["delta_theta"])
        ltf = s.lie_derivative_F(lee.T).max_abs()
        warn_if(True, "pluricanonical", "L_T F = 0", ltf)
        djt = lee.jtheta.d()
        target = -1 * lee.norm_sq * s.F + theta.wedge(lee.jtheta)
        warn_if(True, "pluricanonical", "dJtheta = -|theta|^2 F + theta^Jtheta",
                (djt - target).max_abs())
    if flags["T_orthogonal_to_imN"]:
        djt = lee.jtheta.d()
        jminus = s.split_tensor(Tensor2(s.alg, djt.matrix()))["j_minus"].max_abs()
        warn_if(True, "T orth im N", "dJtheta J-invariant", jminus)
        nt = s.nijenhuis_tensor(lee.T)
        warn_if(True, "T orth im N", "N(T) symmetric", nt.antisym().max_abs())
        dtj = arith.max_abs(sum((lee.T[i] * connection.covariant_J(s, i)
                                 for i in range(s.dim)),
                                arith.zeros_matrix(s.dim, s.dim, s.exact)))
        djtj = arith.max_abs(sum((lee.JT[i] * connection.covariant_J(s, i)
                                  for i in range(s.dim)),
                                 arith.zeros_matrix(s.dim, s.dim, s.exact)))
        warn_if(True, "T orth im N", "D_T J = 0", dtj)
        warn_if(True, "T orth im N", "D_JT J = 0", djtj)
    if flags["vaisman"]:
        if not (flags["pluricanonical"] and flags["anti_pluricanonical"]):
            warnings.append("vaisman flag set but pluricanonical/anti-pluricanonical "
                            "did not both follow")
    if flags["unimodular"] and flags["pluricanonical"]:
        rho = connection.star_ricci(s)
        warn_if(True, "unimodular pluricanonical", "rho*(T,JT) = 0",
                abs(float(rho(lee.T, lee.JT))))
        warn_if(True, "unimodular pluricanonical",
                "|(Dtheta)^{J,+}|^2 + 2<D_JT theta, Jtheta> = 0",
                abs(float(identities.unimodular_pluricanonical_defect(s))))

    metadata = {
        "arithmetic_mode": "exact" if s.exact else "float",
        "tolerance": s.tol,
        "lee_norm_sq": arith.format_scalar(lee.norm_sq),
        "conventions": CONVENTIONS,
    }
    return ConditionReport(flags=flags, residuals=residuals, kind=kind,
                           metadata=metadata, warnings=warnings)


# ---------------------------------------------------------------------------
# theorem-level equivalences
# ---------------------------------------------------------------------------

def verify_equivalences(structure: AlmostHermitianStructure, strict: bool = True,
                        report: ConditionReport = None) -> dict:
    """Evaluate both sides of each theorem-level equivalence independently.

    (a) pluricanonical <=> first kind and adapted            (theta != 0)
    (b) on unimodular with T orth im N:
        pluricanonical <=> g([T,JT],JT) = 0                  (LCS)
    (c) anti-pluricanonical <=> L_T J = 0                    (LCS, T orth im N)
    (d) pluricanonical => D_T theta = D_JT theta = D_T Jtheta
        = D_JT Jtheta = [T,JT] = 0
    (e) dim 4 unimodular: the wedge-square integrand of dJtheta vanishes
    """
    s = structure
    rep = report or classify_metric(s)
    if strict and not rep.flags["is_lcs"]:
        raise NotLCS("equivalences need an LCS structure")
    lee = s.lee_form()
    out = {}
    bound = _bound(s, max(1.0, float(abs(lee.norm_sq)) ** 1.5))

    pluri = rep.flags["pluricanonical"]
    nondegenerate_theta = not rep.flags["is_gcs"]
    fk = rep.flags["first_kind"]
    ad = rep.flags["adapted"]
    out["first_kind_adapted"] = {
        "applicable": bool(rep.flags["is_lcs"] and nondegenerate_theta),
        "lhs_first_kind_and_adapted": bool(fk and ad),
        "rhs_pluricanonical": bool(pluri),
        "consistent": (not (rep.flags["is_lcs"] and nondegenerate_theta))
                      or (bool(fk and ad) == bool(pluri)),
    }

    bk = s.alg.bracket(lee.T, lee.JT)
    g_bk = bk @ s.g @ lee.JT
    scale_b = max(1.0, arith.max_abs(bk) * max(1.0, arith.max_abs(lee.JT)))
    rhs_b = abs(float(g_bk)) <= _bound(s, scale_b)
    applicable_b = bool(rep.flags["is_lcs"] and rep.flags["unimodular"]
                        and rep.flags["T_orthogonal_to_imN"])
    out["unimodular_bracket"] = {
        "applicable": applicable_b,
        "lhs_pluricanonical": bool(pluri),
        "rhs_bracket_vanishes": bool(rhs_b),
        "g_T_JT_JT": float(g_bk),
        "consistent": (not applicable_b) or (bool(pluri) == bool(rhs_b)),
    }

    holo = rep.flags["lee_field_holomorphic"]
    anti = rep.flags["anti_pluricanonical"]
    applicable_c = bool(rep.flags["is_lcs"])
    out["holomorphic_lee_field"] = {
        "applicable": applicable_c,
        "lhs_anti_pluricanonical": bool(anti),
        "rhs_L_T_J_zero": bool(holo),
        "consistent": (not applicable_c) or (bool(anti) == bool(holo)),
    }

    if pluri:
        dth = connection.covariant_one_form(s, lee.theta)
        djth = connection.covariant_one_form(s, lee.jtheta)
        vals = {
            "D_T_theta": arith.max_abs(lee.T @ dth.mat),
            "D_JT_theta": arith.max_abs(lee.JT @ dth.mat),
            "D_T_Jtheta": arith.max_abs(lee.T @ djth.mat),
            "D_JT_Jtheta": arith.max_abs(lee.JT @ djth.mat),
            "bracket_T_JT": arith.max_abs(bk),
        }
        out["pluricanonical_consequences"] = {
            "applicable": True,
            "residuals": {k: float(v) for k, v in vals.items()},
            "consistent": all(v <= bound for v in vals.values()),
        }
    else:
        out["pluricanonical_consequences"] = {"applicable": False, "consistent": True}

    if s.dim == 4 and rep.flags["unimodular"]:
        integrand = identities.dim4_integrand_value(s)
        scale_e = max(1.0, float(abs(lee.norm_sq)) ** 2)
        out["dim4_integrand"] = {
            "applicable": True,
            "value": float(integrand),
            "consistent": abs(integrand) <= _bound(s, 10 * scale_e),
        }
    else:
        out["dim4_integrand"] = {"applicable": False, "consistent": True}

    out["all_consistent"] = all(v.get("consistent", True) for v in out.values()
                                if isinstance(v, dict))
    return out


# ---------------------------------------------------------------------------
# compatible-form feasibility
# ---------------------------------------------------------------------------

def _feasibility_subspace(structure):
    """Basis of {omega in Lambda^2 : omega J-invariant, d omega^{n-1} = 0}.

    Exact for n = 2 (there d omega^{n-1} = d omega).  For n >= 3 the closed
    slice d omega = 0 is searched (the constraint is no longer linear);
    the report records which space was used.
    """
    s = structure
    dim = s.dim
    pairs = _pair_basis(dim)
    three = list(combinations(range(dim), 3))
    tkey = {k: p for p, k in enumerate(three)}
    nrows = len(pairs) + len(three)
    mat = arith.zeros_matrix(nrows, len(pairs), s.exact)
    one = Fraction(1) if s.exact else 1.0
    for q, (a, b) in enumerate(pairs):
        m = arith.zeros_matrix(dim, dim, s.exact)
        m[a, b] = one
        m[b, a] = -one
        diff = m - s.J.T @ m @ s.J  # J-invariance defect of e^{ab}
        for p, (i, j) in enumerate(pairs):
            mat[p, q] = diff[i, j]
        w = KForm(s.alg, 2, {(a, b): one}).d()
        for key, val in w.coeffs.items():
            mat[len(pairs) + tkey[key], q] = val
    basis = arith.nullspace(mat, s.exact, s.tol)
    forms = []
    for x in basis:
        forms.append(KForm(s.alg, 2, {pairs[q]: x[q] for q in range(len(pairs))
                                      if x[q] != 0}))
    return forms


def symplectic_feasibility(structure: AlmostHermitianStructure, seed: int = 0,
                           restarts: int = 64, iterations: int = 250) -> dict:
    """Search invariant J-compatible forms with d omega^{n-1} = 0.

    Maximizes the minimal eigenvalue of omega(., J.) over the unit sphere of
    the constraint subspace by projected subgradient ascent.  Outcomes:

    * ``feasible`` with a witness when the optimum exceeds tol;
    * ``infeasible`` when the optimum is <= -tol, or when an exact isotropic
      certificate u with omega(u, Ju) = 0 for the whole subspace exists
      (then no compatible metric can be positive definite);
    * ``inconclusive`` otherwise.
    """
    s = structure
    dim = s.dim
    basis_forms = _feasibility_subspace(s)
    out = {
        "search_space": "closed_j_invariant" if s.n > 2 else "balanced_j_invariant",
        "subspace_dimension": len(basis_forms),
        "status": "inconclusive",
        "optimum": None,
        "witness": None,
        "certificate": None,
        "restarts": restarts,
    }
    if not basis_forms:
        out["status"] = "infeasible"
        out["certificate"] = "empty_subspace"
        return out
    g_mats = [np.asarray(w.matrix(), dtype=float) @ np.asarray(s.J, dtype=float)
              for w in basis_forms]
    g_mats = [0.5 * (m + m.T) for m in g_mats]
    k = len(g_mats)
    rng = np.random.default_rng(seed)
    best_val = -np.inf
    best_x = None
    for _ in range(restarts):
        x = rng.standard_normal(k)
        x /= np.linalg.norm(x)
        step = 0.5
        for it in range(iterations):
            m = sum(x[a] * g_mats[a] for a in range(k))
            w_eig, v_eig = np.linalg.eigh(m)
            u = v_eig[:, 0]
            grad = np.array([u @ g_mats[a] @ u for a in range(k)])
            x = x + step * grad
            nrm = np.linalg.norm(x)
            if nrm == 0:
                break
            x /= nrm
            step = 0.5 / (1 + it / 25.0)
        m = sum(x[a] * g_mats[a] for a in range(k))
        val = float(np.min(np.linalg.eigvalsh(m)))
        if val > best_val:
            best_val, best_x = val, x
    out["optimum"] = best_val
    if best_val > s.tol:
        out["status"] = "feasible"
        witness = KForm(s.alg, 2)
        for a, w in enumerate(basis_forms):
            witness = witness + float(best_x[a]) * (w if not s.exact
                                                    else _float_form(w, s))
        out["witness"] = _normalize_witness(s, witness, basis_forms, best_x)
        return out
    if best_val <= -s.tol:
        out["status"] = "infeasible"
        return out
    cert = _isotropic_certificate(s, basis_forms, g_mats, best_x)
    if cert is not None:
        out["status"] = "infeasible"
        out["certificate"] = cert
    return out


def _float_form(form, structure):
    return KForm(structure.alg, form.degree,
                 {k: float(v) for k, v in form.coeffs.items()})


def _normalize_witness(structure, witness, basis_forms, x):
    """Scale the witness so <omega, F> = n; rationalize it in exact mode.

    The exact path rounds the optimizer's coefficients to rationals and
    re-verifies positive definiteness exactly; on failure the float witness
    is returned as is.
    """
    s = structure
    if s.exact:
        # snap to small rationals first: drops optimizer noise in flat
        # directions and recovers canonical witnesses like F itself
        for max_den in (12, 64, 4096, 10 ** 6):
            coeffs = [arith.rationalize(c, max_den) for c in x]
            cand = KForm(s.alg, 2)
            for a, w in enumerate(basis_forms):
                cand = cand + coeffs[a] * w
            pairing = s.form_inner(cand, s.F)
            if pairing <= 0:
                continue
            cand = (Fraction(s.n) / pairing) * cand
            gw = cand.matrix() @ s.J
            half = Fraction(1, 2)
            sym = half * (gw + gw.T)
            if arith.is_positive_definite(sym, True):
                return cand
    from .forms import form_inner_product
    ginv = np.asarray(s.g_inv, dtype=float)
    wfloat = KForm(s.alg, 2, {k: float(v) for k, v in witness.coeffs.items()})
    ffloat = KForm(s.alg, 2, {k: float(v) for k, v in s.F.coeffs.items()})
    pairing = form_inner_product(wfloat, ffloat, ginv)
    if abs(pairing) > 1e-12:
        wfloat = (s.n / pairing) * wfloat
    return wfloat


def _isotropic_certificate(structure, basis_forms, g_mats, best_x):
    """A vector u with omega(u, Ju) = 0 for every omega in the subspace."""
    s = structure
    dim = s.dim
    candidates = [np.eye(dim)[i] for i in range(dim)]
    if best_x is not None:
        m = sum(best_x[a] * g_mats[a] for a in range(len(g_mats)))
        w_eig, v_eig = np.linalg.eigh(m)
        for idx in range(dim):
            if abs(w_eig[idx]) <= 10 * s.tol:
                candidates.append(v_eig[:, idx])
    for cand in candidates:
        nrm = np.linalg.norm(cand)
        if nrm < 1e-12:
            continue
        cand = cand / nrm
        if s.exact:
            u = np.array([arith.rationalize(c, 64) for c in cand], dtype=object)
            if all(u @ w.matrix() @ (s.J @ u) == 0 for w in basis_forms):
                if arith.max_abs(u) > 0:
                    return [arith.format_scalar(c) for c in u]
        else:
            ok = all(abs(float(cand @ np.asarray(w.matrix(), dtype=float)
                          @ (np.asarray(s.J, dtype=float) @ cand))) <= s.tol
                     for w in basis_forms)
            if ok:
                return [float(c) for c in cand]
    return None
