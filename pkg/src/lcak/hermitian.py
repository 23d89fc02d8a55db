"""Almost Hermitian structures (J, g) on a Lie algebra.

Conventions (fixed once, used everywhere):

* fundamental form  ``F(X, Y) = g(JX, Y)``;
* on 1-forms        ``(J alpha)(X) = -alpha(JX)``;
* Nijenhuis tensor  ``4 N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY]``;
* Lee form theta solves ``dF = theta ^ F`` (exactly on LCS structures, in the
  least-squares sense otherwise, with the residual reported);
* characteristic field V solves ``i_V F = theta``;
* codifferential ``(delta phi)(...) = -sum_ab g^{ab} (D_{e_a} phi)(e_b, ...)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np

from . import arith
from .algebra import LieAlgebra
from .arith import DEFAULT_TOL
from .errors import (DegenerateMetric, DimensionMismatch, NondegeneracyFailure,
                     ValidationError)
from .forms import KForm, derive_along, form_inner_product


class Tensor2:
    """A general bilinear form on the algebra, stored as its component matrix."""

    __slots__ = ("alg", "mat")

    def __init__(self, alg, mat):
        mat = np.asarray(mat)
        if mat.shape != (alg.dim, alg.dim):
            raise DimensionMismatch("Tensor2 matrix has wrong shape")
        self.alg = alg
        self.mat = mat

    def __call__(self, x, y):
        return np.asarray(x) @ self.mat @ np.asarray(y)

    def __add__(self, other):
        return Tensor2(self.alg, self.mat + other.mat)

    def __sub__(self, other):
        return Tensor2(self.alg, self.mat - other.mat)

    def __rmul__(self, scalar):
        return Tensor2(self.alg, scalar * self.mat)

    def transpose(self):
        return Tensor2(self.alg, self.mat.T)

    def sym(self):
        half = Fraction(1, 2) if _mat_exact(self.mat) else 0.5
        return Tensor2(self.alg, half * (self.mat + self.mat.T))

    def antisym(self):
        half = Fraction(1, 2) if _mat_exact(self.mat) else 0.5
        return Tensor2(self.alg, half * (self.mat - self.mat.T))

    def as_form(self):
        """Interpret an antisymmetric tensor as a 2-form."""
        return KForm.from_matrix(self.alg, self.antisym().mat * 1)

    def max_abs(self):
        return arith.max_abs(self.mat)

    def __repr__(self):
        return f"Tensor2({self.mat!r})"


def _mat_exact(mat):
    return mat.dtype == object


@dataclass
class StructureValidationReport:
    j_squared_ok: bool
    g_symmetric: bool
    g_positive_definite: bool
    g_j_invariant: bool
    f_nondegenerate: bool
    compatibility_residual: float

    @property
    def ok(self):
        return (self.j_squared_ok and self.g_symmetric and
                self.g_positive_definite and self.g_j_invariant and
                self.f_nondegenerate)

    def as_dict(self):
        return {
            "j_squared_ok": self.j_squared_ok,
            "g_symmetric": self.g_symmetric,
            "g_positive_definite": self.g_positive_definite,
            "g_j_invariant": self.g_j_invariant,
            "f_nondegenerate": self.f_nondegenerate,
            "compatibility_residual": self.compatibility_residual,
            "ok": self.ok,
        }


@dataclass
class LeeData:
    """Lee form and its companions for one structure.

    ``theta`` solves dF = theta ^ F (residual reported), ``T`` is its metric
    dual, ``V`` the characteristic field (i_V F = theta), ``eta = -i_T F``
    (identically -J theta for T = theta sharp), ``norm_sq = theta(T)``.
    """
    theta: KForm
    T: np.ndarray
    jtheta: KForm
    JT: np.ndarray
    eta: KForm
    V: np.ndarray
    norm_sq: object
    solve_residual: float
    dtheta_residual: float


def validate_structure(J, g, alg=None, tol=DEFAULT_TOL) -> StructureValidationReport:
    """Check J^2 = -id, g symmetric positive definite and J-invariant."""
    J = np.asarray(J)
    g = np.asarray(g)
    if J.shape != g.shape or J.shape[0] != J.shape[1]:
        raise DimensionMismatch("J and g must be square of equal size")
    if alg is not None and J.shape[0] != alg.dim:
        raise DimensionMismatch("matrix size != algebra dimension")
    dim = J.shape[0]
    exact = arith.all_exact(J.ravel().tolist()) and arith.all_exact(g.ravel().tolist())
    bound = 0 if exact else tol
    Jm = arith.to_matrix(J.tolist(), exact)
    gm = arith.to_matrix(g.tolist(), exact)
    ident = arith.identity_matrix(dim, exact)
    j_sq = arith.max_abs(Jm @ Jm + ident) <= bound
    g_sym = arith.max_abs(gm - gm.T) <= bound
    g_pd = g_sym and arith.is_positive_definite(gm, exact, tol)
    compat = arith.max_abs(Jm.T @ gm @ Jm - gm)
    g_jinv = compat <= bound * max(1.0, arith.max_abs(gm)) if not exact else compat == 0
    f_mat = Jm.T @ gm
    f_nondeg = True
    try:
        f_nondeg = arith.determinant(f_mat, exact) != 0 if exact else \
            abs(arith.determinant(f_mat, False)) > tol
    except Exception:
        f_nondeg = False
    return StructureValidationReport(
        j_squared_ok=bool(j_sq),
        g_symmetric=bool(g_sym),
        g_positive_definite=bool(g_pd),
        g_j_invariant=bool(g_jinv),
        f_nondegenerate=bool(f_nondeg),
        compatibility_residual=float(compat),
    )


class AlmostHermitianStructure:
    """A left-invariant almost Hermitian structure (J, g) with F = g(J., .).

    Parameters
    ----------
    alg : LieAlgebra
    J : dim x dim matrix with J^2 = -id (columns are J e_j).
    g : dim x dim Gram matrix; identity when omitted.
    validate : raise ValidationError on invalid input (default). Pass False
        to build a structure that fails validation on purpose (the condition
        checkers then report the defect instead of raising).
    """

    def __init__(self, alg: LieAlgebra, J, g=None, tol=None, validate=True, name=None):
        dim = alg.dim
        J = np.asarray(J)
        if g is None:
            g = arith.identity_matrix(dim, alg.exact)
        g = np.asarray(g)
        exact = (alg.exact and arith.all_exact(J.ravel().tolist())
                 and arith.all_exact(g.ravel().tolist()))
        self.alg = alg if exact == alg.exact else alg.as_float()
        self.exact = exact
        self.tol = float(tol) if tol is not None else self.alg.tol
        self.J = arith.to_matrix(J.tolist(), exact)
        self.g = arith.to_matrix(g.tolist(), exact)
        self.name = name
        self.validation = validate_structure(self.J, self.g, self.alg, self.tol)
        if validate and not self.validation.ok:
            code = "J_NOT_ACS" if not self.validation.j_squared_ok else (
                "G_NOT_SYMMETRIC" if not self.validation.g_symmetric else (
                    "G_NOT_POSITIVE_DEFINITE" if not self.validation.g_positive_definite
                    else "G_NOT_J_INVARIANT"))
            raise ValidationError(f"invalid almost Hermitian data: {code}", code=code)

    # -- basic derived data ---------------------------------------------------

    @property
    def dim(self):
        return self.alg.dim

    @property
    def n(self):
        return self.alg.dim // 2

    @cached_property
    def g_inv(self):
        try:
            return arith.invert(self.g, self.exact)
        except DegenerateMetric as e:
            raise DegenerateMetric("metric is singular") from e

    @cached_property
    def f_matrix(self):
        return self.J.T @ self.g

    @cached_property
    def F(self) -> KForm:
        return KForm.from_matrix(self.alg, self.f_matrix)

    @cached_property
    def volume(self) -> KForm:
        v = self.F
        out = self.F
        fact = 1
        for k in range(2, self.n + 1):
            out = out.wedge(v)
            fact *= k
        inv = Fraction(1, fact) if self.exact else 1.0 / fact
        return inv * out

    def is_zero(self, value, scale=1.0):
        bound = 0 if self.exact else self.tol * max(1.0, float(scale))
        return abs(float(value)) <= bound

    # -- J actions --------------------------------------------------------------

    def j_vector(self, x):
        return self.J @ np.asarray(x)

    def j_one_form(self, a):
        """(J alpha)(X) = -alpha(JX)."""
        if isinstance(a, KForm):
            return KForm.from_vector(self.alg, -(self.J.T @ a.vector()))
        return -(self.J.T @ np.asarray(a))

    def two_form_j_twist(self, phi):
        """phi -> -phi(J., .), the J-action on J-anti-invariant 2-forms."""
        m = phi.matrix() if isinstance(phi, KForm) else np.asarray(phi)
        return KForm.from_matrix(self.alg, -(self.J.T @ m))

    def compose_first_slot_with_j(self, mat):
        """phi(J., .) as a matrix."""
        return self.J.T @ np.asarray(mat)

    # -- tensor splittings -------------------------------------------------------

    def split_tensor(self, phi):
        """J-(anti)invariant and (anti)symmetric parts; parts sum back exactly."""
        m = phi.mat if isinstance(phi, Tensor2) else np.asarray(phi)
        half = Fraction(1, 2) if self.exact else 0.5
        pulled = self.J.T @ m @ self.J
        return {
            "j_plus": Tensor2(self.alg, half * (m + pulled)),
            "j_minus": Tensor2(self.alg, half * (m - pulled)),
            "sym": Tensor2(self.alg, half * (m + m.T)),
            "antisym": Tensor2(self.alg, half * (m - m.T)),
        }

    # -- norms and inner products -------------------------------------------------

    def vector_norm_sq(self, x):
        x = np.asarray(x)
        return x @ self.g @ x

    def vector_inner(self, x, y):
        return np.asarray(x) @ self.g @ np.asarray(y)

    def one_form_norm_sq(self, a):
        v = a.vector() if isinstance(a, KForm) else np.asarray(a)
        return v @ self.g_inv @ v

    def form_inner(self, a, b):
        return form_inner_product(a, b, self.g_inv)

    def form_norm_sq(self, a):
        return form_inner_product(a, a, self.g_inv)

    def tensor_norm_sq(self, phi):
        """Frobenius norm squared w.r.t. g: sum g^ik g^jl phi_ij phi_kl."""
        m = phi.mat if isinstance(phi, Tensor2) else np.asarray(phi)
        return np.trace(self.g_inv @ m @ self.g_inv @ m.T)

    def endo_inner(self, a, b):
        """<A, B>_g = tr(g^-1 A^T g B) for endomorphisms."""
        return np.trace(self.g_inv @ np.asarray(a).T @ self.g @ np.asarray(b))

    def sharp(self, a):
        """Vector dual of a 1-form."""
        v = a.vector() if isinstance(a, KForm) else np.asarray(a)
        return self.g_inv @ v

    def flat(self, x):
        """1-form dual of a vector."""
        return KForm.from_vector(self.alg, self.g @ np.asarray(x))

    # -- Nijenhuis tensor ----------------------------------------------------------

    def nijenhuis(self, x, y):
        """4 N(X,Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY], returns N(X,Y)."""
        x = np.asarray(x)
        y = np.asarray(y)
        br = self.alg.bracket
        jx, jy = self.J @ x, self.J @ y
        quarter = Fraction(1, 4) if self.exact else 0.25
        return quarter * (br(jx, jy) - br(x, y) - self.J @ br(jx, y) - self.J @ br(x, jy))

    @cached_property
    def _nijenhuis_table(self):
        dim = self.dim
        table = {}
        for i in range(dim):
            for j in range(i + 1, dim):
                ei = arith.zeros_vector(dim, self.exact)
                ej = arith.zeros_vector(dim, self.exact)
                ei[i] = Fraction(1) if self.exact else 1.0
                ej[j] = Fraction(1) if self.exact else 1.0
                table[(i, j)] = self.nijenhuis(ei, ej)
        return table

    def nijenhuis_form(self, x):
        """N_X = g(N(., .), X) as a 2-form."""
        x = np.asarray(x)
        gx = self.g @ x
        coeffs = {}
        for (i, j), vec in self._nijenhuis_table.items():
            val = vec @ gx
            if val != 0:
                coeffs[(i, j)] = val
        return KForm(self.alg, 2, coeffs)

    def nijenhuis_tensor(self, x):
        """N(X) = g(N(X, .), .) as a Tensor2."""
        x = np.asarray(x)
        dim = self.dim
        m = arith.zeros_matrix(dim, dim, self.exact)
        for j in range(dim):
            ej = arith.zeros_vector(dim, self.exact)
            ej[j] = Fraction(1) if self.exact else 1.0
            row = self.g @ self.nijenhuis(x, ej)
            for k in range(dim):
                m[j, k] = row[k]
        return Tensor2(self.alg, m)

    def nijenhuis_image(self):
        """Basis of span{N(e_i, e_j)} as a list of vectors."""
        cols = [vec for vec in self._nijenhuis_table.values()
                if arith.max_abs(vec) > (0 if self.exact else self.tol)]
        if not cols:
            return []
        mat = np.array(cols, dtype=object if self.exact else float)
        if self.exact:
            rows = [[Fraction(v) for v in row] for row in mat]
            pivots = arith._rref(rows)
            return [np.array(rows[r], dtype=object) for r in range(len(pivots))]
        u, s, vt = np.linalg.svd(mat.astype(float))
        cutoff = self.tol * max(1.0, s[0] if s.size else 0.0)
        return [vt[i] for i in range(int(np.sum(s > cutoff)))]

    # -- Lee form ----------------------------------------------------------------

    def lee_form(self) -> LeeData:
        return self._lee

    @cached_property
    def _lee(self) -> LeeData:
        alg = self.alg
        dim = self.dim
        if self.exact:
            if arith.determinant(self.f_matrix, True) == 0:
                raise NondegeneracyFailure("fundamental form is degenerate")
        elif abs(arith.determinant(self.f_matrix, False)) <= self.tol:
            raise NondegeneracyFailure("fundamental form is degenerate")
        dF = self.F.d()
        three_keys = list(combinations(range(dim), 3))
        key_pos = {k: p for p, k in enumerate(three_keys)}
        nkeys = len(three_keys)
        theta_vec = arith.zeros_vector(dim, self.exact)
        solve_residual = 0.0
        if nkeys:
            a = arith.zeros_matrix(nkeys, dim, self.exact)
            for i in range(dim):
                ei = KForm.basis_one_form(alg, i)
                w = ei.wedge(self.F)
                for key, val in w.coeffs.items():
                    a[key_pos[key], i] = val
            b = arith.zeros_vector(nkeys, self.exact)
            for key, val in dF.coeffs.items():
                b[key_pos[key]] = val
            theta_vec, res = arith.solve_least_squares(a, b, self.exact)
            if arith.max_abs(res) > (0 if self.exact else
                                     self.tol * max(1.0, arith.max_abs(b))):
                # no exact solution: minimize ||dF - theta ^ F|| in the metric
                # norm on 3-forms, which recovers the usual Lee form
                # J delta^g F / (n - 1) of a non-LCS structure.
                gram = arith.zeros_matrix(nkeys, nkeys, self.exact)
                basis3 = [KForm(alg, 3, {k: Fraction(1) if self.exact else 1.0})
                          for k in three_keys]
                for p in range(nkeys):
                    for q in range(p, nkeys):
                        val = form_inner_product(basis3[p], basis3[q], self.g_inv)
                        gram[p, q] = val
                        gram[q, p] = val
                normal = a.T @ gram @ a
                rhs = a.T @ gram @ b
                theta_vec = arith.solve_square(normal, rhs, self.exact)
                res = b - a @ theta_vec
            scale = max(1.0, arith.max_abs(b))
            solve_residual = arith.max_abs(res) / scale
        theta = KForm.from_vector(alg, theta_vec)
        T = self.g_inv @ theta_vec
        jtheta = self.j_one_form(theta)
        JT = self.J @ T
        # i_V F = theta  <=>  F^T V = theta
        V = arith.solve_square(self.f_matrix.T, theta_vec, self.exact)
        eta = -1 * self.F.contract(T)
        norm_sq = theta_vec @ T
        dtheta = theta.d()
        return LeeData(theta=theta, T=T, jtheta=jtheta, JT=JT, eta=eta, V=V,
                       norm_sq=norm_sq,
                       solve_residual=float(solve_residual),
                       dtheta_residual=dtheta.max_abs())

    # -- connection-dependent operations (tables built in connection.py) -------

    @cached_property
    def connection(self):
        from . import connection
        return connection.levi_civita(self)

    @cached_property
    def curvature(self):
        from . import connection
        return connection.curvature(self)

    def codifferential(self, obj):
        """delta^g on forms and 2-tensors via the covariant-derivative trace."""
        gamma = self.connection.gamma
        ginv = self.g_inv
        dim = self.dim
        if isinstance(obj, Tensor2):
            out = arith.zeros_vector(dim, self.exact)
            for a in range(dim):
                da = -(gamma[a].T @ obj.mat + obj.mat @ gamma[a])
                for b in range(dim):
                    if ginv[a, b] != 0:
                        out = out - ginv[a, b] * da[b]
            return KForm.from_vector(self.alg, out)
        if isinstance(obj, KForm):
            if obj.degree == 0:
                return KForm(self.alg, 0)
            result = KForm(self.alg, obj.degree - 1)
            basis = [arith.zeros_vector(dim, self.exact) for _ in range(dim)]
            one = Fraction(1) if self.exact else 1.0
            for b in range(dim):
                basis[b][b] = one
            for a in range(dim):
                da = derive_along(obj, gamma[a])
                for b in range(dim):
                    if ginv[a, b] != 0:
                        result = result + (-ginv[a, b]) * da.contract(basis[b])
            return result
        raise DimensionMismatch("codifferential expects a KForm or Tensor2")

    # -- Lie derivatives -----------------------------------------------------------

    def lie_derivative_J(self, x):
        """(L_X J)(Y) = [X, JY] - J[X, Y] as an endomorphism matrix."""
        ad = self.alg.ad(np.asarray(x))
        return ad @ self.J - self.J @ ad

    def lie_derivative_F(self, x):
        """(L_X F)(Y, Z) = -F([X,Y], Z) - F(Y, [X,Z]) as a 2-form."""
        ad = self.alg.ad(np.asarray(x))
        m = -(ad.T @ self.f_matrix + self.f_matrix @ ad)
        return KForm.from_matrix(self.alg, m)

    def lie_derivative_g(self, x):
        ad = self.alg.ad(np.asarray(x))
        return Tensor2(self.alg, -(ad.T @ self.g + self.g @ ad))

    # -- transforms ------------------------------------------------------------------

    def rescaled(self, factor):
        """Same J, metric scaled: g -> factor * g."""
        factor = arith.as_scalar(factor, self.exact)
        return AlmostHermitianStructure(self.alg, self.J, factor * self.g,
                                        tol=self.tol, validate=False, name=self.name)

    def change_basis(self, p):
        """Transport the whole structure to the basis with columns of P."""
        p = np.asarray(p)
        exact = self.exact and arith.all_exact(p.ravel().tolist())
        alg2 = self.alg.change_basis(p)
        pm = arith.to_matrix(p.tolist(), exact)
        pinv = arith.invert(pm, exact)
        j2 = pinv @ self.J @ pm
        g2 = pm.T @ self.g @ pm
        return AlmostHermitianStructure(alg2, j2, g2, tol=self.tol, validate=False,
                                        name=self.name)

    def as_float(self):
        if not self.exact:
            return self
        return AlmostHermitianStructure(
            self.alg.as_float(),
            self.J.astype(float), self.g.astype(float),
            tol=self.tol, validate=False, name=self.name)

    def basis_vector(self, i):
        v = arith.zeros_vector(self.dim, self.exact)
        v[i] = Fraction(1) if self.exact else 1.0
        return v

    def __repr__(self):
        return (f"AlmostHermitianStructure(dim={self.dim}, exact={self.exact}"
                + (f", name={self.name!r}" if self.name else "") + ")")
