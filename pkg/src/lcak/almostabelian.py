"""Almost abelian algebras: the (a, b, v, A) parametrization and the
4-dimensional unimodular classification.

The algebra has the abelian ideal n = span(e_1 .. e_{2n-1}); everything is
encoded by ad_{e_{2n}} restricted to n, written in the splitting
R e_1 + n_1 (n_1 = span(e_2 .. e_{2n-1})) as the block matrix

        [ a  b ]
        [ v  A ],    a real, b and v in n_1, A an endomorphism of n_1.

The distinguished structure is J e_i = e_{2n+1-i} (i <= n) with the
orthonormal metric, so F = e^1 ^ e^{2n} + ... + e^n ^ e^{n+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .algebra import LieAlgebra
from .arith import DEFAULT_TOL
from .errors import Degenerate, DimensionMismatch, PreconditionFailed, UnsupportedDimension
from .forms import KForm
from .hermitian import AlmostHermitianStructure


@dataclass
class AlmostAbelianParams:
    """Data (a, b, v, A) of ad_{e_{2n}} restricted to the abelian ideal."""
    n: int
    a: object
    b: tuple
    v: tuple
    A: tuple  # rows, (2n-2) x (2n-2)

    def __post_init__(self):
        if self.n < 2:
            raise UnsupportedDimension("need n >= 2")
        m = 2 * self.n - 2
        self.b = tuple(self.b)
        self.v = tuple(self.v)
        self.A = tuple(tuple(row) for row in self.A)
        if len(self.b) != m or len(self.v) != m:
            raise DimensionMismatch("b and v must have length 2n-2")
        if len(self.A) != m or any(len(r) != m for r in self.A):
            raise DimensionMismatch("A must be (2n-2) x (2n-2)")

    @property
    def exact(self):
        vals = [self.a, *self.b, *self.v]
        for row in self.A:
            vals.extend(row)
        return arith.all_exact(vals)

    @property
    def dim(self):
        return 2 * self.n

    def trace_a(self):
        return sum(self.A[i][i] for i in range(2 * self.n - 2))

    def is_unimodular(self):
        t = self.a + self.trace_a()
        return t == 0 if self.exact else abs(float(t)) <= DEFAULT_TOL

    def ad_matrix(self):
        """ad_{e_{2n}}|_n as a (2n-1) x (2n-1) matrix over (e_1, .., e_{2n-1})."""
        m = 2 * self.n - 1
        out = arith.zeros_matrix(m, m, self.exact)
        out[0, 0] = arith.as_scalar(self.a, self.exact)
        for i in range(m - 1):
            out[0, 1 + i] = arith.as_scalar(self.b[i], self.exact)
            out[1 + i, 0] = arith.as_scalar(self.v[i], self.exact)
            for j in range(m - 1):
                out[1 + i, 1 + j] = arith.as_scalar(self.A[i][j], self.exact)
        return out


def standard_j_matrix(n, exact=True):
    """J e_i = e_{2n+1-i} for i = 1..n (and J^2 = -id)."""
    dim = 2 * n
    j = arith.zeros_matrix(dim, dim, exact)
    one = Fraction(1) if exact else 1.0
    for i in range(n):
        j[dim - 1 - i, i] = one
        j[i, dim - 1 - i] = -one
    return j


def build_almost_abelian(params: AlmostAbelianParams, tol=DEFAULT_TOL):
    """The Lie algebra and its adapted orthonormal almost Hermitian structure."""
    dim = params.dim
    exact = params.exact
    ad = params.ad_matrix()
    brackets = {}
    for col in range(dim - 1):
        comps = {}
        for row in range(dim - 1):
            if ad[row, col] != 0:
                comps[row + 1] = ad[row, col]
        if comps:
            brackets[(dim, col + 1)] = comps
    alg = LieAlgebra(dim, brackets, exact=exact, tol=tol)
    j = standard_j_matrix(params.n, exact)
    structure = AlmostHermitianStructure(alg, j, tol=tol)
    return alg, structure


def lee_form_aa(params: AlmostAbelianParams, structure=None) -> KForm:
    """Lee form of the built structure from the parametrized formula.

    The closed-form value (Jv)^flat - (tr A) e^{2n} equals (n-1) theta in the
    normalization dF = theta ^ F; the division by (n-1) keeps this function
    in agreement with the generic Lee-form solver (factor 1 in dim 4).
    """
    if structure is None:
        _, structure = build_almost_abelian(params)
    exact = structure.exact
    dim = params.dim
    v_full = arith.zeros_vector(dim, exact)
    for i, vi in enumerate(params.v):
        v_full[1 + i] = arith.as_scalar(vi, exact)
    jv = structure.J @ v_full
    theta_vec = structure.g @ jv
    tra = arith.as_scalar(params.trace_a(), exact)
    theta_vec[dim - 1] = theta_vec[dim - 1] - tra
    if params.n > 2:
        scale = (Fraction(1, params.n - 1) if exact else 1.0 / (params.n - 1))
        theta_vec = scale * theta_vec
    return KForm.from_vector(structure.alg, theta_vec)


def pluricanonical_conditions_aa(params: AlmostAbelianParams) -> dict:
    """Residual vectors of the three dim-4 condition systems.

    closed_lee:          A21 v1 = A11 v2,  A22 v1 = A12 v2
    lee_orthogonal_imN:  A11 v1 + A21 v2 = -a b1,  A12 v1 + A22 v2 = -a b2
    dtheta_anti_invariant: a = 0,  A22 v1 = A21 v2,  A12 v1 = A11 v2
    """
    if params.n != 2:
        raise UnsupportedDimension("the condition systems are derived in dim 4")
    a = params.a
    b1, b2 = params.b
    v1, v2 = params.v
    (a11, a12), (a21, a22) = params.A
    closed = [a21 * v1 - a11 * v2, a22 * v1 - a12 * v2]
    orth = [a11 * v1 + a21 * v2 + a * b1, a12 * v1 + a22 * v2 + a * b2]
    anti = [a, a22 * v1 - a21 * v2, a12 * v1 - a11 * v2]
    out = {
        "closed_lee": [float(x) for x in closed],
        "lee_orthogonal_imN": [float(x) for x in orth],
        "dtheta_anti_invariant": [float(x) for x in anti],
    }
    out["max_residual"] = max(abs(x) for vals in
                              (out["closed_lee"], out["lee_orthogonal_imN"],
                               out["dtheta_anti_invariant"]) for x in vals)
    return out


@dataclass
class ClassLabel:
    """Isomorphism label of a classified algebra plus its invariants."""
    name: str  # A4_1 | A3_4_plus_A1 | A3_6_plus_A1 | abelian | other
    invariants: dict

    def as_dict(self):
        return {"name": self.name, "invariants": self.invariants}


def ad_jordan_type(alg: LieAlgebra, tol=DEFAULT_TOL) -> str:
    """Real-Jordan type of ad_{e_4} restricted to span(e_1, e_2, e_3).

    Works straight off the built algebra (independent of any (a, b, v, A)
    bookkeeping) via the characteristic polynomial and nilpotency ranks:

    * ``semisimple_real``: eigenvalues {0, r, -r}, r > 0 real;
    * ``rotation``: eigenvalues {0, i s, -i s};
    * ``nilpotent_j3`` / ``nilpotent_j2`` / ``zero``: nilpotent with the
      indicated Jordan block sizes;
    * ``general`` otherwise.
    """
    if alg.dim != 4:
        raise UnsupportedDimension("Jordan cross-check is for dim 4")
    exact = alg.exact
    ad4 = alg.ad_basis(3)
    m = ad4[:3, :3]
    bound = 0 if exact else tol * max(1.0, arith.max_abs(m))
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    det = arith.determinant(m, exact)
    sigma2 = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
              + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
              + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    if abs(float(tr)) > bound or abs(float(det)) > bound:
        return "general"
    if abs(float(sigma2)) > bound:
        return "semisimple_real" if float(sigma2) < 0 else "rotation"
    m2 = m @ m
    r1 = arith.rank(m, exact, tol)
    r2 = arith.rank(m2, exact, tol)
    if r1 == 0:
        return "zero"
    if r2 == 0:
        return "nilpotent_j2"
    return "nilpotent_j3"


_JORDAN_TO_LABEL = {
    "semisimple_real": "A3_4_plus_A1",
    "rotation": "A3_6_plus_A1",
    "nilpotent_j3": "A4_1",
}


def classify_4d(params: AlmostAbelianParams, tol=DEFAULT_TOL) -> ClassLabel:
    """Classify a unimodular dim-4 pluricanonical family member by sign(b.v).

    Preconditions: the condition systems vanish (hence a = 0 and A = 0),
    v != 0, unimodular.  Cross-validated against the Jordan type of the
    built ad_{e_4}.
    """
    if params.n != 2:
        raise UnsupportedDimension("classification is for dim 4")
    exact = params.exact
    bound = 0 if exact else tol
    conds = pluricanonical_conditions_aa(params)
    if conds["max_residual"] > bound:
        raise PreconditionFailed("pluricanonical condition systems do not vanish")
    if not params.is_unimodular():
        raise PreconditionFailed("parameters are not unimodular")
    b_zero = all(abs(float(x)) <= bound for x in params.b)
    v_zero = all(abs(float(x)) <= bound for x in params.v)
    if v_zero and b_zero:
        raise Degenerate("v = 0 and b = 0: abelian algebra")
    if v_zero:
        raise PreconditionFailed("v must be nonzero")
    alg, _ = build_almost_abelian(params, tol=tol)
    jordan = ad_jordan_type(alg, tol=tol)
    bv = sum(x * y for x, y in zip(params.b, params.v))
    uni, _tr = alg.is_unimodular()
    invariants = {
        "b_dot_v": float(bv),
        "jordan_type": jordan,
        "unimodular": bool(uni),
    }
    if abs(float(bv)) <= bound:
        name = "A4_1" if not b_zero else "other"
        if b_zero:
            invariants["note"] = "two-step nilpotent (heisenberg3 + line)"
    elif float(bv) > 0:
        name = "A3_4_plus_A1"
    else:
        name = "A3_6_plus_A1"
    expected_jordan = {"A4_1": "nilpotent_j3", "A3_4_plus_A1": "semisimple_real",
                       "A3_6_plus_A1": "rotation", "other": "nilpotent_j2"}[name]
    invariants["jordan_cross_check"] = jordan == expected_jordan
    return ClassLabel(name=name, invariants=invariants)
