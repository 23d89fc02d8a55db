"""Levi-Civita connection, curvature and the canonical Ricci forms.

For a left-invariant metric the Koszul formula collapses to

    2 g(D_X Y, Z) = g([X,Y], Z) - g([Y,Z], X) + g([Z,X], Y),

and every covariant derivative of an invariant tensor is algebraic:
(D_X phi)(Y, Z) = -phi(D_X Y, Z) - phi(Y, D_X Z).

Curvature follows the convention  R_{X,Y} = D_{[X,Y]} - [D_X, D_Y];
the star-Ricci form is  rho*(X, Y) = -1/2 tr(J o R_{X,Y})  (equivalently
1/2 sum_i g(R_{X,Y} e_i, J e_i) over a g-orthonormal frame), and the
first canonical Hermitian connection is  D - 1/2 J (DJ).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith
from .errors import DegenerateMetric, DimensionMismatch
from .forms import KForm, derive_along
from .hermitian import AlmostHermitianStructure, Tensor2


@dataclass
class ConnectionTable:
    """Christoffel data: gamma[i] is the matrix of Y -> D_{e_i} Y."""
    structure: AlmostHermitianStructure
    gamma: list

    def derivative(self, i, j):
        """D_{e_i} e_j as a vector."""
        return self.gamma[i][:, j]

    def metric_residual(self) -> float:
        """max |g(D_X Y, Z) + g(Y, D_X Z)| over basis triples."""
        g = self.structure.g
        worst = 0.0
        for gm in self.gamma:
            worst = max(worst, arith.max_abs(gm.T @ g + g @ gm))
        return worst

    def torsion_residual(self) -> float:
        """max |D_X Y - D_Y X - [X, Y]| over basis pairs."""
        alg = self.structure.alg
        worst = 0.0
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                t = self.gamma[i][:, j] - self.gamma[j][:, i] - alg.basis_bracket(i, j)
                worst = max(worst, arith.max_abs(t))
        return worst

    def koszul_residual(self) -> float:
        """Defect of the Koszul formula itself, all basis triples."""
        s = self.structure
        alg = s.alg
        g = s.g
        worst = 0.0
        for i in range(alg.dim):
            for j in range(alg.dim):
                dij = self.gamma[i][:, j]
                for k in range(alg.dim):
                    ek = s.basis_vector(k)
                    rhs = (alg.basis_bracket(i, j) @ g @ ek
                           - alg.basis_bracket(j, k) @ g @ s.basis_vector(i)
                           + alg.basis_bracket(k, i) @ g @ s.basis_vector(j))
                    worst = max(worst, abs(float(2 * (dij @ g @ ek) - rhs)))
        return worst


def levi_civita(structure: AlmostHermitianStructure) -> ConnectionTable:
    """Connection table from the left-invariant Koszul formula."""
    alg = structure.alg
    dim = alg.dim
    g = structure.g
    ginv = structure.g_inv
    half = Fraction(1, 2) if structure.exact else 0.5
    brk = [[alg.basis_bracket(i, j) for j in range(dim)] for i in range(dim)]
    gamma = []
    for i in range(dim):
        m = arith.zeros_matrix(dim, dim, structure.exact)
        for j in range(dim):
            w = arith.zeros_vector(dim, structure.exact)
            for k in range(dim):
                ek = structure.basis_vector(k)
                w[k] = (brk[i][j] @ g @ ek
                        - brk[j][k] @ g @ structure.basis_vector(i)
                        + brk[k][i] @ g @ structure.basis_vector(j))
            col = half * (ginv @ w)
            for k in range(dim):
                m[k, j] = col[k]
        gamma.append(m)
    return ConnectionTable(structure=structure, gamma=gamma)


# ---------------------------------------------------------------------------
# covariant derivatives of invariant tensors
# ---------------------------------------------------------------------------

def covariant_one_form(structure, theta) -> Tensor2:
    """D theta as the 2-tensor (X, Y) -> (D_X theta)(Y) = -theta(D_X Y)."""
    vec = theta.vector() if isinstance(theta, KForm) else np.asarray(theta)
    gamma = structure.connection.gamma
    dim = structure.dim
    m = arith.zeros_matrix(dim, dim, structure.exact)
    for i in range(dim):
        row = -(vec @ gamma[i])
        for j in range(dim):
            m[i, j] = row[j]
    return Tensor2(structure.alg, m)


def covariant_tensor(structure, phi, i):
    """(D_{e_i} phi) for a 2-tensor phi, as a matrix."""
    m = phi.mat if isinstance(phi, Tensor2) else np.asarray(phi)
    gi = structure.connection.gamma[i]
    return -(gi.T @ m + m @ gi)


def covariant_form(structure, a: KForm, i) -> KForm:
    """(D_{e_i} alpha) for a k-form."""
    return derive_along(a, structure.connection.gamma[i])


def covariant_J(structure, i):
    """(D_{e_i} J) as an endomorphism matrix: [Gamma_i, J]."""
    gi = structure.connection.gamma[i]
    return gi @ structure.J - structure.J @ gi


def covariant_J_list(structure):
    cached = getattr(structure, "_cov_j_cache", None)
    if cached is None:
        cached = [covariant_J(structure, i) for i in range(structure.dim)]
        structure._cov_j_cache = cached
    return cached


def covariant_F(structure, i) -> KForm:
    """(D_{e_i} F); equals g((D_{e_i} J) ., .)."""
    return KForm.from_matrix(structure.alg,
                             -(structure.connection.gamma[i].T @ structure.f_matrix
                               + structure.f_matrix @ structure.connection.gamma[i]))


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

@dataclass
class CurvatureTensor:
    """R_{e_i, e_j} endomorphisms plus the (0,4) components on demand."""
    structure: AlmostHermitianStructure
    endos: list  # endos[i][j] = matrix of R_{e_i, e_j}
    _components: object = field(default=None, repr=False)

    def endomorphism(self, i, j):
        return self.endos[i][j]

    @property
    def components(self):
        """R4[i][j][k][l] = g(R_{e_i,e_j} e_k, e_l)."""
        if self._components is None:
            g = self.structure.g
            dim = self.structure.dim
            comp = [[(self.endos[i][j].T @ g) for j in range(dim)] for i in range(dim)]
            self._components = comp
        return self._components

    def antisymmetry_residual(self) -> float:
        comp = self.components
        dim = self.structure.dim
        worst = 0.0
        for i in range(dim):
            for j in range(dim):
                worst = max(worst, arith.max_abs(comp[i][j] + comp[j][i]))
                worst = max(worst, arith.max_abs(comp[i][j] + comp[i][j].T))
        return worst

    def pair_symmetry_residual(self) -> float:
        comp = self.components
        dim = self.structure.dim
        worst = 0.0
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    for l in range(dim):
                        worst = max(worst, abs(float(comp[i][j][k, l] - comp[k][l][i, j])))
        return worst

    def bianchi_residual(self) -> float:
        """First Bianchi identity on basis triples."""
        dim = self.structure.dim
        worst = 0.0
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    v = (self.endos[i][j][:, k] + self.endos[j][k][:, i]
                         + self.endos[k][i][:, j])
                    worst = max(worst, arith.max_abs(v))
        return worst


def curvature_of(structure, gamma) -> CurvatureTensor:
    """Curvature of an arbitrary connection table, R_{X,Y} = D_{[X,Y]} - [D_X, D_Y]."""
    alg = structure.alg
    dim = alg.dim
    c = alg.structure_tensor
    endos = []
    for i in range(dim):
        row = []
        for j in range(dim):
            m = -(gamma[i] @ gamma[j] - gamma[j] @ gamma[i])
            for k in range(dim):
                if c[k][i][j] != 0:
                    m = m + c[k][i][j] * gamma[k]
            row.append(m)
        endos.append(row)
    return CurvatureTensor(structure=structure, endos=endos)


def curvature(structure) -> CurvatureTensor:
    return curvature_of(structure, structure.connection.gamma)


def star_ricci(structure, curv: CurvatureTensor = None) -> KForm:
    """rho*(X, Y) = -1/2 tr(J o R_{X,Y}); frame independent."""
    curv = curv or structure.curvature
    dim = structure.dim
    half = Fraction(1, 2) if structure.exact else 0.5
    coeffs = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            val = -half * np.trace(structure.J @ curv.endos[i][j])
            if val != 0:
                coeffs[(i, j)] = val
    return KForm(structure.alg, 2, coeffs)


def star_ricci_frame_sum(structure, frame) -> KForm:
    """rho* computed as 1/2 sum_i g(R_{X,Y} f_i, J f_i) over the given frame.

    Cross-check for the trace formula; ``frame`` rows must be g-orthonormal.
    """
    curv = structure.curvature
    g = structure.g
    J = structure.J
    dim = structure.dim
    coeffs = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            val = 0
            for f in frame:
                val = val + 0.5 * (curv.endos[i][j] @ f) @ g @ (J @ f)
            if val != 0:
                coeffs[(i, j)] = val
    return KForm(structure.alg, 2, coeffs)


def torsion_potential(structure):
    """The endomorphisms -1/2 J (D_{e_i} J) defining the first canonical connection."""
    half = Fraction(1, 2) if structure.exact else 0.5
    return [(-half) * (structure.J @ dj) for dj in covariant_J_list(structure)]


def first_canonical_connection(structure) -> ConnectionTable:
    """nabla^0 = D - 1/2 J (DJ)."""
    gamma = structure.connection.gamma
    corr = torsion_potential(structure)
    return ConnectionTable(structure=structure,
                           gamma=[gamma[i] + corr[i] for i in range(structure.dim)])


def hermitian_ricci_form(structure, gamma_table) -> KForm:
    """gamma(X,Y) = 1/2 sum_i g(R^nabla_{X,Y} e_i, J e_i) = -1/2 tr(J o R^nabla)."""
    curv = curvature_of(structure, gamma_table)
    dim = structure.dim
    half = Fraction(1, 2) if structure.exact else 0.5
    coeffs = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            val = -half * np.trace(structure.J @ curv.endos[i][j])
            if val != 0:
                coeffs[(i, j)] = val
    return KForm(structure.alg, 2, coeffs)


def phi_form(structure) -> KForm:
    """Phi(X, Y) = 1/4 <J (D_X J), D_Y J>_g."""
    dim = structure.dim
    quarter = Fraction(1, 4) if structure.exact else 0.25
    djs = covariant_J_list(structure)
    coeffs = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            val = quarter * structure.endo_inner(structure.J @ djs[i], djs[j])
            if val != 0:
                coeffs[(i, j)] = val
    return KForm(structure.alg, 2, coeffs)


@dataclass
class RicciForms:
    """Star-Ricci, Phi, and the Hermitian-Ricci forms of the canonical family."""
    rho_star: KForm
    phi: KForm
    gamma0: KForm           # from the curvature of nabla^0
    gamma0_identity_residual: float  # | gamma0 - (rho* + Phi) |

    structure: AlmostHermitianStructure = None

    def gamma(self, t):
        """gamma^t = gamma^0 - (t (n-1)/2) d J theta  (t = 1 Chern, -1 Bismut)."""
        s = self.structure
        lee = s.lee_form()
        djt = lee.jtheta.d()
        n = s.n
        if s.exact:
            coef = -Fraction(t) * Fraction(n - 1, 2)
        else:
            coef = -t * (n - 1) / 2.0
        return self.gamma0 + coef * djt

    @property
    def chern(self):
        return self.gamma(1)

    @property
    def bismut(self):
        return self.gamma(-1)


def canonical_connection_forms(structure) -> RicciForms:
    """Compute gamma^0 two independent ways and package the family."""
    rho = star_ricci(structure)
    phi = phi_form(structure)
    gamma0 = hermitian_ricci_form(structure, first_canonical_connection(structure).gamma)
    diff = gamma0 - (rho + phi)
    scale = max(1.0, rho.max_abs(), phi.max_abs(), gamma0.max_abs())
    return RicciForms(rho_star=rho, phi=phi, gamma0=gamma0,
                      gamma0_identity_residual=diff.max_abs() / scale,
                      structure=structure)
