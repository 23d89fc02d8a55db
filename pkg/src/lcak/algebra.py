"""Real Lie algebras given by structure constants in a fixed basis.

A ``LieAlgebra`` stores the constants c^k_{ij} of ``[e_i, e_j] = sum_k c^k_{ij} e_k``
sparsely on pairs i < j (indices are 1-based in the public API, 0-based
internally).  Everything downstream -- forms, connections, curvature -- is
driven by the dense bracket tensor this class exposes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .arith import DEFAULT_TOL
from .errors import DimensionMismatch, IndexOutOfRange


@dataclass
class AlgebraValidationReport:
    antisymmetry_ok: bool
    jacobi_residual: float
    ok: bool

    def as_dict(self):
        return {
            "antisymmetry_ok": self.antisymmetry_ok,
            "jacobi_residual": self.jacobi_residual,
            "ok": self.ok,
        }


class LieAlgebra:
    """A finite-dimensional real Lie algebra in a fixed basis.

    Parameters
    ----------
    dim : int
        Dimension (>= 1; almost-Hermitian structures will demand it even).
    brackets : mapping
        ``{(i, j): {k: value}}`` with 1-based indices meaning
        ``[e_i, e_j] = sum_k value * e_k``.  Pairs may be given in either
        order; the antisymmetric extension is applied.  Values may be ints,
        Fractions, fraction strings or floats.
    labels : optional list of basis labels (defaults to e1..en).
    exact : force exact (Fraction) or float arithmetic; inferred from the
        values when omitted.
    tol : comparison tolerance for float mode.
    """

    def __init__(self, dim, brackets=None, labels=None, exact=None, tol=DEFAULT_TOL):
        if dim < 1:
            raise IndexOutOfRange(f"dim must be positive, got {dim}")
        self.dim = int(dim)
        brackets = brackets or {}
        values = []
        for pair, comps in brackets.items():
            for k, v in comps.items():
                values.append(arith.parse_scalar(v) if isinstance(v, str) else v)
        if exact is None:
            exact = arith.all_exact(values)
        self.exact = bool(exact)
        self.tol = float(tol)
        self.labels = list(labels) if labels else [f"e{i}" for i in range(1, dim + 1)]
        if len(self.labels) != dim:
            raise DimensionMismatch("labels length != dim")

        # sparse storage: {(i, j, k) 0-based, i < j: scalar}
        self._c = {}
        for (i, j), comps in brackets.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexOutOfRange(f"bracket pair ({i},{j}) outside 1..{dim}")
            if i == j:
                if any(self._coerce(v) != 0 for v in comps.values()):
                    raise IndexOutOfRange(f"[e_{i}, e_{i}] must vanish")
                continue
            sign = 1 if i < j else -1
            a, b = (i, j) if i < j else (j, i)
            for k, v in comps.items():
                if not 1 <= k <= dim:
                    raise IndexOutOfRange(f"target index {k} outside 1..{dim}")
                val = self._coerce(v) * sign
                key = (a - 1, b - 1, k - 1)
                cur = self._c.get(key, self._zero)
                new = cur + val
                if new == 0:
                    self._c.pop(key, None)
                else:
                    self._c[key] = new
        self._dense = None

    # -- scalars ------------------------------------------------------------

    @property
    def _zero(self):
        return Fraction(0) if self.exact else 0.0

    def _coerce(self, v):
        if isinstance(v, str):
            v = arith.parse_scalar(v)
        return arith.as_scalar(v, self.exact)

    # -- structure tensor ---------------------------------------------------

    @property
    def structure_tensor(self):
        """Dense C with C[k][i][j] = c^k_{ij} (0-based)."""
        if self._dense is None:
            c = np.array([[[self._zero] * self.dim for _ in range(self.dim)]
                          for _ in range(self.dim)],
                         dtype=object if self.exact else float)
            for (i, j, k), v in self._c.items():
                c[k][i][j] = v
                c[k][j][i] = -v
            self._dense = c
        return self._dense

    def sparse_constants(self):
        """The stored (i, j, k) -> value map, 1-based, i < j."""
        return {(i + 1, j + 1, k + 1): v for (i, j, k), v in sorted(self._c.items())}

    def bracket(self, x, y):
        """[x, y] for coefficient vectors x, y."""
        x = np.asarray(x)
        y = np.asarray(y)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise DimensionMismatch("vector length != dim")
        c = self.structure_tensor
        return np.array([x @ c[k] @ y for k in range(self.dim)],
                        dtype=object if self.exact else float)

    def basis_bracket(self, i, j):
        """[e_i, e_j] as a vector, 0-based indices."""
        c = self.structure_tensor
        return np.array([c[k][i][j] for k in range(self.dim)],
                        dtype=object if self.exact else float)

    def ad(self, x):
        """Matrix of ad(x): y -> [x, y]."""
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise DimensionMismatch("vector length != dim")
        c = self.structure_tensor
        m = arith.zeros_matrix(self.dim, self.dim, self.exact)
        for k in range(self.dim):
            row = x @ c[k]
            for j in range(self.dim):
                m[k, j] = row[j]
        return m

    def ad_basis(self, i):
        v = arith.zeros_vector(self.dim, self.exact)
        v[i] = Fraction(1) if self.exact else 1.0
        return self.ad(v)

    # -- axioms -------------------------------------------------------------

    def jacobi_residual(self) -> float:
        """Max-norm of the cyclic sum [[e_i,e_j],e_k] over all triples."""
        worst = 0.0
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.basis_bracket(i, j)
                for k in range(j + 1, self.dim):
                    ek = arith.zeros_vector(self.dim, self.exact)
                    ek[k] = Fraction(1) if self.exact else 1.0
                    s = (self.bracket(bij, ek)
                         + self.bracket(self.basis_bracket(j, k), self._basis(i))
                         + self.bracket(self.basis_bracket(k, i), self._basis(j)))
                    worst = max(worst, arith.max_abs(s))
        return worst

    def _basis(self, i):
        v = arith.zeros_vector(self.dim, self.exact)
        v[i] = Fraction(1) if self.exact else 1.0
        return v

    def validate(self) -> AlgebraValidationReport:
        res = self.jacobi_residual()
        ok = res <= (0 if self.exact else self.tol)
        return AlgebraValidationReport(antisymmetry_ok=True, jacobi_residual=res, ok=ok)

    def is_unimodular(self):
        """(flag, traces): trace of ad(e_i) for every basis vector."""
        traces = [sum(self.ad_basis(i)[k, k] for k in range(self.dim))
                  for i in range(self.dim)]
        bound = 0 if self.exact else self.tol
        flag = all(abs(float(t)) <= bound for t in traces)
        return flag, traces

    # -- transforms ---------------------------------------------------------

    def change_basis(self, p):
        """Algebra in the basis e'_i = sum_k P[k,i] e_k (P columns = new basis)."""
        p = np.asarray(p)
        if p.shape != (self.dim, self.dim):
            raise DimensionMismatch("change-of-basis matrix has wrong shape")
        exact = self.exact and arith.all_exact(p.ravel().tolist())
        base = self if exact else self.as_float()
        p = arith.to_matrix(p.tolist(), exact)
        pinv = arith.invert(p, exact)
        new = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                comps = pinv @ base.bracket(p[:, i], p[:, j])
                entry = {k + 1: comps[k] for k in range(self.dim)
                         if comps[k] != 0}
                if entry:
                    new[(i + 1, j + 1)] = entry
        return LieAlgebra(self.dim, new, exact=exact, tol=self.tol)

    def as_float(self):
        """The same algebra with float structure constants."""
        if not self.exact:
            return self
        new = {}
        for (i, j, k), v in self.sparse_constants().items():
            new.setdefault((i, j), {})[k] = float(v)
        return LieAlgebra(self.dim, new, labels=self.labels, exact=False, tol=self.tol)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, brackets={len(self._c)} terms, exact={self.exact})"


def validate_lie_algebra(constants, dim, exact=None, tol=DEFAULT_TOL) -> AlgebraValidationReport:
    """Check raw constants ``{(i, j): {k: value}}`` for antisymmetry and Jacobi.

    Unlike the ``LieAlgebra`` constructor (which antisymmetrizes), this sees
    the constants as given: if both (i, j) and (j, i) appear their values must
    be exact negatives.
    """
    values = [v for comps in constants.values() for v in comps.values()]
    if exact is None:
        exact = arith.all_exact([arith.parse_scalar(v) if isinstance(v, str) else v
                                 for v in values])
    bound = 0 if exact else tol
    anti_ok = True
    seen = {}
    for (i, j), comps in constants.items():
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise IndexOutOfRange(f"bracket pair ({i},{j}) outside 1..{dim}")
        for k, v in comps.items():
            if not 1 <= k <= dim:
                raise IndexOutOfRange(f"target index {k} outside 1..{dim}")
            v = arith.parse_scalar(v) if isinstance(v, str) else v
            if i == j and abs(float(v)) > bound:
                anti_ok = False
            seen[(i, j, k)] = v
    for (i, j, k), v in seen.items():
        w = seen.get((j, i, k))
        if w is not None and abs(float(v + w)) > bound:
            anti_ok = False
    # Jacobi on the antisymmetrized algebra
    normalized = {}
    for (i, j), comps in constants.items():
        if i == j:
            continue
        for k, v in comps.items():
            normalized.setdefault((i, j), {})
            normalized[(i, j)][k] = normalized[(i, j)].get(k, 0) + (
                arith.parse_scalar(v) if isinstance(v, str) else v)
    # collapse double-listed pairs (i,j)/(j,i) to a single i<j entry
    collapsed = {}
    for (i, j), comps in normalized.items():
        sign = 1 if i < j else -1
        a, b = min(i, j), max(i, j)
        tgt = collapsed.setdefault((a, b), {})
        for k, v in comps.items():
            tgt[k] = tgt.get(k, 0) + sign * v
    both = {p for p in normalized if (p[1], p[0]) in normalized}
    half = Fraction(1, 2) if exact else 0.5
    for (a, b) in list(collapsed):
        if (a, b) in both and (b, a) in both:
            collapsed[(a, b)] = {k: half * v for k, v in collapsed[(a, b)].items()}
    alg = LieAlgebra(dim, collapsed, exact=exact, tol=tol)
    res = alg.jacobi_residual()
    ok = anti_ok and res <= bound
    return AlgebraValidationReport(antisymmetry_ok=anti_ok, jacobi_residual=res, ok=ok)


def abelian_algebra(dim, exact=True, tol=DEFAULT_TOL) -> LieAlgebra:
    return LieAlgebra(dim, {}, exact=exact, tol=tol)
