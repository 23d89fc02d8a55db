"""Sign and normalization conventions, fixed package-wide.

These strings are embedded in reports and printed by the CLI so that any
number leaving this package carries its conventions with it.
"""

CONVENTIONS = {
    "chevalley_eilenberg": "d a (X,Y) = -a([X,Y]) on 1-forms; antiderivation",
    "fundamental_form": "F(X,Y) = g(JX,Y)",
    "j_on_one_form": "(J a)(X) = -a(JX)",
    "j_on_anti_invariant_two_form": "(J phi)(X,Y) = -phi(JX,Y)",
    "koszul": "2 g(D_X Y,Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)",
    "curvature": "R_{X,Y} = D_{[X,Y]} - [D_X, D_Y]",
    "star_ricci": "rho*(X,Y) = -(1/2) tr(J o R_{X,Y})",
    "lee_form": "dF = theta ^ F (metric least squares when inexact)",
    "lee_normalization": "J delta^g F = (n-1) theta",
    "nijenhuis": "4 N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]",
    "codifferential": "(delta phi)(...) = -sum g^{ab} (D_{e_a} phi)(e_b, ...)",
    "orientation": "volume = F^n / n!",
    "canonical_family": "gamma^t = gamma^0 - (t(n-1)/2) dJtheta; t=1 Chern, t=-1 Bismut",
}
