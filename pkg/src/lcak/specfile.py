"""Structure-description files and deterministic reports.

A structure file is UTF-8 JSON:

    {
      "dim": 4,
      "brackets": [{"i": 2, "j": 4, "coefficients": {"1": "1"}}, ...],
      "J": [[...], ...]  |  "split"  |  "mirror",
      "g": [[...], ...]  |  "identity",
      "options": {"tolerance": 1e-9, "arithmetic_mode": "exact" | "float" | "auto"}
    }

Scalar strings like "1/4" parse exactly; bare numbers are taken as given
(ints exact, decimals float).  ``arithmetic_mode`` "auto" (default) uses
exact arithmetic iff every value is exact.

Reports serialize with sorted keys and exact values as fraction strings, so
byte-identical golden files are meaningful.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import arith, conditions
from .algebra import LieAlgebra
from .almostabelian import AlmostAbelianParams, classify_4d
from .arith import DEFAULT_TOL
from .errors import Degenerate, ParseError, PreconditionFailed, UnsupportedDimension, ValidationError
from .hermitian import AlmostHermitianStructure

J_PRESETS = ("split", "mirror")


def _j_preset(name, dim):
    n = dim // 2
    j = [[0] * dim for _ in range(dim)]
    if name == "split":      # J e_i = e_{n+i}
        for i in range(n):
            j[n + i][i] = 1
            j[i][n + i] = -1
    elif name == "mirror":   # J e_i = e_{2n+1-i}
        for i in range(n):
            j[dim - 1 - i][i] = 1
            j[i][dim - 1 - i] = -1
    else:
        raise ParseError(f"unknown J preset {name!r}; have {J_PRESETS}",
                         code="BAD_FIELD", field="J")
    return j


def _parse_value(raw, field_name):
    try:
        return arith.parse_scalar(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad scalar {raw!r} in {field_name}", code="BAD_FIELD",
                         field=field_name) from e


def load_spec(source, tol=None) -> AlmostHermitianStructure:
    """Parse a structure file (path, text, or parsed dict) into a validated
    structure.  Raises ParseError / ValidationError with machine codes."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if hasattr(source, "read"):
            text = source.read()
        elif isinstance(source, str) and "\n" not in source and not source.lstrip().startswith("{"):
            import os
            if not os.path.exists(source):
                raise ParseError(f"no such file: {source}", code="IO_ERROR")
            try:
                with open(source, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise ParseError(f"cannot read {source}: {e}", code="IO_ERROR") from e
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"malformed JSON: {e.msg}", code="PARSE_ERROR",
                             line=e.lineno) from e
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", code="PARSE_ERROR")

    dim = data.get("dim")
    if not isinstance(dim, int) or dim < 2 or dim % 2:
        raise ValidationError(f"dim must be a positive even integer, got {dim!r}",
                              code="BAD_DIM", field="dim")
    options = data.get("options") or {}
    mode = options.get("arithmetic_mode", "auto")
    if mode not in ("auto", "exact", "float"):
        raise ParseError(f"arithmetic_mode {mode!r} invalid", code="BAD_FIELD",
                         field="options.arithmetic_mode")
    if tol is None:
        tol = float(options.get("tolerance", DEFAULT_TOL))

    brackets = {}
    for pos, item in enumerate(data.get("brackets") or []):
        try:
            i, j = int(item["i"]), int(item["j"])
            comps = {int(k): _parse_value(v, f"brackets[{pos}]")
                     for k, v in item["coefficients"].items()}
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"brackets[{pos}] must be {{i, j, coefficients}}",
                             code="BAD_FIELD", field=f"brackets[{pos}]") from e
        if not (1 <= i <= dim and 1 <= j <= dim and
                all(1 <= k <= dim for k in comps)):
            raise ValidationError(f"brackets[{pos}] indices outside 1..{dim}",
                                  code="BAD_INDEX", field=f"brackets[{pos}]")
        cur = brackets.setdefault((i, j), {})
        for k, v in comps.items():
            cur[k] = cur.get(k, 0) + v

    jraw = data.get("J", "split")
    if isinstance(jraw, str):
        jmat = _j_preset(jraw, dim)
    elif isinstance(jraw, dict) and "preset" in jraw:
        jmat = _j_preset(jraw["preset"], dim)
    else:
        jmat = [[_parse_value(v, "J") for v in row] for row in jraw]
        if len(jmat) != dim or any(len(r) != dim for r in jmat):
            raise ValidationError("J must be dim x dim", code="BAD_DIM", field="J")
    graw = data.get("g", "identity")
    if graw == "identity":
        gmat = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    else:
        gmat = [[_parse_value(v, "g") for v in row] for row in graw]
        if len(gmat) != dim or any(len(r) != dim for r in gmat):
            raise ValidationError("g must be dim x dim", code="BAD_DIM", field="g")

    exact = None
    if mode == "exact":
        exact = True
    elif mode == "float":
        exact = False
    if mode == "float":
        brackets = {p: {k: float(v) for k, v in comps.items()}
                    for p, comps in brackets.items()}
        jmat = [[float(v) for v in row] for row in jmat]
        gmat = [[float(v) for v in row] for row in gmat]

    alg = LieAlgebra(dim, brackets, exact=exact, tol=tol)
    algrep = alg.validate()
    if not algrep.ok:
        raise ValidationError(
            f"Jacobi identity fails, residual {algrep.jacobi_residual}",
            code="JACOBI_FAILED", field="brackets")
    return AlmostHermitianStructure(alg, np.array(jmat, dtype=object),
                                    np.array(gmat, dtype=object), tol=tol,
                                    name=data.get("name"))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    """Everything the checkers decided about one structure."""
    name: str
    dim: int
    arithmetic_mode: str
    algebra_validation: dict
    structure_validation: dict
    condition_report: dict
    equivalences: dict
    classification: dict
    feasibility: dict = None
    extras: dict = field(default_factory=dict)

    def as_dict(self):
        out = {
            "name": self.name,
            "dim": self.dim,
            "arithmetic_mode": self.arithmetic_mode,
            "algebra_validation": self.algebra_validation,
            "structure_validation": self.structure_validation,
            "condition_report": self.condition_report,
            "equivalences": self.equivalences,
            "classification": self.classification,
        }
        if self.feasibility is not None:
            out["feasibility"] = self.feasibility
        if self.extras:
            out["extras"] = self.extras
        return out

    def to_json(self) -> str:
        return json.dumps(_encode(self.as_dict()), sort_keys=True, indent=2) + "\n"

    @property
    def all_checks_pass(self) -> bool:
        return (self.algebra_validation["ok"]
                and self.structure_validation["ok"]
                and not self.condition_report["warnings"]
                and self.equivalences.get("all_consistent", True))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(name=data.get("name"), dim=data["dim"],
                   arithmetic_mode=data["arithmetic_mode"],
                   algebra_validation=data["algebra_validation"],
                   structure_validation=data["structure_validation"],
                   condition_report=data["condition_report"],
                   equivalences=data["equivalences"],
                   classification=data["classification"],
                   feasibility=data.get("feasibility"),
                   extras=data.get("extras", {}))


def _encode(obj):
    """JSON-encodable copy: exact scalars become fraction strings, numpy
    values become plain Python, tuples become lists."""
    from fractions import Fraction
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_encode(v) for v in obj.tolist()]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)


def _form_dict(form):
    return {"".join(str(i + 1) for i in key): arith.format_scalar(val)
            for key, val in sorted(form.coeffs.items())}


def _detect_aa_params(structure):
    """Recover (a, b, v, A) when the structure uses the standard mirror frame."""
    s = structure
    if s.dim != 4 or getattr(s, "aa_params", None) is not None:
        return getattr(s, "aa_params", None)
    alg = s.alg
    for i in range(3):
        for j in range(i + 1, 3):
            if arith.max_abs(alg.basis_bracket(i, j)) > (0 if s.exact else s.tol):
                return None
    from .almostabelian import standard_j_matrix
    if arith.max_abs(s.J - standard_j_matrix(2, s.exact)) > (0 if s.exact else s.tol):
        return None
    ident = arith.identity_matrix(4, s.exact)
    if arith.max_abs(s.g - ident) > (0 if s.exact else s.tol):
        return None
    ad = alg.ad_basis(3)
    if arith.max_abs(ad[3]) > (0 if s.exact else s.tol):
        return None
    return AlmostAbelianParams(
        2, ad[0, 0], (ad[0, 1], ad[0, 2]), (ad[1, 0], ad[2, 0]),
        ((ad[1, 1], ad[1, 2]), (ad[2, 1], ad[2, 2])))


def run_report(structure: AlmostHermitianStructure, feasibility: bool = False,
               feasibility_seed: int = 0) -> Report:
    """validation -> Lee form -> connection -> checkers -> classification."""
    rep = conditions.classify_metric(structure)
    try:
        eq = conditions.verify_equivalences(structure, strict=False, report=rep)
    except Exception as e:  # equivalences are reporting, never fatal
        eq = {"error": str(e), "all_consistent": False}
    classification = {"applicable": False}
    params = _detect_aa_params(structure)
    if params is not None:
        classification["almost_abelian"] = True
        classification["params"] = {
            "a": arith.format_scalar(params.a),
            "b": [arith.format_scalar(x) for x in params.b],
            "v": [arith.format_scalar(x) for x in params.v],
            "A": [[arith.format_scalar(x) for x in row] for row in params.A],
        }
        try:
            label = classify_4d(params, tol=structure.tol)
            classification["applicable"] = True
            classification["label"] = label.as_dict()
        except (PreconditionFailed, Degenerate, UnsupportedDimension) as e:
            classification["label"] = None
            classification["reason"] = str(e)
    lee = structure.lee_form()
    extras = {
        "theta": _form_dict(lee.theta),
        "fundamental_form": _form_dict(structure.F),
        "lee_norm_sq": arith.format_scalar(lee.norm_sq),
    }
    feas = None
    if feasibility:
        feas = conditions.symplectic_feasibility(structure, seed=feasibility_seed)
        if feas.get("witness") is not None:
            feas = dict(feas)
            feas["witness"] = _form_dict(feas["witness"])
    return Report(
        name=structure.name,
        dim=structure.dim,
        arithmetic_mode="exact" if structure.exact else "float",
        algebra_validation=structure.alg.validate().as_dict(),
        structure_validation=structure.validation.as_dict(),
        condition_report=rep.as_dict(),
        equivalences=_encode(eq),
        classification=classification,
        feasibility=feas,
        extras=extras,
    )
