"""JSON wire formats.

Polynomial::

    {"nvars": 3, "terms": [{"coeff": "3/2", "exp": [2, 0, 1]}, ...]}

Operator::

    {"kappa": [...], "shift": l, "m_out": m, "images": [{"alpha": [...], "poly": <Polynomial>}, ...]}
    {"builtin": "creation", "params": {"kappa": [1, 1], "a": "1", "i": 0, "j": 1}}

Polytope::

    {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ...]}

Matroid (1-based labels)::

    {"n": 3, "r": 2, "bases": [[1, 2], [1, 3], [2, 3]]}
    {"vectors": {"d": 2, "columns": [["1", "0"], ["0", "1"], ["1", "1"]]}}

Emitted JSON is canonical: keys sorted, terms sorted by exponent, rationals reduced.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import Polytope
from .matroids import Matroid, VectorRealization, matroid_from_vectors
from .operators import LinearOperator, builtin, operator_from_images
from .poly import Polynomial, as_rat


class FormatError(ValueError):
    pass


def rat_to_str(c: Fraction) -> str:
    return str(c)


def parse_rat(value: Any) -> Fraction:
    if isinstance(value, float):
        raise FormatError(f"floating-point value {value!r}; write rationals as strings like \"3/2\"")
    try:
        return as_rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(str(exc)) from None


def dumps(obj: Any) -> str:
    """Canonical byte-stable JSON text (with trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


# -- polynomials ------------------------------------------------------------


def poly_to_json(f: Polynomial) -> dict:
    return {
        "nvars": f.nvars,
        "terms": [{"coeff": rat_to_str(c), "exp": list(e)} for e, c in f.items()],
    }


def poly_from_json(data: Any) -> Polynomial:
    if not isinstance(data, dict) or "nvars" not in data or "terms" not in data:
        raise FormatError("polynomial JSON needs 'nvars' and 'terms'")
    nvars = data["nvars"]
    if not isinstance(nvars, int) or nvars < 0:
        raise FormatError("'nvars' must be a non-negative integer")
    terms: dict = {}
    for t in data["terms"]:
        try:
            exp = tuple(t["exp"])
            coeff = parse_rat(t["coeff"])
        except (KeyError, TypeError):
            raise FormatError(f"bad term {t!r}") from None
        if len(exp) != nvars or not all(isinstance(e, int) and e >= 0 for e in exp):
            raise FormatError(f"exponent {list(exp)} must be {nvars} non-negative integers")
        if exp in terms:
            raise FormatError(f"duplicate exponent {list(exp)}")
        terms[exp] = coeff
    return Polynomial(nvars, terms)


# -- operators --------------------------------------------------------------

_POLY_PARAMS = {"s", "g"}
_RAT_PARAMS = {"a", "theta"}


def _param_to_json(key: str, value: Any) -> Any:
    if isinstance(value, Polynomial):
        return poly_to_json(value)
    if isinstance(value, Fraction):
        return rat_to_str(value)
    if isinstance(value, tuple):
        return list(value)
    return value


def _param_from_json(key: str, value: Any) -> Any:
    if key in _POLY_PARAMS:
        return poly_from_json(value)
    if key in _RAT_PARAMS:
        return parse_rat(value)
    return value


def operator_to_json(T: LinearOperator) -> dict:
    return {
        "kappa": list(T.kappa),
        "shift": T.shift,
        "m_out": T.m_out,
        "images": [
            {"alpha": list(alpha), "poly": poly_to_json(T.images[alpha])} for alpha in sorted(T.images)
        ],
    }


def operator_from_json(data: Any) -> LinearOperator:
    if not isinstance(data, dict):
        raise FormatError("operator JSON must be an object")
    if "builtin" in data:
        params = {k: _param_from_json(k, v) for k, v in data.get("params", {}).items()}
        return builtin(data["builtin"], params)
    try:
        kappa = data["kappa"]
        shift = data["shift"]
        raw = data["images"]
    except KeyError as exc:
        raise FormatError(f"operator JSON is missing {exc.args[0]!r}") from None
    images = {}
    for item in raw:
        alpha = tuple(item["alpha"])
        if alpha in images:
            raise FormatError(f"duplicate image for alpha={list(alpha)}")
        images[alpha] = poly_from_json(item["poly"])
    return operator_from_images(kappa, shift, images, data.get("m_out"))


def builtin_to_json(T: LinearOperator) -> dict:
    return {"builtin": T.name, "params": {k: _param_to_json(k, v) for k, v in T.params.items()}}


# -- polytopes --------------------------------------------------------------


def polytope_to_json(P: Polytope) -> dict:
    return {"dim": P.dim, "vertices": [[rat_to_str(x) for x in v] for v in P.vertices]}


def polytope_from_json(data: Any) -> Polytope:
    try:
        dim = data["dim"]
        verts = [[parse_rat(x) for x in v] for v in data["vertices"]]
    except (KeyError, TypeError):
        raise FormatError("polytope JSON needs 'dim' and 'vertices'") from None
    try:
        return Polytope.from_points(verts, dim)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def polytopes_from_json(data: Any) -> list[Polytope]:
    if isinstance(data, dict) and "polytopes" in data:
        data = data["polytopes"]
    if not isinstance(data, list) or not data:
        raise FormatError("expected a non-empty list of polytopes")
    return [polytope_from_json(p) for p in data]


# -- matroids ---------------------------------------------------------------


def matroid_to_json(M: Matroid) -> dict:
    return {"n": M.n, "r": M.r, "bases": [[i + 1 for i in b] for b in M.sorted_bases()]}


def matroid_from_json(data: Any) -> Matroid:
    if not isinstance(data, dict):
        raise FormatError("matroid JSON must be an object")
    try:
        if "vectors" in data:
            v = data["vectors"]
            cols = [[parse_rat(x) for x in c] for c in v["columns"]]
            return matroid_from_vectors(VectorRealization.make(cols, v.get("d")))
        n = data["n"]
        bases = [[int(x) - 1 for x in b] for b in data["bases"]]
        M = Matroid.from_bases(n, bases)
    except KeyError as exc:
        raise FormatError(f"matroid JSON is missing {exc.args[0]!r}") from None
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if "r" in data and data["r"] != M.r:
        raise FormatError(f"declared rank {data['r']} does not match bases of size {M.r}")
    return M
