"""Linear operators on R_kappa[w], their symbols and the built-in preservers.

An operator is stored by its values on the monomial box ``0 <= alpha <= kappa``.
Symbols live in ``m_out + n`` variables: the output variables first, then one
``u`` variable per input variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .poly import (
    Exponent,
    Polynomial,
    RatLike,
    as_rat,
    binom_vec,
    box,
    derivative,
    elementary_symmetric,
    factorial_vec,
    leq,
    normalize,
)


class OperatorError(ValueError):
    """Invalid operator data; ``alpha`` names the offending monomial when there is one."""

    def __init__(self, message: str, alpha: Exponent | None = None):
        super().__init__(message)
        self.alpha = alpha


@dataclass(frozen=True, eq=False)
class LinearOperator:
    kappa: tuple[int, ...]
    shift: int
    images: Mapping[Exponent, Polynomial]
    m_out: int
    name: str = "custom"
    params: Mapping = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def k(self) -> int:
        return sum(self.kappa)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (
            self.kappa == other.kappa
            and self.m_out == other.m_out
            and dict(self.images) == dict(other.images)
            and (self.shift == other.shift or all(not p for p in self.images.values()))
        )

    def __hash__(self) -> int:
        return hash((self.kappa, self.m_out, frozenset(self.images.items())))

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)


def operator_from_images(
    kappa: Sequence[int],
    shift: int,
    images: Mapping[Sequence[int], Polynomial],
    m_out: int | None = None,
    *,
    name: str = "custom",
    params: Mapping | None = None,
) -> LinearOperator:
    """Validate monomial images and build a :class:`LinearOperator`.

    Every ``0 <= alpha <= kappa`` needs an image, and each non-zero image must
    be homogeneous of degree ``|alpha| + shift``.
    """
    kappa = tuple(int(k) for k in kappa)
    if any(k < 0 for k in kappa):
        raise OperatorError("kappa must be non-negative")
    imgs = {tuple(int(a) for a in alpha): p for alpha, p in images.items()}
    if m_out is None:
        sizes = {p.nvars for p in imgs.values()}
        if len(sizes) != 1:
            raise OperatorError("cannot infer output variable count; pass m_out")
        m_out = sizes.pop()
    expected = set(box(kappa))
    extra = set(imgs) - expected
    if extra:
        raise OperatorError(f"image given outside the box 0 <= alpha <= {kappa}", min(extra))
    for alpha in box(kappa):
        if alpha not in imgs:
            raise OperatorError(f"missing image for w^{alpha}", alpha)
        p = imgs[alpha]
        if p.nvars != m_out:
            raise OperatorError(f"image of w^{alpha} has {p.nvars} variables, expected {m_out}", alpha)
        if p and not p.is_homogeneous(sum(alpha) + shift):
            raise OperatorError(
                f"image of w^{alpha} is not homogeneous of degree {sum(alpha) + shift}", alpha
            )
    return LinearOperator(kappa, int(shift), imgs, m_out, name, dict(params or {}))


def _from_rule(kappa, shift, m_out, rule: Callable[[Exponent], Polynomial], name, params):
    kappa = tuple(kappa)
    return operator_from_images(
        kappa, shift, {alpha: rule(alpha) for alpha in box(kappa)}, m_out, name=name, params=params
    )


# ---------------------------------------------------------------------------
# symbol and application


def symbol(T: LinearOperator) -> Polynomial:
    """Sym_T(w, u) = sum_alpha binom(kappa, alpha) T(w^alpha) u^(kappa - alpha)."""
    m, n = T.m_out, T.n
    out: dict[Exponent, Fraction] = {}
    for alpha, img in T.images.items():
        if not img:
            continue
        weight = binom_vec(T.kappa, alpha)
        u_part = tuple(k - a for k, a in zip(T.kappa, alpha))
        for e, c in img.terms.items():
            out[e + u_part] = out.get(e + u_part, 0) + weight * c
    return Polynomial._raw(m + n, out)


def _check_input(T: LinearOperator, f: Polynomial, strict: bool) -> None:
    if f.nvars != T.n:
        raise OperatorError(f"input has {f.nvars} variables, operator expects {T.n}")
    for exp in f.terms:
        if not leq(exp, T.kappa):
            raise OperatorError(f"input term w^{exp} exceeds kappa={T.kappa}", exp)
    if strict and not f.is_homogeneous():
        raise OperatorError("input is not homogeneous (strict mode)")


def apply(T: LinearOperator, f: Polynomial, *, strict: bool = True) -> Polynomial:
    """T(f) = sum c_alpha T(w^alpha)."""
    _check_input(T, f, strict)
    out: dict[Exponent, Fraction] = {}
    for alpha, c in f.terms.items():
        for e, v in T.images[alpha].terms.items():
            out[e] = out.get(e, 0) + c * v
    return Polynomial._raw(T.m_out, out)


def apply_via_symbol(
    T: LinearOperator, f: Polynomial, *, strict: bool = True, literal: bool = False
) -> Polynomial:
    """Recover T(f) from the symbol alone.

    Computes ``D(Sym_T(w,u) f(v))`` at ``u = v = 0`` with
    ``D = sum_{0<=gamma<=kappa} d_u^(kappa-gamma) d_v^gamma`` and divides by kappa!.
    By default the restriction to ``u = v = 0`` is read off by coefficient
    extraction; ``literal=True`` forms the full product and differentiates it.
    """
    _check_input(T, f, strict)
    sym = symbol(T)
    m, n, kappa = T.m_out, T.n, T.kappa
    kfact = factorial_vec(kappa)
    if literal:
        return _contract_literal(sym, f, m, n, kappa).scale(Fraction(1, kfact))

    by_u: dict[Exponent, dict[Exponent, Fraction]] = {}
    for e, c in sym.terms.items():
        by_u.setdefault(e[m:], {})[e[:m]] = c
    out: dict[Exponent, Fraction] = {}
    for gamma in box(kappa):
        c_gamma = f.coeff(gamma)
        if not c_gamma:
            continue
        rest = tuple(k - g for k, g in zip(kappa, gamma))
        slice_ = by_u.get(rest)
        if not slice_:
            continue
        weight = c_gamma * factorial_vec(rest) * factorial_vec(gamma) / kfact
        for w, c in slice_.items():
            out[w] = out.get(w, 0) + weight * c
    return Polynomial._raw(m, out)


def _contract_literal(sym: Polynomial, f: Polynomial, m: int, n: int, kappa) -> Polynomial:
    total = m + 2 * n
    product = sym.embed(total, range(m + n)) * f.embed(total, range(m + n, total))
    out: dict[Exponent, Fraction] = {}
    zeros = (0,) * (2 * n)
    for gamma in box(kappa):
        rest = tuple(k - g for k, g in zip(kappa, gamma))
        d = derivative(product, (0,) * m + rest + tuple(gamma))
        for e, c in d.terms.items():
            if e[m:] == zeros:
                out[e[:m]] = out.get(e[:m], 0) + c
    return Polynomial._raw(m, out)


def compose(T2: LinearOperator, T1: LinearOperator) -> LinearOperator:
    """The operator T2 o T1 (apply T1 first)."""
    if T1.m_out != T2.n:
        raise OperatorError(f"T1 outputs {T1.m_out} variables but T2 acts on {T2.n}")
    images = {}
    for alpha, img in T1.images.items():
        if not img.in_box(T2.kappa):
            raise OperatorError(f"T1(w^{alpha}) exceeds the domain bound {T2.kappa} of T2", alpha)
        images[alpha] = apply(T2, img, strict=False)
    return operator_from_images(
        T1.kappa, T1.shift + T2.shift, images, T2.m_out, name=f"{T2.name}*{T1.name}"
    )


# ---------------------------------------------------------------------------
# built-in preservers


def _check_gamma(gamma, kappa) -> tuple[int, ...]:
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != len(kappa) or not leq(gamma, kappa) or any(g < 0 for g in gamma):
        raise ValueError(f"need 0 <= gamma <= kappa, got gamma={gamma}, kappa={tuple(kappa)}")
    return gamma


def identity(kappa: Sequence[int]) -> LinearOperator:
    n = len(kappa)
    return _from_rule(kappa, 0, n, lambda a: Polynomial.monomial(a), "identity", {"kappa": list(kappa)})


def diff_op(s: Polynomial, kappa: Sequence[int]) -> LinearOperator:
    """w^alpha -> d_s w^alpha for a homogeneous polynomial s."""
    if s.nvars != len(kappa):
        raise ValueError("s must have one variable per entry of kappa")
    if not s.is_homogeneous():
        raise ValueError("s must be homogeneous")
    shift = -(s.degree or 0)

    def rule(alpha):
        mono = Polynomial.monomial(alpha)
        out = Polynomial.zero(len(alpha))
        for beta, lam in s.terms.items():
            out = out + derivative(mono, beta).scale(lam)
        return out

    return _from_rule(kappa, shift, len(kappa), rule, "diff_op", {"kappa": list(kappa), "s": s})


def normalization(kappa: Sequence[int]) -> LinearOperator:
    return _from_rule(
        kappa,
        0,
        len(kappa),
        lambda a: Polynomial.monomial(a, Fraction(1, factorial_vec(a))),
        "normalization",
        {"kappa": list(kappa)},
    )


def mult_normalized(g: Polynomial, kappa: Sequence[int]) -> LinearOperator:
    """N(h) -> N(h g), i.e. w^alpha -> alpha! N(w^alpha g)."""
    if g.nvars != len(kappa):
        raise ValueError("g must have one variable per entry of kappa")
    if not g or not g.is_homogeneous():
        raise ValueError("g must be a non-zero homogeneous polynomial")
    return _from_rule(
        kappa,
        g.degree,
        len(kappa),
        lambda a: normalize(Polynomial.monomial(a) * g).scale(factorial_vec(a)),
        "mult_normalized",
        {"kappa": list(kappa), "g": g},
    )


def trunc_lower(gamma: Sequence[int], kappa: Sequence[int]) -> LinearOperator:
    gamma = _check_gamma(gamma, kappa)
    n = len(kappa)
    return _from_rule(
        kappa,
        0,
        n,
        lambda a: Polynomial.monomial(a) if leq(gamma, a) else Polynomial.zero(n),
        "trunc_lower",
        {"kappa": list(kappa), "gamma": list(gamma)},
    )


def trunc_upper(gamma: Sequence[int], kappa: Sequence[int]) -> LinearOperator:
    gamma = _check_gamma(gamma, kappa)
    n = len(kappa)
    return _from_rule(
        kappa,
        0,
        n,
        lambda a: Polynomial.monomial(a) if leq(a, gamma) else Polynomial.zero(n),
        "trunc_upper",
        {"kappa": list(kappa), "gamma": list(gamma)},
    )


def diag_normalized(kappa: Sequence[int], i: int = 0, j: int = 1) -> LinearOperator:
    """S = N o T o N^-1 where T substitutes w_j by w_i; slot j stays in place, unused."""
    n = len(kappa)
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise ValueError("need two distinct variable indices in range")

    def rule(alpha):
        merged = list(alpha)
        merged[i] += merged[j]
        merged[j] = 0
        return Polynomial.monomial(merged, Fraction(factorial_vec(alpha), factorial_vec(merged)))

    return _from_rule(kappa, 0, n, rule, "diag_normalized", {"kappa": list(kappa), "i": i, "j": j})


def creation(a: RatLike, i: int, j: int, kappa: Sequence[int]) -> LinearOperator:
    """1 + a w_j d_i for a >= 0."""
    a = as_rat(a)
    n = len(kappa)
    if a < 0:
        raise ValueError("creation operator needs a >= 0")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("variable index out of range")

    def rule(alpha):
        mono = Polynomial.monomial(alpha)
        if not alpha[i]:
            return mono
        moved = list(alpha)
        moved[i] -= 1
        moved[j] += 1
        return mono + Polynomial.monomial(moved, a * alpha[i])

    return _from_rule(
        kappa, 0, n, rule, "creation", {"kappa": list(kappa), "a": a, "i": i, "j": j}
    )


def polarization(kappa: Sequence[int], k: int) -> LinearOperator:
    """w^alpha t^b -> binom(k, b)^-1 w^alpha e_b(t_1..t_k).

    Acts on ``len(kappa) + 1`` variables (t last, degree <= k) and outputs
    ``len(kappa) + k`` variables (t_1..t_k last).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = len(kappa)
    m = n + k

    def rule(full):
        alpha, b = full[:n], full[n]
        e_b = elementary_symmetric(b, k).embed(m, range(n, m))
        return (Polynomial.monomial(tuple(alpha) + (0,) * k) * e_b).scale(Fraction(1, math.comb(k, b)))

    return _from_rule(
        tuple(kappa) + (k,), 0, m, rule, "polarization", {"kappa": list(kappa), "k": k}
    )


def exclusion(theta: RatLike, n: int) -> LinearOperator:
    """f -> theta f + (1 - theta) f(w_2, w_1, w_3, ...) on multiaffine polynomials."""
    theta = as_rat(theta)
    if not 0 <= theta <= 1:
        raise ValueError("exclusion needs 0 <= theta <= 1")
    if n < 2:
        raise ValueError("exclusion needs at least two variables")

    def rule(alpha):
        swapped = (alpha[1], alpha[0]) + tuple(alpha[2:])
        return Polynomial.monomial(alpha, theta) + Polynomial.monomial(swapped, 1 - theta)

    return _from_rule((1,) * n, 0, n, rule, "exclusion", {"n": n, "theta": theta})


BUILTINS: dict[str, Callable[..., LinearOperator]] = {
    "identity": identity,
    "diff_op": diff_op,
    "normalization": normalization,
    "mult_normalized": mult_normalized,
    "trunc_lower": trunc_lower,
    "trunc_upper": trunc_upper,
    "diag_normalized": diag_normalized,
    "creation": creation,
    "polarization": polarization,
    "exclusion": exclusion,
}


def builtin(name: str, params: Mapping | None = None) -> LinearOperator:
    """Construct a catalogued operator by name, e.g. ``builtin("creation", {"a": 1, "i": 0, "j": 1, "kappa": [1, 1]})``."""
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown built-in operator {name!r}; choose from {sorted(BUILTINS)}") from None
    params = dict(params or {})
    try:
        return factory(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
