"""Factored expressions for the symbols of the built-in operators.

These are assembled from products of linear forms and truncations, never from
the operator images, so comparing them with :func:`volpres.operators.symbol`
checks two independent computations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, as_rat, box, factorial_vec, normalize, truncate_lower


def _var(i: int, n: int) -> Polynomial:
    return Polynomial.variable(i, n)


def identity_power(kappa: Sequence[int], total: int, w_slots, u_slots) -> Polynomial:
    """prod_i (w_i + u_i)^kappa_i in ``total`` variables."""
    out = Polynomial.constant(1, total)
    for k, wi, ui in zip(kappa, w_slots, u_slots):
        out = out * (_var(wi, total) + _var(ui, total)) ** k
    return out


def identity_symbol(kappa: Sequence[int]) -> Polynomial:
    n = len(kappa)
    return identity_power(kappa, 2 * n, range(n), range(n, 2 * n))


def normalization_symbol(kappa: Sequence[int]) -> Polynomial:
    """prod_j sum_a binom(kappa_j, a) w_j^a / a! u_j^(kappa_j - a)."""
    n = len(kappa)
    out = Polynomial.constant(1, 2 * n)
    for j, k in enumerate(kappa):
        factor = Polynomial.zero(2 * n)
        for a in range(k + 1):
            exp = [0] * (2 * n)
            exp[j], exp[n + j] = a, k - a
            factor = factor + Polynomial.monomial(exp, Fraction(math.comb(k, a), math.factorial(a)))
        out = out * factor
    return out


def trunc_upper_symbol(gamma: Sequence[int], kappa: Sequence[int]) -> Polynomial:
    """((w + u)^kappa) restricted to u-exponents >= kappa - gamma."""
    n = len(kappa)
    threshold = (0,) * n + tuple(k - g for k, g in zip(kappa, gamma))
    return truncate_lower(identity_symbol(kappa), threshold)


def trunc_lower_symbol(gamma: Sequence[int], kappa: Sequence[int]) -> Polynomial:
    """((w + u)^kappa) restricted to w-exponents >= gamma."""
    return truncate_lower(identity_symbol(kappa), tuple(gamma) + (0,) * len(kappa))


def creation_symbol(a, i: int, j: int, kappa: Sequence[int]) -> Polynomial:
    """(w + u)^(kappa - e_i) (w_i + u_i + a kappa_i w_j); needs kappa_i >= 1."""
    n = len(kappa)
    if kappa[i] < 1:
        raise ValueError("closed form needs kappa_i >= 1")
    reduced = list(kappa)
    reduced[i] -= 1
    last = _var(i, 2 * n) + _var(n + i, 2 * n) + _var(j, 2 * n).scale(as_rat(a) * kappa[i])
    return identity_power(reduced, 2 * n, range(n), range(n, 2 * n)) * last


def polarization_symbol(kappa: Sequence[int], k: int) -> Polynomial:
    """(w + u)^kappa prod_i (t_i + s); layout (w, t_1..t_k, u, s)."""
    n = len(kappa)
    total = 2 * n + k + 1
    out = identity_power(kappa, total, range(n), range(n + k, 2 * n + k))
    s = _var(total - 1, total)
    for i in range(k):
        out = out * (_var(n + i, total) + s)
    return out


def exclusion_symbol(theta, n: int) -> Polynomial:
    theta = as_rat(theta)
    total = 2 * n

    def lin(a, b):
        return _var(a, total) + _var(b, total)

    head = (lin(0, n) * lin(1, n + 1)).scale(theta) + (lin(1, n) * lin(0, n + 1)).scale(1 - theta)
    for i in range(2, n):
        head = head * lin(i, n + i)
    return head


def diff_op_symbol(s: Polynomial, kappa: Sequence[int]) -> Polynomial:
    """sum_alpha lam_alpha kappa!/(kappa-alpha)! (w + u)^(kappa - alpha), terms with alpha <= kappa."""
    n = len(kappa)
    out = Polynomial.zero(2 * n)
    for alpha, lam in s.terms.items():
        if any(a > k for a, k in zip(alpha, kappa)):
            continue
        rest = [k - a for k, a in zip(kappa, alpha)]
        weight = lam * Fraction(factorial_vec(kappa), factorial_vec(rest))
        out = out + identity_power(rest, 2 * n, range(n), range(n, 2 * n)).scale(weight)
    return out


def mult_normalized_symbol(g: Polynomial, kappa: Sequence[int]) -> Polynomial:
    """kappa! sum_alpha N(w^alpha g) u^(kappa-alpha) / (kappa-alpha)!."""
    n = len(kappa)
    kf = factorial_vec(kappa)
    out = Polynomial.zero(2 * n)
    for alpha in box(kappa):
        rest = tuple(k - a for k, a in zip(kappa, alpha))
        part = normalize(Polynomial.monomial(alpha) * g).embed(2 * n, range(n))
        out = out + (part * Polynomial.monomial((0,) * n + rest)).scale(Fraction(kf, factorial_vec(rest)))
    return out


def diag_normalized_symbol(kappa: Sequence[int], i: int = 0, j: int = 1) -> Polynomial:
    """kappa_i! kappa_j! prod_{l != i,j} (w_l + u_l)^kappa_l
    * sum w_i^(a+b)/(a+b)! u_i^(kappa_i-a)/(kappa_i-a)! u_j^(kappa_j-b)/(kappa_j-b)!."""
    n = len(kappa)
    total = 2 * n
    others = [l for l in range(n) if l not in (i, j)]
    out = identity_power([kappa[l] for l in others], total, others, [n + l for l in others])
    ki, kj = kappa[i], kappa[j]
    inner = Polynomial.zero(total)
    for a in range(ki + 1):
        for b in range(kj + 1):
            exp = [0] * total
            exp[i] = a + b
            exp[n + i] = ki - a
            exp[n + j] = kj - b
            c = Fraction(1, math.factorial(a + b) * math.factorial(ki - a) * math.factorial(kj - b))
            inner = inner + Polynomial.monomial(exp, c)
    return (out * inner).scale(math.factorial(ki) * math.factorial(kj))


def expected_symbol(name: str, params: dict) -> Polynomial:
    """Closed-form symbol for a built-in operator given its constructor parameters."""
    p = dict(params)
    if name == "identity":
        return identity_symbol(p["kappa"])
    if name == "normalization":
        return normalization_symbol(p["kappa"])
    if name == "trunc_upper":
        return trunc_upper_symbol(p["gamma"], p["kappa"])
    if name == "trunc_lower":
        return trunc_lower_symbol(p["gamma"], p["kappa"])
    if name == "creation":
        if p["kappa"][p["i"]] == 0:
            return identity_symbol(p["kappa"])
        return creation_symbol(p["a"], p["i"], p["j"], p["kappa"])
    if name == "polarization":
        return polarization_symbol(p["kappa"], p["k"])
    if name == "exclusion":
        return exclusion_symbol(p["theta"], p["n"])
    if name == "diff_op":
        return diff_op_symbol(p["s"], p["kappa"])
    if name == "mult_normalized":
        return mult_normalized_symbol(p["g"], p["kappa"])
    if name == "diag_normalized":
        return diag_normalized_symbol(p["kappa"], p.get("i", 0), p.get("j", 1))
    raise ValueError(f"no closed form for {name!r}")
