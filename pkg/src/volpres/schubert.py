"""Schubert polynomials by divided differences from the longest permutation."""

from __future__ import annotations

from typing import Sequence

from .poly import Polynomial, divide_exact


def check_permutation(w: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{list(w)} is not a permutation of 1..{len(w)}")
    return w


def inversions(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def swap_variables(f: Polynomial, i: int) -> Polynomial:
    """Exchange variables i and i+1 (0-based)."""

    def step(e, c):
        e = list(e)
        e[i], e[i + 1] = e[i + 1], e[i]
        return tuple(e), c

    return f.map_terms(step)


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """(f - s_i f) / (x_i - x_{i+1}), computed by exact polynomial division."""
    numerator = f - swap_variables(f, i)
    if not numerator:
        return Polynomial.zero(f.nvars)
    divisor = Polynomial.variable(i, f.nvars) - Polynomial.variable(i + 1, f.nvars)
    try:
        return divide_exact(numerator, divisor)
    except ArithmeticError as exc:  # pragma: no cover - would be a bug here
        raise RuntimeError("divided difference left a remainder") from exc


def schubert(w: Sequence[int]) -> Polynomial:
    """Schubert polynomial of the permutation ``w`` (one-line notation, values 1..n).

    Climbs from ``w`` to the longest element by right-multiplying with
    simple transpositions at the first ascent, then applies the matching
    divided differences to x_1^(n-1) x_2^(n-2) ... x_(n-1).
    """
    w = list(check_permutation(w))
    n = len(w)
    word = []
    while True:
        ascent = next((i for i in range(n - 1) if w[i] < w[i + 1]), None)
        if ascent is None:
            break
        w[ascent], w[ascent + 1] = w[ascent + 1], w[ascent]
        word.append(ascent)
    poly = Polynomial.monomial(tuple(n - 1 - i for i in range(n)) if n else ())
    for i in reversed(word):
        poly = divided_difference(poly, i)
    return poly
