"""Fixed test corpus and seeded random generators used by the verification suites."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from . import operators as ops
from .matroids import Matroid, VectorRealization, matroid_from_vectors
from .poly import Polynomial, box, leq, truncate_upper

# realisable matroids on at most six elements, by column vectors
MATROID_VECTORS: dict[str, list[list[int]]] = {
    "U23": [[1, 0], [0, 1], [1, 1]],
    "U24": [[1, 0], [0, 1], [1, 1], [1, 2]],
    "U35": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]],
    "U36": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 3, 9]],
    "K4": [
        [1, -1, 0, 0],
        [1, 0, -1, 0],
        [1, 0, 0, -1],
        [0, 1, -1, 0],
        [0, 1, 0, -1],
        [0, 0, 1, -1],
    ],
    "free3": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "parallel_loop": [[1, 0], [2, 0], [0, 1], [0, 0]],
    "rank0": [[0, 0]],
    "U24+U12": [
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [1, 2, 0],
        [0, 0, 1],
        [0, 0, 2],
    ],
    "P6": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 1, 1]],
    "rank2_parallel": [[1, 0], [1, 0], [0, 1], [1, 1], [2, 2]],
    "coloop_chain": [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]],
}


def matroid_corpus() -> dict[str, Matroid]:
    return {name: matroid_from_vectors(VectorRealization.make(cols)) for name, cols in MATROID_VECTORS.items()}


def random_rat(rng: random.Random, lo: int = 1, hi: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_kappa(rng: random.Random, n_max: int = 3, k_max: int = 3, n_min: int = 1) -> tuple[int, ...]:
    n = rng.randint(n_min, n_max)
    return tuple(rng.randint(0, k_max) for _ in range(n))


def random_homogeneous(rng: random.Random, kappa: Sequence[int], degree: int | None = None) -> Polynomial:
    """Non-zero homogeneous polynomial in R_kappa with positive rational coefficients."""
    kappa = tuple(kappa)
    if degree is None:
        degree = rng.randint(0, sum(kappa))
    layer = [a for a in box(kappa) if sum(a) == degree]
    chosen = rng.sample(layer, rng.randint(1, len(layer)))
    return Polynomial(len(kappa), {a: random_rat(rng) for a in chosen})


def random_sparse(rng: random.Random, kappa: Sequence[int], signed: bool = True) -> Polynomial:
    """Arbitrary (possibly inhomogeneous) polynomial in R_kappa."""
    cells = list(box(tuple(kappa)))
    chosen = rng.sample(cells, rng.randint(1, min(len(cells), 6)))
    lo = -9 if signed else 1
    terms = {}
    for a in chosen:
        c = Fraction(rng.randint(lo, 9), rng.randint(1, 5))
        terms[a] = c if c else Fraction(1)
    return Polynomial(len(kappa), terms)


def random_linear_product(rng: random.Random, n: int, d: int) -> Polynomial:
    """Product of d linear forms with non-negative coefficients (a volume polynomial)."""
    f = Polynomial.constant(1, n)
    for _ in range(d):
        coeffs = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(n)]
        if not any(coeffs):
            coeffs[rng.randrange(n)] = Fraction(1)
        f = f * Polynomial.linear_form(coeffs)
    return f


def random_lorentzian_candidate(rng: random.Random, kappa: Sequence[int]) -> Polynomial:
    """Random homogeneous element of R_kappa drawn from volume-polynomial constructions.

    Callers still run the certifier: the result is meant to pass, not assumed to.
    """
    kappa = tuple(kappa)
    n = len(kappa)
    d = rng.randint(0, sum(kappa))
    choice = rng.random()
    if choice < 0.2:
        layer = [a for a in box(kappa) if sum(a) == d]
        return Polynomial.monomial(rng.choice(layer), random_rat(rng))
    f = random_linear_product(rng, n, d)
    f = truncate_upper(f, kappa)
    if not f:
        layer = [a for a in box(kappa) if sum(a) == d]
        return Polynomial.monomial(rng.choice(layer))
    return f


# ---------------------------------------------------------------------------
# operator instances


def _random_hom_poly(rng: random.Random, n: int, d: int) -> Polynomial:
    layer = [a for a in itertools.product(range(d + 1), repeat=n) if sum(a) == d]
    chosen = rng.sample(layer, rng.randint(1, len(layer)))
    return Polynomial(n, {a: random_rat(rng) for a in chosen})


def random_operator(rng: random.Random, family: str, n_max: int = 3, k_max: int = 3) -> ops.LinearOperator:
    """A random instance of a built-in family acting on at most ``n_max`` variables."""
    if family == "identity":
        return ops.identity(random_kappa(rng, n_max, k_max))
    if family == "normalization":
        return ops.normalization(random_kappa(rng, n_max, k_max))
    if family == "diff_op":
        kappa = random_kappa(rng, n_max, k_max)
        return ops.diff_op(_random_hom_poly(rng, len(kappa), rng.randint(0, 2)), kappa)
    if family == "mult_normalized":
        kappa = random_kappa(rng, n_max, k_max)
        return ops.mult_normalized(_random_hom_poly(rng, len(kappa), rng.randint(0, 2)), kappa)
    if family in ("trunc_lower", "trunc_upper"):
        kappa = random_kappa(rng, n_max, k_max)
        gamma = tuple(rng.randint(0, k) for k in kappa)
        return getattr(ops, family)(gamma, kappa)
    if family == "diag_normalized":
        kappa = random_kappa(rng, n_max, k_max, n_min=2)
        i, j = rng.sample(range(len(kappa)), 2)
        return ops.diag_normalized(kappa, i, j)
    if family == "creation":
        kappa = random_kappa(rng, n_max, k_max)
        i, j = rng.randrange(len(kappa)), rng.randrange(len(kappa))
        return ops.creation(Fraction(rng.randint(0, 6), rng.randint(1, 3)), i, j, kappa)
    if family == "polarization":
        kappa = random_kappa(rng, n_max - 1, k_max, n_min=0)
        return ops.polarization(kappa, rng.randint(0, k_max))
    if family == "exclusion":
        n = rng.randint(2, n_max)
        return ops.exclusion(Fraction(rng.randint(0, 6), 6), n)
    raise ValueError(f"unknown family {family!r}")


FAMILIES = tuple(ops.BUILTINS)


def in_domain(T: ops.LinearOperator, f: Polynomial) -> bool:
    return f.nvars == T.n and all(leq(e, T.kappa) for e in f.terms)
