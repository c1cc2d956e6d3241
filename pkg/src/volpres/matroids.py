"""Matroid and polymatroid generating polynomials.

Ground sets are ``{0, ..., n-1}`` here; the JSON format uses 1-based labels.
Variable ``x_i`` corresponds to element ``i`` and, in independent-set
polynomials, ``y`` is the last variable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import rank as matrix_rank
from .poly import Polynomial, RatLike, as_rat, factorial_vec, normalize


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: frozenset[frozenset[int]]

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> Matroid:
        bs = frozenset(frozenset(int(x) for x in b) for b in bases)
        if not bs:
            raise ValueError("a matroid needs at least one basis")
        sizes = {len(b) for b in bs}
        if len(sizes) != 1:
            raise ValueError("bases must all have the same size")
        for b in bs:
            if any(not 0 <= x < n for x in b):
                raise ValueError(f"basis {sorted(b)} is not inside the ground set of size {n}")
        for b1 in bs:
            for b2 in bs:
                for x in b1 - b2:
                    if not any((b1 - {x}) | {y} in bs for y in b2 - b1):
                        raise ValueError(
                            f"basis exchange fails for {sorted(b1)}, {sorted(b2)} at element {x}"
                        )
        return cls(n, sizes.pop(), bs)

    @classmethod
    def uniform(cls, r: int, n: int) -> Matroid:
        return cls.from_bases(n, itertools.combinations(range(n), r))

    def rank_of(self, subset: Iterable[int]) -> int:
        s = set(subset)
        return max(len(s & b) for b in self.bases)

    def independent_sets(self) -> list[frozenset[int]]:
        out = set()
        for b in self.bases:
            for k in range(len(b) + 1):
                out.update(frozenset(c) for c in itertools.combinations(sorted(b), k))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def sorted_bases(self) -> list[list[int]]:
        return sorted(sorted(b) for b in self.bases)


@dataclass(frozen=True)
class VectorRealization:
    d: int
    columns: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def make(cls, columns: Sequence[Sequence[RatLike]], d: int | None = None) -> VectorRealization:
        cols = tuple(tuple(as_rat(x) for x in c) for c in columns)
        d = d if d is not None else (len(cols[0]) if cols else 0)
        if any(len(c) != d for c in cols):
            raise ValueError(f"every column must have {d} entries")
        return cls(d, cols)


def matroid_from_vectors(V: VectorRealization) -> Matroid:
    """Column matroid: bases are the column subsets of full rank r."""
    n = len(V.columns)
    r = matrix_rank(V.columns) if n else 0
    bases = [c for c in itertools.combinations(range(n), r) if matrix_rank([V.columns[i] for i in c]) == r]
    return Matroid.from_bases(n, bases)


def bases_polynomial(M: Matroid) -> Polynomial:
    """B_M = sum over bases of x^beta."""
    return Polynomial(M.n, {tuple(int(i in b) for i in range(M.n)): 1 for b in M.bases})


def independent_polynomial(M: Matroid) -> Polynomial:
    """I_M = sum over independent sets of x^iota y^(r - |iota|); y is the last variable."""
    terms = {}
    for s in M.independent_sets():
        terms[tuple(int(i in s) for i in range(M.n)) + (M.r - len(s),)] = 1
    return Polynomial(M.n + 1, terms)


def generic_extension_polynomial(M: Matroid, m: int) -> Polynomial:
    """sum_iota binom(m, r-|iota|) m^(|iota|-r) x^iota y^(r-|iota|).

    This is B_{M+m}(x, y/m, ..., y/m) for the extension of M by m generic
    vectors; it tends to N(I_M) as m grows.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    terms = {}
    for s in M.independent_sets():
        k = M.r - len(s)
        c = Fraction(math.comb(m, k), m**k)
        terms[tuple(int(i in s) for i in range(M.n)) + (k,)] = c
    return Polynomial(M.n + 1, terms)


def coefficient_gap(f: Polynomial, g: Polynomial) -> Fraction:
    """max |coefficient difference| over the union of supports."""
    if f.nvars != g.nvars:
        raise ValueError("variable-count mismatch")
    return max((abs(f.coeff(e) - g.coeff(e)) for e in set(f.terms) | set(g.terms)), default=Fraction(0))


def extension_gap_bound(r: int) -> Fraction:
    """C with |binom(m,k) m^-k - 1/k!| <= C/m for all k <= r: max_k binom(k,2)/k!."""
    return max((Fraction(math.comb(k, 2), math.factorial(k)) for k in range(r + 1)), default=Fraction(0))


# ---------------------------------------------------------------------------
# polymatroids


@dataclass(frozen=True)
class PolymatroidRank:
    """Rank function on all subsets of {0..n-1}, stored densely."""

    n: int
    table: Mapping[frozenset[int], int]

    @classmethod
    def from_function(cls, n: int, rank) -> PolymatroidRank:
        table = {}
        for k in range(n + 1):
            for c in itertools.combinations(range(n), k):
                table[frozenset(c)] = int(rank(frozenset(c)))
        P = cls(n, table)
        P.validate()
        return P

    def __call__(self, subset: Iterable[int]) -> int:
        return self.table[frozenset(subset)]

    def validate(self) -> None:
        """Raise ValueError unless normalised, monotone and submodular."""
        if self.table.get(frozenset(), None) != 0:
            raise ValueError("rank of the empty set must be 0")
        subsets = list(self.table)
        if len(subsets) != 2**self.n:
            raise ValueError("rank table must cover every subset")
        for S in subsets:
            for i in range(self.n):
                if i in S:
                    continue
                if self.table[S | {i}] < self.table[S]:
                    raise ValueError(f"rank is not monotone at {sorted(S)} + {i}")
        for S in subsets:
            for T in subsets:
                if self.table[S] + self.table[T] < self.table[S | T] + self.table[S & T]:
                    raise ValueError(f"rank is not submodular at {sorted(S)}, {sorted(T)}")

    def full_rank(self) -> int:
        return self.table[frozenset(range(self.n))]


def restriction_polymatroid(M: Matroid, S: Sequence[Iterable[int]]) -> PolymatroidRank:
    """rk_P(I) = rk_M(union_{i in I} S_i)."""
    parts = [frozenset(s) for s in S]
    for s in parts:
        if any(not 0 <= x < M.n for x in s):
            raise ValueError(f"subset {sorted(s)} is not inside the ground set")
    return PolymatroidRank.from_function(
        len(parts), lambda I: M.rank_of(frozenset().union(*(parts[i] for i in I)))
    )


def polymatroid_bases(P: PolymatroidRank) -> list[tuple[int, ...]]:
    """Integer base points: |beta| = rk(E) and sum_{i in I} beta_i <= rk(I) for every I."""
    total = P.full_rank()
    caps = [P([i]) for i in range(P.n)]
    out = []
    for beta in itertools.product(*(range(c + 1) for c in caps)):
        if sum(beta) != total:
            continue
        if all(sum(beta[i] for i in I) <= rk for I, rk in P.table.items()):
            out.append(beta)
    return out


def polymatroid_expgen(P: PolymatroidRank) -> Polynomial:
    """Exponential basis generating function sum x^beta / beta!."""
    return Polynomial(P.n, {beta: Fraction(1, factorial_vec(beta)) for beta in polymatroid_bases(P)})


def normalized_independent_polynomial(M: Matroid) -> Polynomial:
    return normalize(independent_polynomial(M))
