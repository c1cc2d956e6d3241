"""Exact sparse multivariate polynomials over the rationals.

Variables are positional: a polynomial in ``nvars`` variables stores a map
from exponent tuples of length ``nvars`` to non-zero :class:`~fractions.Fraction`
coefficients.  Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
RatLike = Union[int, Fraction, str]


def as_rat(value: RatLike) -> Fraction:
    """Coerce ``value`` to a Fraction.  Floats are rejected to keep results exact."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def factorial_vec(alpha: Sequence[int]) -> int:
    """alpha! = prod alpha_i!"""
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def binom_vec(kappa: Sequence[int], alpha: Sequence[int]) -> int:
    out = 1
    for k, a in zip(kappa, alpha):
        out *= math.comb(k, a)
    return out


def box(kappa: Sequence[int]) -> Iterator[Exponent]:
    """All exponents 0 <= alpha <= kappa, in lexicographic order."""
    return itertools.product(*(range(k + 1) for k in kappa))


def compositions(d: int, n: int) -> Iterator[Exponent]:
    """All alpha in N^n with |alpha| = d, lexicographically descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in compositions(d - first, n - 1):
            yield (first,) + rest


def leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(alpha, beta))


class Polynomial:
    """A polynomial with exact rational coefficients in ``nvars`` positional variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], RatLike] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = as_rat(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> Polynomial:
        # trusted fast path: caller guarantees shape and drops zeros
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = {e: c for e, c in terms.items() if c}
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c: RatLike, nvars: int) -> Polynomial:
        return cls._raw(nvars, {(0,) * nvars: as_rat(c)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: RatLike = 1) -> Polynomial:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[RatLike]) -> Polynomial:
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Terms sorted lexicographically by exponent."""
        return sorted(self._terms.items())

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def degrees(self) -> tuple[int, ...]:
        """Per-variable maximal degree."""
        out = [0] * self.nvars
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def is_homogeneous(self, d: int | None = None) -> bool:
        """True if all terms share one total degree (the zero polynomial is homogeneous of every degree)."""
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs.pop() == d

    def homogeneous_parts(self) -> dict[int, Polynomial]:
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self._terms.items():
            parts.setdefault(sum(exp), {})[exp] = c
        return {d: Polynomial._raw(self.nvars, t) for d, t in sorted(parts.items())}

    def in_box(self, kappa: Sequence[int]) -> bool:
        """Membership in R_kappa: degree at most kappa_i in variable i."""
        return all(leq(exp, kappa) for exp in self._terms)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def evaluate(self, point: Sequence[RatLike]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        pt = [as_rat(x) for x in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(pt, exp):
                if e:
                    term *= x**e
            total += term
        return total

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return Polynomial.constant(other, self.nvars)
        return None

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c: RatLike) -> Polynomial:
        c = as_rat(c)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            out: dict[Exponent, Fraction] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return Polynomial._raw(self.nvars, out)
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(1 / as_rat(other))
        return NotImplemented

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- term-wise maps ---------------------------------------------------

    def map_terms(self, fn) -> Polynomial:
        """Apply ``fn(exp, coeff) -> (exp, coeff) | None`` to every term."""
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            r = fn(exp, c)
            if r is None:
                continue
            e, v = r
            out[e] = out.get(e, 0) + v
        return Polynomial._raw(self.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Re-index into ``nvars`` variables; variable i goes to slot ``positions[i]``."""
        if len(positions) != self.nvars:
            raise ValueError("positions must list a slot for every variable")
        out = {}
        for exp, c in self._terms.items():
            e = [0] * nvars
            for p, a in zip(positions, exp):
                e[p] += a
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return Polynomial._raw(nvars, out)

    # -- display ----------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        pieces = []
        for exp, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_str()!r})"


# ---------------------------------------------------------------------------
# volume-polynomial preserving transformations


def substitute_linear(
    f: Polynomial, A: Sequence[Sequence[RatLike]], *, allow_negative: bool = False
) -> Polynomial:
    """Return f(A x') where ``A`` is an n x m matrix and x' has m variables.

    Entries of ``A`` must be non-negative unless ``allow_negative`` is set.
    """
    if len(A) != f.nvars:
        raise ValueError(f"matrix has {len(A)} rows, polynomial has {f.nvars} variables")
    m = len(A[0]) if A else 0
    rows = []
    for row in A:
        if len(row) != m:
            raise ValueError("ragged substitution matrix")
        row = [as_rat(a) for a in row]
        if not allow_negative and any(a < 0 for a in row):
            raise ValueError("substitution matrix has negative entries")
        rows.append(Polynomial(m, {tuple(int(j == k) for j in range(m)): a for k, a in enumerate(row)}))
    powers: list[dict[int, Polynomial]] = [{0: Polynomial.constant(1, m)} for _ in rows]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * rows[i]
        return cache[e]

    result = Polynomial.zero(m)
    for exp, c in f.items():
        term = Polynomial.constant(c, m)
        for i, e in enumerate(exp):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def partial_derivative(f: Polynomial, i: int, k: int = 1) -> Polynomial:
    """k-fold partial derivative in variable ``i`` (0-based)."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    out = {}
    for exp, c in f.terms.items():
        a = exp[i]
        if a < k:
            continue
        e = list(exp)
        e[i] = a - k
        out[tuple(e)] = c * math.perm(a, k)
    return Polynomial._raw(f.nvars, out)


def derivative(f: Polynomial, gamma: Sequence[int]) -> Polynomial:
    """The mixed partial derivative d^gamma f."""
    if len(gamma) != f.nvars:
        raise ValueError("derivative multi-index has wrong length")
    out = {}
    for exp, c in f.terms.items():
        if not leq(gamma, exp):
            continue
        w = 1
        for a, g in zip(exp, gamma):
            w *= math.perm(a, g)
        out[tuple(a - g for a, g in zip(exp, gamma))] = c * w
    return Polynomial._raw(f.nvars, out)


def apply_diff_operator(s: Polynomial, f: Polynomial) -> Polynomial:
    """The constant-coefficient differential operator s(d_1, ..., d_n) applied to f."""
    if s.nvars != f.nvars:
        raise ValueError(f"variable-count mismatch: {s.nvars} vs {f.nvars}")
    result: dict[Exponent, Fraction] = {}
    for alpha, lam in s.terms.items():
        for exp, c in derivative(f, alpha).terms.items():
            result[exp] = result.get(exp, 0) + lam * c
    return Polynomial._raw(f.nvars, result)


def normalize(f: Polynomial) -> Polynomial:
    """N(x^a) = x^a / a!"""
    return f.map_terms(lambda e, c: (e, c / factorial_vec(e)))


def denormalize(f: Polynomial) -> Polynomial:
    """Inverse of :func:`normalize`: x^a -> a! x^a."""
    return f.map_terms(lambda e, c: (e, c * factorial_vec(e)))


def dual(s: Polynomial, kappa: Sequence[int]) -> Polynomial:
    """s^v = N(x^kappa s(1/x)) = sum lam_a x^(kappa-a) / (kappa-a)!.

    The polynomial depends on ``kappa`` (by a monomial factor and factorial
    rescaling); only the co-volume property is independent of it.
    """
    kappa = tuple(kappa)
    if len(kappa) != s.nvars:
        raise ValueError("kappa has wrong length")
    out = {}
    for alpha, lam in s.terms.items():
        if not leq(alpha, kappa):
            raise ValueError(f"term x^{alpha} exceeds kappa={kappa}")
        rest = tuple(k - a for k, a in zip(kappa, alpha))
        out[rest] = lam / factorial_vec(rest)
    return Polynomial._raw(s.nvars, out)


def antiderivative(f: Polynomial, gamma: Sequence[int]) -> Polynomial:
    """sum a!/(a+gamma)! c_a x^(a+gamma); equals N(x^gamma N^-1(f))."""
    gamma = tuple(gamma)
    if len(gamma) != f.nvars:
        raise ValueError("gamma has wrong length")

    def step(e, c):
        shifted = tuple(a + g for a, g in zip(e, gamma))
        return shifted, c * Fraction(factorial_vec(e), factorial_vec(shifted))

    return f.map_terms(step)


def truncate_lower(f: Polynomial, gamma: Sequence[int]) -> Polynomial:
    """Keep the terms with exponent >= gamma componentwise."""
    gamma = tuple(gamma)
    return f.map_terms(lambda e, c: (e, c) if leq(gamma, e) else None)


def truncate_upper(f: Polynomial, gamma: Sequence[int]) -> Polynomial:
    """Keep the terms with exponent <= gamma componentwise."""
    gamma = tuple(gamma)
    return f.map_terms(lambda e, c: (e, c) if leq(e, gamma) else None)


def diagonalize(f: Polynomial, i: int, j: int, *, compact: bool = False) -> Polynomial:
    """Substitute variable ``j`` by variable ``i``.

    The ambient arity is kept (slot ``j`` is left unused) unless ``compact``
    is set, in which case slot ``j`` is dropped.
    """
    n = f.nvars
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("diagonalisation index out of range")
    if i == j:
        raise ValueError("diagonalisation needs two distinct variables")

    def step(e, c):
        e = list(e)
        e[i] += e[j]
        e[j] = 0
        return tuple(e), c

    g = f.map_terms(step)
    return drop_variables(g, [j]) if compact else g


def drop_variables(f: Polynomial, slots: Iterable[int]) -> Polynomial:
    """Remove unused variable slots, renumbering the rest."""
    slots = set(slots)
    for exp in f.terms:
        if any(exp[s] for s in slots):
            raise ValueError("cannot drop a variable that occurs in the polynomial")
    keep = [k for k in range(f.nvars) if k not in slots]
    return Polynomial._raw(len(keep), {tuple(e[k] for k in keep): c for e, c in f.terms.items()})


def elementary_symmetric(k: int, n: int) -> Polynomial:
    if k < 0:
        raise ValueError("degree must be non-negative")
    out = {}
    for subset in itertools.combinations(range(n), k):
        out[tuple(int(v in subset) for v in range(n))] = Fraction(1)
    return Polynomial._raw(n, out)


def complete_homogeneous(k: int, n: int) -> Polynomial:
    if k < 0:
        raise ValueError("degree must be non-negative")
    return Polynomial._raw(n, {e: Fraction(1) for e in compositions(k, n)})


def symmetric_poly(kind: str, k: int, n: int) -> Polynomial:
    if kind in ("complete", "h"):
        return complete_homogeneous(k, n)
    if kind in ("elementary", "e"):
        return elementary_symmetric(k, n)
    raise ValueError(f"unknown symmetric polynomial kind {kind!r}")


def polarize(f: Polynomial, t: int, k: int) -> Polynomial:
    """Replace t^b by e_b(t_1..t_k) / binom(k, b).

    The k new variables occupy slots t .. t+k-1; later variables shift right.
    """
    if not 0 <= t < f.nvars:
        raise IndexError("polarisation variable out of range")
    if f.degrees()[t] > k:
        raise ValueError(f"degree in variable {t} exceeds k={k}")
    n_out = f.nvars - 1 + k
    out: dict[Exponent, Fraction] = {}
    for exp, c in f.terms.items():
        b = exp[t]
        head, tail = exp[:t], exp[t + 1 :]
        weight = c / math.comb(k, b)
        for subset in itertools.combinations(range(k), b):
            e = head + tuple(int(v in subset) for v in range(k)) + tail
            out[e] = out.get(e, 0) + weight
    return Polynomial._raw(n_out, out)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g, raising ArithmeticError if g does not divide f."""
    f._check(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_g = max(g.terms)
    lc_g = g.terms[lead_g]
    rem = dict(f.terms)
    quot: dict[Exponent, Fraction] = {}
    while rem:
        lead = max(rem)
        if not leq(lead_g, lead):
            raise ArithmeticError("division is not exact")
        q_exp = tuple(a - b for a, b in zip(lead, lead_g))
        q_c = rem[lead] / lc_g
        quot[q_exp] = q_c
        for e, c in g.terms.items():
            ee = tuple(a + b for a, b in zip(e, q_exp))
            v = rem.get(ee, 0) - q_c * c
            if v:
                rem[ee] = v
            else:
                rem.pop(ee, None)
    return Polynomial._raw(f.nvars, quot)
