"""Brute-force eigenvalue-sign oracle for cross-checking the certifier.

The characteristic polynomial is obtained by evaluating det(t I - H) at
n + 1 integer points (Bareiss elimination) and interpolating, then positive
roots are counted with multiplicity by square-free decomposition and Sturm
bisection.  Nothing here is shared with :mod:`volpres.lorentzian`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import det, solve

UPoly = list[Fraction]  # coefficients, lowest degree first


def _trim(p: UPoly) -> UPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _eval(p: UPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p: UPoly) -> UPoly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = _trim(r)
    return _trim(q), r


def _gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return [c / a[-1] for c in a] if a else a


def char_poly_by_interpolation(H: Sequence[Sequence[Fraction]]) -> UPoly:
    n = len(H)
    pts = list(range(n + 1))
    vals = []
    for t in pts:
        M = [[(Fraction(t) if i == j else 0) - Fraction(H[i][j]) for j in range(n)] for i in range(n)]
        vals.append(Fraction(det(M)))
    V = [[Fraction(t) ** k for k in range(n + 1)] for t in pts]
    return _trim(solve(V, vals))


def squarefree_parts(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: p = c * prod a_i^i with square-free, pairwise coprime a_i."""
    p = _trim(p)
    out = []
    a = _gcd(p, _deriv(p))
    b = _divmod(p, a)[0]
    c = _divmod(_deriv(p), a)[0]
    d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
    i = 1
    while len(b) > 1:
        g = _gcd(b, d)
        if len(g) > 1:
            out.append((g, i))
        b = _divmod(b, g)[0]
        c = _divmod(d, g)[0]
        d = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
        i += 1
    return out


def _zip_pad(a: UPoly, b: UPoly):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _sturm_chain(p: UPoly) -> list[UPoly]:
    chain = [_trim(p), _deriv(p)]
    while chain[-1]:
        r = _divmod(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    return chain[:-1]


def _sign_changes_at(chain: list[UPoly], x: Fraction) -> int:
    vals = [v for v in (_eval(q, x) for q in chain) if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))


def _isolate(chain, lo: Fraction, hi: Fraction, depth: int = 0) -> int:
    """Count distinct roots in (lo, hi] by bisecting until each piece holds at most one."""
    count = _sign_changes_at(chain, lo) - _sign_changes_at(chain, hi)
    if count <= 1 or depth > 200:
        return count
    mid = (lo + hi) / 2
    return _isolate(chain, lo, mid, depth + 1) + _isolate(chain, mid, hi, depth + 1)


def positive_root_count(p: UPoly) -> int:
    """Positive real roots of ``p`` counted with multiplicity."""
    total = 0
    for part, mult in squarefree_parts(p):
        bound = 1 + max(abs(c / part[-1]) for c in part[:-1]) if len(part) > 1 else Fraction(1)
        total += mult * _isolate(_sturm_chain(part), Fraction(0), bound)
    return total


def oracle_positive_eigenvalues(H: Sequence[Sequence[Fraction]]) -> int:
    if not H:
        return 0
    return positive_root_count(char_poly_by_interpolation(H))
