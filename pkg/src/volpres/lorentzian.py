"""Exact certification of the Lorentzian property.

Lorentzian is a necessary condition for (denormalised) volume polynomials, so a
refutation is a proof of non-membership while a certificate only means
"consistent with being a volume polynomial".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Exponent, Polynomial, derivative

CERTIFIED = "certified"
REFUTED = "refuted"


@dataclass(frozen=True)
class CertReport:
    verdict: str
    stage: str
    witness: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def __bool__(self) -> bool:
        return self.certified

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "stage": self.stage, "witness": self.witness, "detail": self.detail}


def _require_homogeneous(f: Polynomial) -> int:
    if not f.is_homogeneous():
        raise ValueError("Lorentzian certification needs a homogeneous polynomial")
    return f.degree if f.degree is not None else 0


def is_m_convex_support(f: Polynomial) -> CertReport:
    """Exchange property on supp(f): for a, b and a_i > b_i some j has a_j < b_j and a - e_i + e_j in supp(f)."""
    _require_homogeneous(f)
    supp = f.support()
    members = set(supp)
    n = f.nvars
    for a in supp:
        for b in supp:
            if a == b:
                continue
            for i in range(n):
                if a[i] <= b[i]:
                    continue
                ok = False
                for j in range(n):
                    if a[j] < b[j]:
                        e = list(a)
                        e[i] -= 1
                        e[j] += 1
                        if tuple(e) in members:
                            ok = True
                            break
                if not ok:
                    return CertReport(
                        REFUTED,
                        "support-M-convexity",
                        {"alpha": list(a), "beta": list(b), "i": i},
                        f"no exchange for alpha={a}, beta={b} at i={i}",
                    )
    return CertReport(CERTIFIED, "support-M-convexity")


def hessian(q: Polynomial) -> list[list[Fraction]]:
    """Hessian of a polynomial of degree <= 2 (constant matrix)."""
    n = q.nvars
    H = [[Fraction(0)] * n for _ in range(n)]
    for exp, c in q.terms.items():
        if sum(exp) != 2:
            continue
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i][i] += 2 * c
        else:
            H[i][j] += c
            H[j][i] += c
    return H


def charpoly(H: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Coefficients of det(x I - H), highest degree first (Faddeev-LeVerrier)."""
    n = len(H)
    A = [[Fraction(x) for x in row] for row in H]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        AMk = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AMk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def sign_variations(coeffs: Sequence[Fraction]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def positive_eigenvalue_count(H: Sequence[Sequence[Fraction]]) -> int:
    """Number of positive eigenvalues of a symmetric rational matrix, with multiplicity.

    The characteristic polynomial of a symmetric matrix is real-rooted, so
    Descartes' rule of signs is exact.
    """
    coeffs = charpoly(H)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()  # strip factors of x
    return sign_variations(coeffs)


def hessian_positive_count(f: Polynomial, alpha: Sequence[int]) -> int:
    """Positive eigenvalues of the Hessian of d^alpha f, where |alpha| = deg f - 2."""
    d = _require_homogeneous(f)
    if f and sum(alpha) != d - 2:
        raise ValueError(f"|alpha| must be deg f - 2 = {d - 2}, got {sum(alpha)}")
    q = derivative(f, alpha)
    if not q:
        return 0
    return positive_eigenvalue_count(hessian(q))


def hessian_slices(f: Polynomial) -> list[Exponent]:
    """Exponents alpha with |alpha| = deg f - 2 and d^alpha f possibly non-zero, sorted."""
    out = set()
    n = f.nvars
    for beta in f.terms:
        for i in range(n):
            if not beta[i]:
                continue
            for j in range(i, n):
                e = list(beta)
                e[i] -= 1
                if e[j] <= 0:
                    continue
                e[j] -= 1
                out.add(tuple(e))
    return sorted(out)


def certify_lorentzian(f: Polynomial) -> CertReport:
    """Certify or refute that the homogeneous polynomial ``f`` is Lorentzian."""
    d = _require_homogeneous(f)
    for exp, c in f.items():
        if c < 0:
            return CertReport(
                REFUTED,
                "coefficient-sign",
                {"alpha": list(exp), "coeff": str(c)},
                f"negative coefficient {c} at {exp}",
            )
    if d <= 1:
        return CertReport(CERTIFIED, "coefficient-sign", detail=f"degree {d}")
    # Hessian slices run before the support test so that refutations carry
    # a spectral witness whenever one exists; the verdict does not depend on order.
    for alpha in hessian_slices(f):
        q = derivative(f, alpha)
        if not q:
            continue
        H = hessian(q)
        count = positive_eigenvalue_count(H)
        if count > 1:
            return CertReport(
                REFUTED,
                "hessian",
                {
                    "alpha": list(alpha),
                    "positive_eigenvalues": count,
                    "hessian": [[str(x) for x in row] for row in H],
                },
                f"Hessian of d^{alpha} f has {count} positive eigenvalues",
            )
    support = is_m_convex_support(f)
    if not support:
        return support
    return CertReport(CERTIFIED, "hessian", detail=f"degree {d}, all slices pass")
