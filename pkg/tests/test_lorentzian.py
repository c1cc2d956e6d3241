import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from volpres.corpus import random_lorentzian_candidate, random_linear_product
from volpres.lorentzian import (
    certify_lorentzian,
    charpoly,
    hessian,
    hessian_positive_count,
    hessian_slices,
    is_m_convex_support,
    positive_eigenvalue_count,
)
from volpres.oracles import oracle_positive_eigenvalues
from volpres.poly import Polynomial, derivative, elementary_symmetric, substitute_linear

x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)


def sympy_positive_count(H):
    """Positive eigenvalues with multiplicity, via sympy's exact real-root isolation."""
    lam = sympy.Symbol("lam")
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in H])
    return sum(1 for r in sympy.real_roots(M.charpoly(lam).as_expr(), lam) if r > 0)


# -- M-convex support -------------------------------------------------------


def test_m_convex_examples():
    assert is_m_convex_support(x * x + x * y + y * y).certified
    rep = is_m_convex_support(x * x + y * y)
    assert not rep.certified
    assert {tuple(rep.witness["alpha"]), tuple(rep.witness["beta"])} == {(2, 0), (0, 2)}
    assert is_m_convex_support(x**3 * y).certified


def test_m_convex_needs_homogeneous():
    with pytest.raises(ValueError):
        is_m_convex_support(x + y * y)


# -- Hessian counts ---------------------------------------------------------


def test_hessian_count_examples():
    e2 = elementary_symmetric(2, 3)
    assert hessian_positive_count(e2, (0, 0, 0)) == 1
    H = hessian(e2)
    assert charpoly(H) == [1, 0, -3, -2]
    assert hessian_positive_count(x * x + y * y, (0, 0)) == 2
    X = Polynomial.variable(0, 1)
    assert hessian_positive_count(X * X, (0,)) == 1


def test_hessian_count_wrong_order():
    with pytest.raises(ValueError):
        hessian_positive_count(x**3, (0, 0))


def test_zero_slice_passes():
    assert hessian_positive_count(x**3, (0, 1)) == 0


def test_charpoly_strips_zero_roots():
    H = [[Fraction(0)] * 3 for _ in range(3)]
    assert positive_eigenvalue_count(H) == 0
    H[0][0] = Fraction(5)
    assert positive_eigenvalue_count(H) == 1


def _random_symmetric(rng, n):
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            H[i][j] = H[j][i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return H


def test_counts_match_sympy():
    rng = random.Random(5)
    for _ in range(60):
        H = _random_symmetric(rng, rng.randint(1, 4))
        want = sympy_positive_count(H)
        assert positive_eigenvalue_count(H) == want
        assert oracle_positive_eigenvalues(H) == want


@given(st.integers(0, 10**6))
def test_count_permutation_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    H = _random_symmetric(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[H[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    assert positive_eigenvalue_count(P) == positive_eigenvalue_count(H)


# -- full certification -----------------------------------------------------


def test_certify_examples():
    x3 = [Polynomial.variable(i, 3) for i in range(3)]
    assert certify_lorentzian(x3[0] * x3[1] + x3[0] * x3[2] + x3[1] * x3[2]).certified
    rep = certify_lorentzian(x * x + y * y)
    assert rep.verdict == "refuted" and rep.stage == "hessian"
    assert rep.witness["positive_eigenvalues"] == 2
    assert certify_lorentzian((x + y) ** 3).certified


def test_certify_negative_coefficient():
    rep = certify_lorentzian(x * x - x * y + y * y)
    assert rep.stage == "coefficient-sign" and rep.witness["alpha"] == [1, 1]


def test_support_stage_reached():
    # x^3 + y^3: slices 6x and 6y have one positive eigenvalue each, the support has gaps
    rep = certify_lorentzian(x**3 + y**3)
    assert rep.stage == "support-M-convexity" and not rep.certified


def test_certify_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        certify_lorentzian(x + y * y)


def test_low_degree_and_zero():
    assert certify_lorentzian(Polynomial.zero(2)).certified
    assert certify_lorentzian(Polynomial.constant(3, 2)).certified
    assert certify_lorentzian(x.scale(2) + y).certified


def test_report_json():
    data = certify_lorentzian(x * x + y * y).to_json()
    assert data["verdict"] == "refuted" and data["witness"]["hessian"] == [["2", "0"], ["0", "2"]]


@settings(max_examples=80)
@given(st.integers(1, 3), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=3))
def test_monomials_certify(c, exps):
    for e in exps:
        assert certify_lorentzian(Polynomial.monomial(e, c)).certified


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_products_of_certified_certify(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = random_linear_product(rng, n, rng.randint(0, 2))
    g = random_lorentzian_candidate(rng, (2,) * n)
    if certify_lorentzian(f) and certify_lorentzian(g):
        assert certify_lorentzian(f * g).certified


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_nonnegative_substitution_preserves_certification(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    f = random_lorentzian_candidate(rng, (2,) * n)
    if not certify_lorentzian(f):
        return
    m = rng.randint(1, 3)
    A = [[rng.randint(0, 3) for _ in range(m)] for _ in range(n)]
    assert certify_lorentzian(substitute_linear(f, A)).certified


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_certifier_matches_oracle_on_polynomials(seed):
    # n <= 4, d <= 4: recompute the verdict with the independent eigen-sign oracle
    rng = random.Random(seed)
    n, d = rng.randint(1, 4), rng.randint(2, 4)
    layer = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]
    chosen = rng.sample(layer, rng.randint(1, min(len(layer), 6)))
    f = Polynomial(n, {e: Fraction(rng.randint(1, 5), rng.randint(1, 3)) for e in chosen})
    if rng.random() < 0.5:
        f = random_linear_product(rng, n, d)
    slices_ok = all(
        oracle_positive_eigenvalues(hessian(derivative(f, a))) <= 1 for a in hessian_slices(f) if derivative(f, a)
    )
    expected = slices_ok and is_m_convex_support(f).certified
    assert certify_lorentzian(f).certified == expected
