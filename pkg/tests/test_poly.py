from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volpres.poly import (
    Polynomial,
    antiderivative,
    apply_diff_operator,
    as_rat,
    complete_homogeneous,
    denormalize,
    derivative,
    diagonalize,
    divide_exact,
    drop_variables,
    dual,
    elementary_symmetric,
    factorial_vec,
    normalize,
    partial_derivative,
    polarize,
    substitute_linear,
    symmetric_poly,
    truncate_lower,
    truncate_upper,
)

x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)


def P(n, terms):
    return Polynomial(n, terms)


def x3(i):
    return Polynomial.variable(i, 3)


# -- strategies -------------------------------------------------------------

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def kappa_and_poly(draw, n_max=3, k_max=3, nonneg=False):
    n = draw(st.integers(1, n_max))
    kappa = tuple(draw(st.integers(0, k_max)) for _ in range(n))
    cells = st.tuples(*(st.integers(0, k) for k in kappa))
    coeff = st.fractions(min_value=0 if nonneg else -20, max_value=20, max_denominator=12)
    terms = draw(st.dictionaries(cells, coeff, max_size=6))
    return kappa, Polynomial(n, terms)


@st.composite
def homogeneous_poly(draw, n_max=3, d_max=3):
    n = draw(st.integers(1, n_max))
    d = draw(st.integers(0, d_max))
    exps = [e for e in _comps(d, n)]
    chosen = draw(st.lists(st.sampled_from(exps), min_size=1, max_size=len(exps), unique=True))
    return Polynomial(n, {e: draw(rats.filter(bool)) for e in chosen})


def _comps(d, n):
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in _comps(d - a, n - 1):
            yield (a,) + rest


# -- construction and arithmetic -------------------------------------------


def test_as_rat_rejects_floats():
    with pytest.raises(TypeError):
        as_rat(0.5)
    assert as_rat("3/6") == Fraction(1, 2)


def test_ring_examples():
    assert (x + y) * (x + y) == P(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    f = x * y + x
    assert f * 1 == f
    e2 = elementary_symmetric(2, 3)
    assert e2 * x3(0) == P(3, {(2, 1, 0): 1, (2, 0, 1): 1, (1, 1, 1): 1})


def test_zero_polynomial_conventions():
    z = Polynomial.zero(2)
    assert z.degree is None
    assert z.is_homogeneous() and z.is_homogeneous(5)
    assert not z


def test_zero_coefficients_dropped():
    f = P(2, {(1, 0): 1, (0, 1): 0})
    assert f.support() == [(1, 0)]
    assert x - x == Polynomial.zero(2)


def test_mismatched_arity_rejected():
    with pytest.raises(ValueError):
        x + Polynomial.variable(0, 3)


def test_evaluate():
    assert (x * x + y).evaluate([Fraction(1, 2), 3]) == Fraction(13, 4)


# -- substitution and derivatives ------------------------------------------


def test_substitute_linear_examples():
    X = Polynomial.variable(0, 1)
    assert substitute_linear(x * y, [[1], [1]]) == X * X
    assert substitute_linear(X * X, [[2]]) == (X * X).scale(4)
    assert substitute_linear(x + y, [[1, 1], [0, 1]]) == P(2, {(1, 0): 1, (0, 1): 2})


def test_substitute_rejects_negative_entries():
    with pytest.raises(ValueError):
        substitute_linear(x, [[-1], [1]])
    assert substitute_linear(x, [[-1], [1]], allow_negative=True) == Polynomial.variable(0, 1).scale(-1)


def test_partial_derivative_examples():
    assert partial_derivative(x * x * y, 0) == (x * y).scale(2)
    assert partial_derivative(y**3, 0, 2) == Polynomial.zero(2)
    assert derivative(x**2 * y**2, (1, 1)) == (x * y).scale(4)


def test_apply_diff_operator_examples():
    assert apply_diff_operator(x * y, x**2 * y**2) == (x * y).scale(4)
    f = x**3 + y * x
    assert apply_diff_operator(Polynomial.constant(1, 2), f) == f
    assert apply_diff_operator(x, x * y) == y


# -- normalisation and duals ------------------------------------------------


def test_normalize_examples():
    X = Polynomial.variable(0, 1)
    assert normalize(X * X) == (X * X).scale(Fraction(1, 2))
    assert normalize(x * y) == x * y
    assert denormalize((y * y).scale(Fraction(1, 2)) + x * y) == y * y + x * y


def test_dual_examples():
    assert dual(x * y, (1, 1)) == Polynomial.constant(1, 2)
    assert dual(x * x, (2, 1)) == y
    s = x * y
    assert dual(s, (2, 2)) == x * y
    assert apply_diff_operator(s, x**2 * y**2) == dual(s, (2, 2)).scale(4)


def test_dual_depends_on_kappa_only_by_shift():
    s = x + y
    a, b = dual(s, (1, 1)), dual(s, (2, 1))
    assert a == x + y
    assert b == normalize(x * x + x * y)


def test_dual_rejects_exponents_outside_box():
    with pytest.raises(ValueError):
        dual(x * x, (1, 1))


@given(kappa_and_poly())
def test_normalize_roundtrip(data):
    _, f = data
    assert denormalize(normalize(f)) == f


@given(kappa_and_poly())
def test_double_dual_closed_form(data):
    kappa, s = data
    dd = dual(dual(s, kappa), kappa)
    for alpha, lam in s.terms.items():
        rest = tuple(k - a for k, a in zip(kappa, alpha))
        assert dd.coeff(alpha) == lam / (factorial_vec(alpha) * factorial_vec(rest))
    assert set(dd.terms) == set(s.terms)


@given(kappa_and_poly())
def test_dual_identity(data):
    kappa, s = data
    lhs = apply_diff_operator(s, Polynomial.monomial(kappa))
    assert lhs == dual(s, kappa).scale(factorial_vec(kappa))


# -- antiderivatives and truncations ---------------------------------------


def test_antiderivative_examples():
    X = Polynomial.variable(0, 1)
    assert antiderivative(X * X, (1,)) == (X**3).scale(Fraction(1, 3))
    f = x**2 + y
    assert antiderivative(f, (0, 0)) == f
    assert antiderivative(Polynomial.constant(1, 2), (1, 1)) == x * y


def test_truncation_examples():
    q = x * x + x * y + y * y
    assert truncate_lower(q, (1, 0)) == x * x + x * y
    assert truncate_upper(q, (1, 1)) == x * y
    assert truncate_upper(q, (2, 2)) == q


@given(kappa_and_poly(k_max=4), st.data())
def test_truncation_identity(data, draw):
    kappa, f = data
    gamma = tuple(draw.draw(st.integers(0, k + 1)) for k in kappa)
    assert truncate_lower(f, gamma) == antiderivative(derivative(f, gamma), gamma)


# -- diagonalisation --------------------------------------------------------


def test_diagonalize_examples():
    assert diagonalize(x * y, 0, 1) == x * x
    assert diagonalize(x + y, 0, 1) == x.scale(2)
    assert normalize(diagonalize(denormalize(x * y), 0, 1)) == (x * x).scale(Fraction(1, 2))


def test_diagonalize_compact_and_drop():
    X = Polynomial.variable(0, 1)
    assert diagonalize(x * y, 0, 1, compact=True) == X * X
    assert drop_variables(x * x, [1]) == X * X
    with pytest.raises(ValueError):
        drop_variables(x * y, [1])


# -- symmetric functions and polarisation ----------------------------------


def test_symmetric_examples():
    assert complete_homogeneous(2, 2) == x * x + x * y + y * y
    assert elementary_symmetric(2, 3) == x3(0) * x3(1) + x3(0) * x3(2) + x3(1) * x3(2)
    assert symmetric_poly("complete", 0, 4) == Polynomial.constant(1, 4)
    with pytest.raises(ValueError):
        symmetric_poly("power", 1, 2)


def test_polarize_examples():
    T = Polynomial.variable(0, 1)
    t = [Polynomial.variable(i, 2) for i in range(2)]
    assert polarize(T, 0, 2) == (t[0] + t[1]).scale(Fraction(1, 2))
    assert polarize(Polynomial.constant(1, 1), 0, 2) == Polynomial.constant(1, 2)
    assert polarize(T * T, 0, 2) == t[0] * t[1]
    with pytest.raises(ValueError):
        polarize(T**3, 0, 2)


@settings(max_examples=60)
@given(kappa_and_poly(n_max=2, k_max=2), st.data())
def test_polarize_then_restrict(data, draw):
    kappa, f = data
    t = draw.draw(st.integers(0, len(kappa) - 1))
    k = draw.draw(st.integers(f.degrees()[t] if f else 0, 3))
    g = polarize(f, t, k)
    n = f.nvars
    # new variables occupy slots t..t+k-1; send them all back to slot t
    A = []
    for slot in range(g.nvars):
        if slot < t:
            src = slot
        elif slot < t + k:
            src = t
        else:
            src = slot - k + 1
        A.append([int(c == src) for c in range(n)])
    if k == 0:
        assert g == drop_variables(f, [t])
        return
    assert substitute_linear(g, A) == f


@given(homogeneous_poly(), st.data())
def test_substitution_preserves_degree(f, draw):
    m = draw.draw(st.integers(1, 3))
    A = [[draw.draw(st.integers(0, 3)) for _ in range(m)] for _ in range(f.nvars)]
    g = substitute_linear(f, A)
    assert g.is_homogeneous(f.degree)


def test_divide_exact():
    assert divide_exact(x * x - y * y, x - y) == x + y
    with pytest.raises(ArithmeticError):
        divide_exact(x * x + y, x)
