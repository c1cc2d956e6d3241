import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from volpres import io
from volpres import operators as ops
from volpres.corpus import FAMILIES, matroid_corpus, random_operator
from volpres.geometry import Polytope
from volpres.poly import Polynomial
from volpres.suites import sample_emissions


@st.composite
def polys(draw):
    n = draw(st.integers(0, 3))
    exps = st.tuples(*([st.integers(0, 4)] * n))
    coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
    return Polynomial(n, draw(st.dictionaries(exps, coeffs, max_size=8)))


@given(polys())
def test_polynomial_roundtrip(f):
    text = io.dumps(io.poly_to_json(f))
    g = io.poly_from_json(json.loads(text))
    assert g == f
    assert io.dumps(io.poly_to_json(g)) == text


def test_polynomial_format():
    f = Polynomial(3, {(2, 0, 1): Fraction(3, 2), (0, 1, 0): Fraction(6, 4)})
    assert io.poly_to_json(f) == {
        "nvars": 3,
        "terms": [{"coeff": "3/2", "exp": [0, 1, 0]}, {"coeff": "3/2", "exp": [2, 0, 1]}],
    }


@pytest.mark.parametrize(
    "data",
    [
        {"nvars": 1, "terms": [{"coeff": "1", "exp": [1]}, {"coeff": "2", "exp": [1]}]},
        {"nvars": 2, "terms": [{"coeff": "1", "exp": [1]}]},
        {"nvars": 1, "terms": [{"coeff": 0.5, "exp": [1]}]},
        {"nvars": 1, "terms": [{"coeff": "1/0", "exp": [1]}]},
        {"nvars": 1, "terms": [{"coeff": "1", "exp": [-1]}]},
        {"terms": []},
    ],
)
def test_polynomial_errors(data):
    with pytest.raises(io.FormatError):
        io.poly_from_json(data)


def test_integer_coefficients_accepted():
    f = io.poly_from_json({"nvars": 1, "terms": [{"coeff": 3, "exp": [2]}]})
    assert f.coeff((2,)) == 3


def test_operator_roundtrip():
    rng = random.Random(4)
    for family in FAMILIES:
        T = random_operator(rng, family, n_max=2, k_max=2)
        again = io.operator_from_json(json.loads(io.dumps(io.operator_to_json(T))))
        assert again == T
        assert io.operator_from_json(io.builtin_to_json(T)) == T


def test_builtin_shorthand():
    T = io.operator_from_json({"builtin": "creation", "params": {"kappa": [1, 1], "a": "1", "i": 0, "j": 1}})
    assert T == ops.creation(1, 0, 1, (1, 1))
    with pytest.raises(ValueError):
        io.operator_from_json({"builtin": "creation", "params": {"kappa": [1, 1], "a": 0.5, "i": 0, "j": 1}})


def test_operator_shift_violation():
    data = {
        "kappa": [1],
        "shift": 0,
        "images": [
            {"alpha": [0], "poly": {"nvars": 1, "terms": [{"coeff": "1", "exp": [0]}]}},
            {"alpha": [1], "poly": {"nvars": 1, "terms": [{"coeff": "1", "exp": [3]}]}},
        ],
    }
    with pytest.raises(ops.OperatorError) as err:
        io.operator_from_json(data)
    assert err.value.alpha == (1,)


def test_polytope_roundtrip():
    P = Polytope.from_points([(0, 0), ("3/2", 0), (0, "1/3")])
    data = io.polytope_to_json(P)
    assert io.polytope_from_json(data) == P
    assert io.polytopes_from_json({"polytopes": [data, data]}) == [P, P]
    with pytest.raises(io.FormatError):
        io.polytopes_from_json([])


def test_matroid_formats():
    U23 = matroid_corpus()["U23"]
    data = io.matroid_to_json(U23)
    assert data == {"n": 3, "r": 2, "bases": [[1, 2], [1, 3], [2, 3]]}
    assert io.matroid_from_json(data) == U23
    vec = {"vectors": {"d": 2, "columns": [["1", "0"], ["0", "1"], ["1", "1"]]}}
    assert io.matroid_from_json(vec) == U23
    with pytest.raises(io.FormatError):
        io.matroid_from_json({"n": 3, "r": 1, "bases": [[1, 2]]})
    with pytest.raises(io.FormatError):
        io.matroid_from_json({"n": 4, "bases": [[1, 2], [3, 4]]})


def test_emissions_byte_stable():
    assert sample_emissions(3) == sample_emissions(3)
    assert all(doc.endswith("\n") for doc in sample_emissions(3))
