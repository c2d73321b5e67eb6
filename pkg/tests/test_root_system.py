from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from borelrange.errors import DimensionError, InvalidRankError
from borelrange.root_system import (Kind, eps_to_simple, eps_to_simple_matrix,
                                    is_dominant, is_dominant_regular,
                                    make_root_datum, rho_simple_coeffs,
                                    simple_to_eps, weight_from_json,
                                    weight_to_json)

F = Fraction
KINDS = ["A", "C", "D"]


def solve_simple(datum, w):
    """Oracle: solve sum x_i alpha_i = w by exact Gaussian elimination."""
    A = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in a]
                      for a in datum.simple_roots]).T
    b = sympy.Matrix([sympy.Rational(F(c).numerator, F(c).denominator) for c in w])
    if datum.kind is Kind.A:
        b = b - sympy.ones(len(w), 1) * (sum(b) / len(w))
        # overdetermined but consistent: drop the last equation
        A, b = A[:-1, :], b[:-1, :]
    x = A.LUsolve(b)
    return tuple(F(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in x)


def test_d4_data():
    d = make_root_datum("D", 4)
    e = lambda *c: tuple(F(x) for x in c)
    assert d.simple_roots == (e(1, -1, 0, 0), e(0, 1, -1, 0), e(0, 0, 1, -1), e(0, 0, 1, 1))
    assert d.rho == e(3, 2, 1, 0)


def test_c3_data():
    d = make_root_datum("C", 3)
    assert d.simple_roots[2] == (0, 0, 2)
    assert d.rho == (3, 2, 1)


def test_d2_positive_roots():
    d = make_root_datum("D", 2)
    assert set(d.positive_roots) == {(1, -1), (1, 1)}
    assert d.rho == (1, 0)


@pytest.mark.parametrize("kind", ["D", "C"])
@pytest.mark.parametrize("n", range(2, 9))
def test_rho_closed_forms(kind, n):
    d = make_root_datum(kind, n)
    expected = tuple(range(n - 1, -1, -1)) if kind == "D" else tuple(range(n, 0, -1))
    assert d.rho == expected


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 9))
def test_rho_simple_coeffs_match_conversion(kind, n):
    d = make_root_datum(kind, n)
    assert eps_to_simple(d, d.rho) == rho_simple_coeffs(d)
    assert solve_simple(d, d.rho) == rho_simple_coeffs(d)


def test_rho_simple_coeffs_examples():
    assert rho_simple_coeffs(make_root_datum("D", 4)) == (3, 5, 3, 3)
    assert rho_simple_coeffs(make_root_datum("C", 3)) == (3, 5, 3)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 9))
def test_root_counts_and_half_sum(kind, n):
    d = make_root_datum(kind, n)
    expected = {"D": n * (n - 1), "C": n * n, "A": n * (n + 1) // 2}[kind]
    assert d.num_positive_roots == expected
    total = [sum(col) for col in zip(*d.positive_roots)]
    assert [2 * r for r in d.rho] == total


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", range(2, 7))
def test_simple_roots_are_unit_vectors_and_indecomposable(kind, n):
    d = make_root_datum(kind, n)
    pos = set(d.positive_roots)
    for j, alpha in enumerate(d.simple_roots):
        assert alpha in pos
        assert eps_to_simple(d, alpha) == tuple(int(i == j) for i in range(n))
        assert simple_to_eps(d, [int(i == j) for i in range(n)]) == alpha
        for beta in d.positive_roots:
            rest = tuple(a - b for a, b in zip(alpha, beta))
            assert rest not in pos


@pytest.mark.parametrize("kind", KINDS)
def test_positive_roots_have_nonnegative_integer_coords(kind):
    d = make_root_datum(kind, 5)
    for beta in d.positive_roots:
        x = eps_to_simple(d, beta)
        assert all(c >= 0 and c.denominator == 1 for c in x)


def test_eps_to_simple_example():
    d = make_root_datum("D", 4)
    assert eps_to_simple(d, (0, 3, 2, 1)) == (0, 3, 2, 3)
    assert solve_simple(d, (0, 3, 2, 1)) == (0, 3, 2, 3)


@pytest.mark.parametrize("kind", KINDS)
def test_matrix_matches_function(kind):
    d = make_root_datum(kind, 4)
    E = eps_to_simple_matrix(d)
    w = tuple(F(k, 2) for k in range(d.dim))
    assert tuple(sum(a * b for a, b in zip(row, w)) for row in E) == eps_to_simple(d, w)


half_ints = st.integers(-20, 20).map(lambda k: F(k, 2))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(KINDS), st.integers(3, 7), st.data())
def test_round_trip(kind, n, data):
    d = make_root_datum(kind, n)
    x = tuple(data.draw(st.lists(half_ints, min_size=n, max_size=n)))
    assert eps_to_simple(d, simple_to_eps(d, x)) == x
    w = tuple(data.draw(st.lists(half_ints, min_size=d.dim, max_size=d.dim)))
    back = simple_to_eps(d, eps_to_simple(d, w))
    if kind == "A":
        mean = sum(w, F(0)) / len(w)
        w = tuple(c - mean for c in w)
    assert back == w


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KINDS), st.integers(2, 6), st.data())
def test_conversion_matches_linear_solve(kind, n, data):
    d = make_root_datum(kind, n)
    w = tuple(data.draw(st.lists(half_ints, min_size=d.dim, max_size=d.dim)))
    assert eps_to_simple(d, w) == solve_simple(d, w)


def test_dominance():
    d = make_root_datum("D", 4)
    assert is_dominant_regular(d, d.rho)
    assert not is_dominant_regular(d, (0, 3, 2, 1))
    assert is_dominant(d, (0, 3, 2, 1))
    assert is_dominant(d, (0, 0, 0, 0))
    assert not is_dominant_regular(d, (0, 0, 0, 0))


def test_fundamental_weights_type_a_sum_zero():
    d = make_root_datum("A", 3)
    assert d.fundamental_weights[0] == (F(3, 4), F(-1, 4), F(-1, 4), F(-1, 4))
    for j, phi in enumerate(d.fundamental_weights):
        assert sum(phi) == 0
        # dual to the simple roots under the standard pairing
        assert [sum(a * b for a, b in zip(phi, alpha)) for alpha in d.simple_roots] == \
            [int(i == j) for i in range(3)]


@pytest.mark.parametrize("kind,n", [("D", 1), ("C", 0), ("A", 0), ("D", -3)])
def test_invalid_rank(kind, n):
    with pytest.raises(InvalidRankError):
        make_root_datum(kind, n)


def test_dimension_mismatch():
    d = make_root_datum("C", 3)
    with pytest.raises(DimensionError):
        eps_to_simple(d, (1, 2))
    with pytest.raises(DimensionError):
        simple_to_eps(d, (1, 2, 3, 4))


def test_json_round_trip():
    w = (F(1, 2), F(-3, 4), F(2))
    assert weight_to_json(w) == ["1/2", "-3/4", "2"]
    assert weight_from_json(weight_to_json(w)) == w
