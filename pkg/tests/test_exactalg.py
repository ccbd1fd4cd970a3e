from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cda.exactalg import (
    GF,
    QQ,
    ExactMatrix,
    ModP,
    NonIntegerEntries,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
    determinant,
    field_from_json,
    integer_matrix,
    inverse,
    is_unimodular,
    kernel_basis,
    rank,
    signature_symmetric,
    solve,
)
from cda.lattice import Symbol, gram_s_basis


def to_sympy(m: ExactMatrix):
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(str(m[i, j])))


small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_n=5, square=False):
    r = draw(st.integers(1, max_n))
    c = r if square else draw(st.integers(1, max_n))
    return ExactMatrix([[draw(small) for _ in range(c)] for _ in range(r)])


@st.composite
def symmetric_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(small)
    return ExactMatrix(a)


# examples -------------------------------------------------------------------


def test_rank_examples():
    assert rank(ExactMatrix.identity(2)) == 2
    assert rank(ExactMatrix.zeros(3, 4)) == 0
    assert rank(ExactMatrix([[1, 0], [1, 1]])) == 2


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    (v,) = kernel_basis(ExactMatrix([[1, 1]]))
    assert v[0] == -v[1] != 0
    for l1, l2 in [(0, 1), (2, -3), (Fraction(1, 2), 5)]:
        assert kernel_basis(ExactMatrix([[1, l1], [1, l2]])) == []


def test_inverse_examples():
    assert inverse(ExactMatrix.identity(3)) == ExactMatrix.identity(3)
    assert inverse(ExactMatrix.diagonal([2, 3])) == ExactMatrix.diagonal([Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(SingularMatrix):
        inverse(ExactMatrix([[1, 2], [2, 4]]))


def test_signature_examples():
    assert signature_symmetric(ExactMatrix.diagonal([1, -1, 0])) == (1, 1, 1)
    assert signature_symmetric(ExactMatrix.zeros(2, 2)) == (0, 2, 0)
    g = gram_s_basis(Symbol.simply_laced([2, 3, 6])).gram
    assert g.rows == 10
    assert signature_symmetric(g + g.T) == (8, 2, 0)


def test_signature_needs_symmetric():
    with pytest.raises(NotSymmetric):
        signature_symmetric(ExactMatrix([[0, 1], [0, 0]]))


def test_unimodular_examples():
    assert is_unimodular(ExactMatrix.identity(4))
    assert not is_unimodular(ExactMatrix.diagonal([2, 1]))
    assert is_unimodular(ExactMatrix([[1, 1], [0, -1]]))
    with pytest.raises(NonIntegerEntries):
        is_unimodular(ExactMatrix([[Fraction(1, 2)]]))


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        ExactMatrix([[1, 2]]) @ ExactMatrix([[1, 2]])
    with pytest.raises(ShapeMismatch):
        ExactMatrix([[1, 2]]) + ExactMatrix([[1], [2]])


def test_json_round_trip():
    m = ExactMatrix([[Fraction(1, 3), -2], [0, 7]])
    d = m.to_json()
    assert d == {"rows": 2, "cols": 2, "entries": [["1/3", "-2"], ["0", "7"]]}
    assert ExactMatrix.from_json(d) == m


def test_integer_matrix_and_power():
    m = integer_matrix([[2, 1], [1, 1]])
    assert m ** 2 == m @ m
    assert m ** -1 == inverse(m)
    assert m ** 0 == ExactMatrix.identity(2)


# prime fields ----------------------------------------------------------------


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(3) + F(5) == F(1)
    assert F(3) * F(5) == F(1)
    assert F(1) / F(3) == F(5)
    assert F("1/2") == F(4)
    assert -F(2) == F(5)
    assert not F(7)
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)
    assert isinstance(F(3), ModP)


def test_field_from_json():
    assert field_from_json("Q") is QQ
    assert field_from_json({"Fp": 5}) == GF(5)
    assert field_from_json("Fp:11") == GF(11)
    with pytest.raises(ValueError):
        field_from_json("Fp:6")
    with pytest.raises(ValueError):
        field_from_json("R")


def test_mod_p_rank_drops():
    # det = 7, singular only in characteristic 7
    m = [[1, 2], [3, 13]]
    assert rank(ExactMatrix(m, GF(7))) == 1
    assert rank(ExactMatrix(m, GF(5))) == 2
    assert rank(ExactMatrix(m)) == 2


@given(st.lists(st.lists(st.integers(0, 10), min_size=3, max_size=3), min_size=1, max_size=4))
def test_mod_p_rank_matches_sympy(rows):
    m = ExactMatrix(rows, GF(11))
    # sympy oracle: rank of the reduced matrix over GF(11) via its own elimination
    sm = sympy.Matrix(rows)
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF as SGF

    dm = DomainMatrix.from_Matrix(sm).convert_to(SGF(11))
    assert rank(m) == dm.rank()


# properties against sympy -------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@settings(max_examples=60, deadline=None)
@given(int_matrices(square=True))
def test_det_matches_sympy(m):
    assert Fraction(str(determinant(m))) == Fraction(str(to_sympy(m).det()))


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_kernel_is_kernel_of_right_dimension(m):
    ker = kernel_basis(m)
    assert len(ker) == len(to_sympy(m).nullspace())
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert rank(ExactMatrix.from_columns(ker)) == len(ker)


@settings(max_examples=60, deadline=None)
@given(int_matrices(square=True))
def test_inverse_or_singular(m):
    if to_sympy(m).det() == 0:
        with pytest.raises(SingularMatrix):
            inverse(m)
    else:
        n = m.rows
        assert m @ inverse(m) == ExactMatrix.identity(n)
        assert inverse(m) @ m == ExactMatrix.identity(n)


@settings(max_examples=40, deadline=None)
@given(int_matrices(square=True), st.lists(small, min_size=5, max_size=5))
def test_solve(m, b):
    b = b[: m.rows]
    x = solve(m, b)
    if x is None:
        assert to_sympy(m).rank() < to_sympy(m.hstack(ExactMatrix.from_columns([b]))).rank()
    else:
        assert list(m.apply(x)) == [QQ(v) for v in b]


def descartes_inertia(m: ExactMatrix):
    """Independent oracle: for a real-rooted characteristic polynomial the
    number of positive roots equals the sign changes of its coefficients."""
    x = sympy.symbols("x")
    p = sympy.Poly(to_sympy(m).charpoly(x).as_expr(), x)
    zero = 0
    while p.degree() > 0 and p.eval(0) == 0:
        p = sympy.Poly(sympy.cancel(p.as_expr() / x), x)
        zero += 1

    def changes(poly):
        cs = [c for c in poly.all_coeffs() if c != 0]
        return sum(1 for a, b in zip(cs, cs[1:]) if a * b < 0)

    plus = changes(p)
    minus = changes(sympy.Poly(p.as_expr().subs(x, -x), x))
    return plus, zero, minus


@settings(max_examples=60, deadline=None)
@given(symmetric_matrices())
def test_signature_matches_descartes(m):
    assert signature_symmetric(m) == descartes_inertia(m)


@settings(max_examples=40, deadline=None)
@given(symmetric_matrices(), int_matrices(square=True))
def test_signature_congruence_invariant(g, q):
    if q.rows != g.rows or determinant(q) == 0:
        return
    assert signature_symmetric(q.T @ g @ q) == signature_symmetric(g)


@settings(max_examples=40, deadline=None)
@given(int_matrices(square=True))
def test_unimodular_iff_det_pm1(m):
    assert is_unimodular(m) == (abs(to_sympy(m).det()) == 1)
