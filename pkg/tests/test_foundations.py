from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mfquant.foundations import (ContextMismatch, MissingAssignment, Poly, QMatrix, VarId,
                                 evaluate, inverse, jacobian_rank_at, min_degree_component,
                                 partial_derivative, poly_arith, rank, rank_kernel, span_rank,
                                 substitute)
from mfquant.liealg import bracket_matrix, minimal_setup

x, y = Poly.var(0), Poly.var(1)
X, Y = VarId(1, 0), VarId(1, 1)


def test_cancellation():
    assert poly_arith(x + y, x - y, "add") == x.scale(2)


def test_annihilator():
    assert poly_arith(x, Poly({}), "mul") == Poly({})
    assert not (x * 0)


def test_binomial_square():
    p = (x + y) ** 2
    assert p == x * x + x * y * 2 + y * y
    assert len(p.terms) == 3


def test_scale_op_and_unknown():
    assert poly_arith(x, 3, "scale") == x * 3
    with pytest.raises(ValueError):
        poly_arith(x, y, "div")


def test_partial_derivative():
    assert partial_derivative(x * x * y, X) == x * y * 2
    assert partial_derivative(y ** 3, X) == Poly({})


def test_partial_derivative_of_symbol():
    ge = minimal_setup(3).ge
    v = lambda l: Poly.var(ge.index(l), algebra=ge)
    s = v("e11") * v("e32") - v("e31") * v("e12")
    assert partial_derivative(s, VarId(1, ge.index("e11"))) == v("e32")


def test_evaluate():
    assert evaluate(x * x * y, {X: 2, Y: 3}) == 12
    p = x * y + x * 5 + Fraction(7, 3)
    assert evaluate(p, {X: 0, Y: 0}) == p.constant_term() == Fraction(7, 3)
    with pytest.raises(MissingAssignment):
        evaluate(x * y, {X: 1})


def test_min_degree_component():
    p = x * 3 + x * x * y
    assert min_degree_component(p) == x * 3
    h = x * y + y * y
    assert min_degree_component(h) == h
    with pytest.raises(ValueError):
        min_degree_component(Poly({}))


def test_context_mismatch():
    g3, g4 = minimal_setup(3).ge, minimal_setup(4).ge
    with pytest.raises(ContextMismatch):
        Poly.var(0, algebra=g3) + Poly.var(0, algebra=g4)


def test_substitute():
    p = x * x + y
    q = substitute(p, {X: y + 1})
    assert q == y * y + y * 3 + 1


def test_rank_kernel_trivial():
    r, k = rank_kernel(QMatrix.identity(3))
    assert (r, k) == (3, [])
    r, k = rank_kernel(QMatrix.zeros(2, 4))
    assert r == 0 and len(k) == 4


def test_kernel_vectors_are_in_kernel():
    m = QMatrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]], 4)
    r, k = rank_kernel(m)
    assert r == 2 and len(k) == 2
    for v in k:
        assert m.apply(v) == [0, 0, 0]


def test_corank_of_gl3_centralizer():
    import random
    ge = minimal_setup(3).ge
    rng = random.Random(5)
    chi = [Fraction(rng.randint(-20, 20)) for _ in range(ge.dim)]
    r, k = rank_kernel(bracket_matrix(ge, chi))
    # oracle: sympy rank of the same antisymmetric matrix
    oracle = sympy.Matrix(bracket_matrix(ge, chi).entries).rank()
    assert r == oracle
    assert ge.dim - r == 3


small = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_sympy(rows, cols, data):
    entries = [[Fraction(data.draw(small), data.draw(st.integers(1, 4))) for _ in range(cols)]
               for _ in range(rows)]
    assert rank(QMatrix(entries, cols)) == sympy.Matrix(entries).rank()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_inverse(n, data):
    entries = [[Fraction(data.draw(small)) for _ in range(n)] for _ in range(n)]
    m = QMatrix(entries, n)
    if sympy.Matrix(entries).det() == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
        return
    inv = inverse(m)
    for i in range(n):
        for j in range(n):
            s = sum(entries[i][k] * inv[k, j] for k in range(n))
            assert s == (1 if i == j else 0)


def test_jacobian_rank():
    assert jacobian_rank_at([x, y], {X: 5, Y: -1}) == 2
    assert jacobian_rank_at([x * x, x * y], {X: 0, Y: 0}) == 0
    with pytest.raises(MissingAssignment):
        jacobian_rank_at([x * y], {X: 1})


def test_span_rank():
    assert span_rank([x, y, x + y]) == 2
    assert span_rank([]) == 0


polys = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), small), max_size=5).map(
    lambda ts: sum((x ** a * y ** b * c for a, b, c in ts), Poly({})))


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly({})


@settings(max_examples=60, deadline=None)
@given(polys, polys, small, small)
def test_evaluate_is_homomorphism(a, b, u, v):
    pt = {X: u, Y: v}
    assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
    assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz(a, b):
    assert partial_derivative(a * b, X) == partial_derivative(a, X) * b + a * partial_derivative(b, X)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_min_degree_is_multiplicative(a, b):
    if a and b:
        assert min_degree_component(a * b) == min_degree_component(a) * min_degree_component(b)
