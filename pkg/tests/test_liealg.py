import itertools
from fractions import Fraction

import numpy as np
import pytest

from mfquant.foundations import QMatrix, rank
from mfquant.liealg import (LieAlgebra, LieAxiomError, LieElement, UnsupportedRank, build_gl,
                            centralizer, form, good_grading_minimal, index_estimate,
                            minimal_setup, minimal_sl2_triple)


def el(g, spec):
    return LieElement(g, {g.index(l): Fraction(c) for l, c in spec.items()})


def test_gl_brackets():
    g2 = build_gl(2)
    assert g2.bracket(el(g2, {"e11": 1}), el(g2, {"e12": 1})) == el(g2, {"e12": 1})
    g3 = build_gl(3)
    assert g3.bracket(el(g3, {"e12": 1}), el(g3, {"e31": 1})) == el(g3, {"e32": -1})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gl_jacobi(n):
    build_gl(n).check_jacobi()


def test_unsupported_rank():
    with pytest.raises(UnsupportedRank):
        build_gl(1)
    with pytest.raises(UnsupportedRank):
        minimal_setup(1)


def test_jacobi_failure_detected():
    # [a,b]=a, [b,c]=a, [a,c]=b violates Jacobi
    with pytest.raises(LieAxiomError):
        LieAlgebra(["a", "b", "c"], {(0, 1): {0: 1}, (1, 2): {0: 1}, (0, 2): {1: 1}})


def test_antisymmetry_enforced():
    with pytest.raises(LieAxiomError):
        LieAlgebra(["a", "b"], {(0, 1): {0: 1}, (1, 0): {0: 1}})


def _span(g, elems):
    return rank(QMatrix([[e.coeffs.get(k, Fraction(0)) for k in range(g.dim)] for e in elems], g.dim))


def test_centralizer_gl3():
    g = build_gl(3)
    c = centralizer(g, el(g, {"e32": 1}))
    assert c.dim == 5
    expected = [el(g, {"e11": 1}), el(g, {"e12": 1}), el(g, {"e31": 1}), el(g, {"e32": 1}),
                el(g, {"e22": 1, "e33": 1})]
    got = [c.to_parent(c.basis_element(k)) for k in range(c.dim)]
    assert _span(g, expected) == _span(g, got) == _span(g, expected + got) == 5


def test_centralizer_of_zero_is_everything():
    g = build_gl(3)
    assert centralizer(g, LieElement(g, {})).dim == 9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_minimal_centralizer_dimension(n):
    s = minimal_setup(n)
    assert s.ge.dim == (n - 1) ** 2 + 1
    assert centralizer(s.g, s.sl2.e).dim == s.ge.dim


def test_gl4_centralizer_dim():
    g = build_gl(4)
    assert centralizer(g, el(g, {"e43": 1})).dim == 10


def test_sl2_triples():
    g = build_gl(3)
    t = minimal_sl2_triple(3, g)
    assert t.e == el(g, {"e32": 1})
    assert t.h == el(g, {"e33": 1, "e22": -1})
    assert t.f == el(g, {"e23": 1})
    g4 = build_gl(4)
    t4 = minimal_sl2_triple(4, g4)
    assert (t4.e, t4.h, t4.f) == (el(g4, {"e43": 1}), el(g4, {"e44": 1, "e33": -1}), el(g4, {"e34": 1}))
    g2 = build_gl(2)
    t2 = minimal_sl2_triple(2, g2)
    assert g2.bracket(t2.e, t2.f) == t2.h


def test_good_grading_n3():
    g = build_gl(3)
    gr = good_grading_minimal(3, g)
    deg = lambda l: gr.degrees[g.index(l)]
    assert (deg("e31"), deg("e13"), deg("e12")) == (2, -2, 0)
    for i, j in itertools.product(gr.component(2), repeat=2):
        assert not g.bracket_basis(i, j)


@pytest.mark.parametrize("n", [3, 4])
def test_ge_splits_into_degree_0_and_2(n):
    s = minimal_setup(n)
    degs = [s.grading.degree_of(s.ge.to_parent(s.ge.basis_element(k))) for k in range(s.ge.dim)]
    assert set(degs) == {0, 2}
    assert degs.count(2) == n - 1


def test_trace_form():
    g = build_gl(3)
    t = form(g, "trace")
    assert t(g.index("e12"), g.index("e21")) == 1
    assert t(g.index("e12"), g.index("e12")) == 0
    assert t.is_invariant()


def _ad_on_g0(n, x):
    """ad x restricted to g_0 as a dense numpy matrix, built from matrix units directly."""
    g0 = [(i, j) for i in range(n) for j in range(n) if not ((i == n - 1) ^ (j == n - 1))]
    unit = lambda i, j: np.eye(n)[:, [i]] @ np.eye(n)[[j], :]
    cols = []
    for (i, j) in g0:
        b = x @ unit(i, j) - unit(i, j) @ x
        cols.append([b[p, q] for (p, q) in g0])
    return np.array(cols).T


def test_kappa_ec_two_ways():
    s = minimal_setup(3)
    k = form(s.ge, "kappa_ec", s.grading)
    e11 = np.zeros((3, 3))
    e11[0, 0] = 1
    a = _ad_on_g0(3, e11)
    via_matrices = -0.5 * np.trace(a @ a)
    # second way: e11 acts diagonally on g_0 with eigenvalues in {0, 1, -1}
    via_eigen = -0.5 * sum(ev ** 2 for ev in np.linalg.eigvals(a).real)
    i = s.ge.index("e11")
    assert float(k(i, i)) == pytest.approx(via_matrices) == pytest.approx(via_eigen)
    assert k(i, i) == -1


def test_kappa_ec_vanishes_off_degree_0():
    s = minimal_setup(3)
    k = form(s.ge, "kappa_ec", s.grading)
    e31 = s.ge.index("e31")
    assert all(k(e31, j) == 0 for j in range(s.ge.dim))


@pytest.mark.parametrize("n", [3, 4])
def test_kappa_ec_invariant(n):
    s = minimal_setup(n)
    assert form(s.ge, "kappa_ec", s.grading).is_invariant()


def test_kappa_ec_needs_grading():
    s = minimal_setup(3)
    with pytest.raises(ValueError):
        form(s.ge, "kappa_ec")
    with pytest.raises(ValueError):
        form(s.ge, "bogus")


def test_index_abelian():
    ab = LieAlgebra(["a", "b", "c", "d"], {})
    assert index_estimate(ab, 3, 0) == 4


@pytest.mark.parametrize("n", [2, 3, 4])
def test_index_gl(n):
    assert index_estimate(build_gl(n), 3, 1) == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_index_centralizer(n):
    assert index_estimate(minimal_setup(n).ge, 5, 2) == n


def test_index_trials():
    with pytest.raises(ValueError):
        index_estimate(build_gl(2), 0, 0)
