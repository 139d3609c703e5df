import random

import pytest

from mfquant.foundations import Poly, QMatrix, VarId
from mfquant.liealg import BilinearForm, minimal_setup
from mfquant.loopv import (LaurentUEA, UEAElement, VacuumModule, classical_action, li_symbol,
                           pbw_context, pbw_symbol, phi_chi, phi_chi_coeff, rewrite_normal_form,
                           translation_T)
from mfquant.mfshift import Functional, random_regular_chi
from mfquant.poisson import lie_poisson_bracket, truncated_family
from mfquant.quantize import extract_Q, vacuum_module

S = minimal_setup(3)
GE = S.ge
CTX = pbw_context(GE, loop=True)
FIN = pbw_context(GE, loop=False)


def L(label, m=1, ctx=CTX):
    return UEAElement.letter(ctx, GE.index(label), m)


def V(label, m=1):
    return VarId(m, GE.index(label))


def test_ordered_word_is_fixed():
    w = (V("e11"), V("e31"), V("e32", 2))
    assert CTX.is_ordered(w)
    assert CTX.normal_form(w) == {w: 1}


def test_single_swap():
    # e31 precedes e12 in the PBW order; [e12, e31] = -e32 appears at depth 2
    lhs = L("e12") * L("e31")
    assert lhs == L("e31") * L("e12") - L("e32", 2)


def test_single_swap_finite():
    assert L("e12", ctx=FIN) * L("e31", ctx=FIN) == L("e31", ctx=FIN) * L("e12", ctx=FIN) - L("e32", ctx=FIN)


def test_associativity_random():
    rng = random.Random(0)
    letters = [L(l, m) for l in GE.labels for m in (1, 2)]
    for _ in range(50):
        a, b, c = (rng.choice(letters) * rng.choice(letters) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_confluence_against_naive_rewriting():
    rng = random.Random(1)
    for _ in range(100):
        w = tuple(VarId(rng.randint(1, 3), rng.randrange(GE.dim)) for _ in range(rng.randint(0, 5)))
        assert CTX.normal_form(w) == rewrite_normal_form(CTX, w, rng)


def test_commutator_is_bracket():
    for a in GE.labels:
        for b in GE.labels:
            lhs = L(a).commutator(L(b, 2))
            rhs = UEAElement.zero(CTX)
            for k, c in GE.bracket_basis(GE.index(a), GE.index(b)).items():
                rhs = rhs + UEAElement.letter(CTX, k, 3, c)
            assert lhs == rhs


VM = vacuum_module(3)
ONE = UEAElement.one(CTX)


def test_vacuum_is_annihilated():
    for x in range(GE.dim):
        for n in range(3):
            assert not VM.vacuum_action(x, n, ONE)
    assert VM.is_center_vacuum(ONE)


def test_central_term_only():
    k = VM.kappa
    for x in range(GE.dim):
        for y in range(GE.dim):
            r = VM.vacuum_action(x, 1, UEAElement.letter(CTX, y, 1))
            assert r == UEAElement.scalar(CTX, k(x, y))


def test_adjoint_action_mode_zero():
    for x in range(GE.dim):
        for y in range(GE.dim):
            r = VM.vacuum_action(x, 0, UEAElement.letter(CTX, y, 1))
            expect = UEAElement.zero(CTX)
            for z, c in GE.bracket_basis(x, y).items():
                expect = expect + UEAElement.letter(CTX, z, 1, c)
            assert r == expect


def test_negative_mode_rejected():
    with pytest.raises(ValueError):
        VM.vacuum_action(0, -1, ONE)


def test_center_examples():
    assert VM.is_center_vacuum(L("e32"))
    assert not VM.is_center_vacuum(L("e12"))


def test_level_matters():
    # at level zero the quadratic Q_2 is no longer central
    zero = VacuumModule(GE, BilinearForm(GE, QMatrix.zeros(GE.dim, GE.dim), "zero"))
    assert not zero.is_center_vacuum(extract_Q(3)[1])
    assert zero.is_center_vacuum(extract_Q(3)[0])


def test_translation():
    assert translation_T(L("e11")) == L("e11", 2)
    assert not translation_T(ONE)
    assert translation_T(L("e11") * L("e32")) == L("e11", 2) * L("e32") + L("e11") * L("e32", 2)


def test_translation_is_derivation():
    rng = random.Random(2)
    letters = [L(l, m) for l in GE.labels for m in (1, 2)]
    for _ in range(30):
        a = rng.choice(letters) * rng.choice(letters)
        b = rng.choice(letters)
        assert translation_T(a * b) == translation_T(a) * b + a * translation_T(b)


def test_translation_on_poly():
    p = Poly.var(0, 1, GE) * Poly.var(1, 2, GE)
    assert translation_T(p) == Poly.var(0, 2, GE) * Poly.var(1, 2, GE) + Poly.var(0, 1, GE) * Poly.var(1, 3, GE) * 2


def test_li_symbols():
    q1, q2 = extract_Q(3)
    v = lambda l, m=1: Poly.var(GE.index(l), m, GE)
    assert li_symbol(q1) == v("e32")
    assert li_symbol(q2) == v("e11") * v("e32") - v("e31") * v("e12")
    assert li_symbol(L("e12", 2)) == v("e12", 2)


def test_pbw_symbol():
    a = L("e12", ctx=FIN) * L("e31", ctx=FIN)
    assert pbw_symbol(a) == Poly.var(GE.index("e12"), algebra=GE) * Poly.var(GE.index("e31"), algebra=GE)


def test_classical_action_mode_zero_is_coadjoint():
    rng = random.Random(5)
    for _ in range(20):
        p = Poly.var(rng.randrange(GE.dim), algebra=GE) * Poly.var(rng.randrange(GE.dim), algebra=GE)
        x = rng.randrange(GE.dim)
        assert classical_action(GE, x, 0, p) == lie_poisson_bracket(Poly.var(x, algebra=GE), p, GE)


def test_classical_action_truncates():
    for x in range(GE.dim):
        for y in range(GE.dim):
            assert not classical_action(GE, x, 2, Poly.var(y, 1, GE))


def test_jets_of_truncations_annihilated():
    for p in truncated_family(S).polys:
        tp = translation_T(p)
        for x in range(GE.dim):
            for n in range(4):
                assert not classical_action(GE, x, n, tp)


CHI = random_regular_chi(GE, 3, 4)


def test_phi_letters():
    img = phi_chi(L("e32"), CHI)
    assert img == LaurentUEA(FIN, {1: L("e32", ctx=FIN), 0: UEAElement.scalar(FIN, CHI["e32"])})
    assert phi_chi(L("e32", 2), CHI) == LaurentUEA(FIN, {2: L("e32", ctx=FIN)})
    assert phi_chi_coeff(L("e32"), CHI, 0) == UEAElement.scalar(FIN, CHI["e32"])
    assert phi_chi_coeff(L("e32"), CHI, 1) == L("e32", ctx=FIN)


def test_phi_zero_chi():
    img = phi_chi(L("e11") * L("e32"), Functional.zero(GE))
    assert img == LaurentUEA(FIN, {2: L("e11", ctx=FIN) * L("e32", ctx=FIN)})


def test_neg_d_du():
    a = LaurentUEA(FIN, {0: UEAElement.one(FIN), 1: L("e11", ctx=FIN), 3: L("e12", ctx=FIN)})
    d = a.neg_d_du()
    assert d == LaurentUEA(FIN, {2: L("e11", ctx=FIN), 4: L("e12", ctx=FIN).scale(3)})
