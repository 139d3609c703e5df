"""Column determinants, the central elements Q_i and their images A_i^(j) in U(g^e).

Matrix entries live in Ore extensions ``R[X; delta]`` with ``X r = r X + delta(r)``:

* ``tau`` over U(g^e_-) with ``delta = T``, i.e. ``[tau, x_(-m)] = m x_(-m-1)``;
* ``D = -d/du`` over U(g^e)[u^-1] with ``delta(u^-m) = m u^-m-1``.

Powers of the operator are always collected on the right.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Sequence, Tuple

from .foundations import Poly, span_rank
from .liealg import MinimalSetup, form, minimal_setup
from .loopv import (LaurentUEA, UEAElement, VacuumModule, pbw_context, pbw_symbol,
                    phi_bar_coeff, li_symbol, translation_T)
from .mfshift import Functional, RegularityError, chi_regular, mf_generators
from .poisson import truncated_family

MAX_CDET = 6


class SizeLimit(ValueError):
    pass


class OrePoly:
    """``sum_k c_k X^k`` over a coefficient ring with derivation ``delta``."""

    __slots__ = ("coeffs", "delta", "zero")

    def __init__(self, coeffs: Dict[int, object], delta: Callable, zero):
        self.coeffs = {k: c for k, c in coeffs.items() if c}
        self.delta = delta
        self.zero = zero

    def _like(self, coeffs):
        return OrePoly(coeffs, self.delta, self.zero)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self._like({k: c * s for k, c in self.coeffs.items()})

    def _pass(self, power: int, b) -> Dict[int, object]:
        """``X^power b = sum_l C(power, l) delta^l(b) X^(power - l)``."""
        out = {}
        d = b
        for l in range(power + 1):
            if not d:
                break
            out[power - l] = d.scale(comb(power, l)) if l else d
            d = self.delta(d)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: Dict[int, object] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for k, db in self._pass(i, b).items():
                    p = a * db
                    out[k + j] = out[k + j] + p if k + j in out else p
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def coeff(self, k: int):
        return self.coeffs.get(k, self.zero)

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, OrePoly) and self.coeffs == other.coeffs


def tau_poly(coeffs: Dict[int, UEAElement], ctx) -> OrePoly:
    return OrePoly(coeffs, translation_T, UEAElement.zero(ctx))


def du_poly(coeffs: Dict[int, LaurentUEA], ctx) -> OrePoly:
    return OrePoly(coeffs, LaurentUEA.neg_d_du, LaurentUEA(ctx))


def _sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def cdet(m: Sequence[Sequence]):
    """sum_sigma sgn(sigma) a_{sigma(1)1} ... a_{sigma(n)n}, multiplied left to right."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("cdet needs a square matrix")
    if n > MAX_CDET:
        raise SizeLimit("cdet of a %dx%d matrix exceeds the %d limit" % (n, n, MAX_CDET))
    total = None
    for perm in itertools.permutations(range(n)):
        term = m[perm[0]][0]
        for c in range(1, n):
            term = term * m[perm[c]][c]
        if _sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return total


def z_rows(n: int) -> List[int]:
    """Rows kept in Z: drop row n-1 of tau + E."""
    return [i for i in range(1, n + 1) if i != n - 1]


def build_Z(n: int) -> List[List[OrePoly]]:
    setup = minimal_setup(n)
    ctx = pbw_context(setup.ge, loop=True)
    rows = []
    for i in z_rows(n):
        row = []
        for j in range(1, n):
            gen = setup.ge_index(i, j)  # KeyError-free: entries lie in g^e
            coeffs = {0: UEAElement.letter(ctx, gen, 1)}
            if i == j:
                coeffs[1] = UEAElement.one(ctx)
            row.append(tau_poly(coeffs, ctx))
        rows.append(row)
    return rows


_Q_CACHE: Dict[int, List[UEAElement]] = {}


def extract_Q(n: int) -> List[UEAElement]:
    """Q_1..Q_{n-1} with cdet(Z) = Q_1 tau^(n-2) + ... + Q_{n-1}."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n not in _Q_CACHE:
        det = cdet(build_Z(n))
        if det.degree() > n - 2:
            raise ArithmeticError("cdet(Z) has tau-degree above n-2")
        qs = [det.coeff(n - 1 - i) for i in range(1, n)]
        for i, q in enumerate(qs, start=1):
            if q.weights() != [i]:
                raise ArithmeticError("Q_%d is not homogeneous of weight %d" % (i, i))
        _Q_CACHE[n] = qs
    return _Q_CACHE[n]


def kappa_ec(setup: MinimalSetup):
    return form(setup.ge, "kappa_ec", setup.grading)


def vacuum_module(n: int) -> VacuumModule:
    setup = minimal_setup(n)
    vm = getattr(setup, "_vacuum", None)
    if vm is None:
        vm = VacuumModule(setup.ge, kappa_ec(setup))
        setup._vacuum = vm
    return vm


def build_A(n: int, chi: Functional) -> List[List[OrePoly]]:
    """Replace (e_ij)_(-1) by u^-1 e_ij + chi_ij and tau by -d/du."""
    setup = minimal_setup(n)
    fin = pbw_context(setup.ge, loop=False)
    rows = []
    for i in z_rows(n):
        row = []
        for j in range(1, n):
            gen = setup.ge_index(i, j)
            entry = {1: UEAElement.letter(fin, gen)}
            if chi.values[gen]:
                entry[0] = UEAElement.scalar(fin, chi.values[gen])
            coeffs = {0: LaurentUEA(fin, entry)}
            if i == j:
                coeffs[1] = LaurentUEA.scalar(fin, 1)
            row.append(du_poly(coeffs, fin))
        rows.append(row)
    return rows


@dataclass
class AExpansion:
    A: List[LaurentUEA]                    # A_1..A_{n-1}
    table: Dict[Tuple[int, int], UEAElement]  # (i, j) -> A_i^(j), j = 0..i


def extract_A(n: int, chi: Functional) -> AExpansion:
    det = cdet(build_A(n, chi))
    if det.degree() > n - 2:
        raise ArithmeticError("cdet(A) has operator degree above n-2")
    As = [det.coeff(n - 1 - i) for i in range(1, n)]
    table = {}
    for i, Ai in enumerate(As, start=1):
        if any(m > i for m in Ai.coeffs):
            raise ArithmeticError("A_%d has a pole of order above %d" % (i, i))
        for j in range(i + 1):
            table[(i, j)] = Ai.coeff(i - j)
    return AExpansion(As, table)


@dataclass
class QuantizedAlgebra:
    n: int
    chi: Functional
    generators: List[UEAElement]
    labels: List[str]
    nonzero_commutators: List[Tuple[int, int, UEAElement]] = field(default_factory=list)

    @property
    def commutative(self) -> bool:
        return not self.nonzero_commutators


def quantized_algebra(n: int, chi: Functional, allow_singular: bool = False,
                      check: bool = True) -> QuantizedAlgebra:
    setup = minimal_setup(n)
    if not allow_singular and not chi_regular(chi, setup.ge, setup.ell):
        raise RegularityError("chi is not regular for %s" % setup.ge.name)
    fin = pbw_context(setup.ge, loop=False)
    exp = extract_A(n, chi)
    gens = [UEAElement.letter(fin, setup.ge.index("I"))]
    labels = ["I"]
    for i in range(1, n):
        for j in range(i):
            gens.append(exp.table[(i, j)])
            labels.append("A_%d^(%d)" % (i, j))
    qa = QuantizedAlgebra(n, chi, gens, labels)
    if check:
        for a, b in itertools.combinations(range(len(gens)), 2):
            c = gens[a].commutator(gens[b])
            if c:
                qa.nonzero_commutators.append((a, b, c))
    return qa


# ---------------------------------------------------------------------------
# associated graded comparison


def degreewise_products(gens: Sequence[Poly], d: int) -> List[Poly]:
    """All products of generators (with repetition) of total degree d."""
    items = [(g.degree(), g) for g in gens if g]
    out: List[Poly] = []

    def rec(start: int, remaining: int, acc: Poly):
        if remaining == 0:
            out.append(acc)
            return
        for k in range(start, len(items)):
            deg, g = items[k]
            if deg <= remaining:
                rec(k, remaining - deg, acc * g)

    rec(0, d, Poly.const(1))
    return out


def same_degreewise_span(a: Sequence[Poly], b: Sequence[Poly], max_degree: int) -> bool:
    for d in range(1, max_degree + 1):
        pa = [p.with_algebra(None) for p in degreewise_products(a, d)]
        pb = [p.with_algebra(None) for p in degreewise_products(b, d)]
        ra, rb, rab = span_rank(pa), span_rank(pb), span_rank(pa + pb)
        if not ra == rb == rab:
            return False
    return True


def symbol_mismatches(n: int, chi: Functional) -> List[Tuple[int, int, Poly, Poly]]:
    """Pairs where the symbol of A_i^(j) differs from phi-bar_{i-j} of sigma(Q_i)."""
    exp = extract_A(n, chi)
    bad = []
    for i, q in enumerate(extract_Q(n), start=1):
        sq = li_symbol(q)
        for j in range(i):
            lhs = pbw_symbol(exp.table[(i, j)]).with_algebra(None)
            rhs = phi_bar_coeff(sq, chi, i - j).with_algebra(None)
            if lhs != rhs:
                bad.append((i, j, lhs, rhs))
    return bad


def gr_consistency(n: int, chi: Functional) -> bool:
    setup = minimal_setup(n)
    if not chi_regular(chi, setup.ge, setup.ell):
        raise RegularityError("chi is not regular for %s" % setup.ge.name)
    if symbol_mismatches(n, chi):
        return False
    qa = quantized_algebra(n, chi, check=False)
    quantum_symbols = [pbw_symbol(g) for g in qa.generators]
    mf = mf_generators(truncated_family(setup), chi, setup.ell, check=False)
    return same_degreewise_span(quantum_symbols, mf.generators, n - 1)
