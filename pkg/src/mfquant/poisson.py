"""Lie-Poisson brackets, invariants of gl_n and their Slodowy-slice truncations."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .foundations import (Poly, QMatrix, VarId, inverse, min_degree_component,
                          partial_derivative, rank, substitute)
from .liealg import LieAlgebra, LieElement, MinimalSetup, Sl2Triple, _trace_of_product


class WrongRing(ValueError):
    """Polynomial has loop variables where S(q) was expected."""


class InvarianceViolation(ValueError):
    pass


def _linear(vec: Dict[int, Fraction], algebra=None) -> Poly:
    return Poly({((VarId(1, k), 1),): c for k, c in vec.items()}, algebra)


def _require_depth_one(p: Poly) -> None:
    for v in p.variables():
        if v.depth != 1:
            raise WrongRing("variable %r is not in S(q)" % (v,))


def lie_poisson_bracket(a: Poly, b: Poly, g: LieAlgebra) -> Poly:
    """The biderivation extending the Lie bracket on linear terms."""
    _require_depth_one(a)
    _require_depth_one(b)
    out = Poly({}, g)
    va, vb = a.variables(), b.variables()
    if not va or not vb:
        return out
    db = {w: partial_derivative(b, w) for w in vb}
    for v in va:
        da = None
        for w in vb:
            br = g.bracket_basis(v.gen, w.gen)
            if not br:
                continue
            if da is None:
                da = partial_derivative(a, v)
            out = out + (da * db[w]).with_algebra(g) * _linear(br, g)
    return out


def is_poisson_invariant(p: Poly, g: LieAlgebra) -> bool:
    return all(not lie_poisson_bracket(Poly.var(i, algebra=g), p.with_algebra(g), g)
               for i in range(g.dim))


@dataclass
class InvariantFamily:
    algebra: LieAlgebra
    polys: List[Poly]
    degrees: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [p.degree() for p in self.polys]


def _det_poly(rows: Sequence[Sequence[Poly]]) -> Poly:
    n = len(rows)
    total = Poly({})
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = Poly.const(-1 if inv % 2 else 1)
        for c in range(n):
            term = term * rows[perm[c]][c]
        total = total + term
    return total


def gl_char_invariants(n: int, g: Optional[LieAlgebra] = None) -> InvariantFamily:
    """P_k = sum of principal k-minors of the generic matrix (e_ij), k = 1..n."""
    from .liealg import build_gl, gl_index
    g = g or build_gl(n)
    generic = [[Poly.var(gl_index(n, i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    polys = []
    for k in range(1, n + 1):
        pk = Poly({})
        for rows in itertools.combinations(range(n), k):
            pk = pk + _det_poly([[generic[r][c] for c in rows] for r in rows])
        polys.append(pk.with_algebra(g))
    return InvariantFamily(g, polys, list(range(1, n + 1)))


# ---------------------------------------------------------------------------
# Slodowy slice


def _transpose_matrix(m: Dict[Tuple[int, int], Fraction]) -> Dict[Tuple[int, int], Fraction]:
    return {(c, r): x for (r, c), x in m.items()}


class SlodowyChart:
    """Chart ``e + g^f`` with g^f spanned by transposes of the g^e basis.

    The trace pairing identifies g^f with (g^e)^*; ``pairing[k][l] = tr(b_k f_l)``.
    """

    def __init__(self, setup: MinimalSetup):
        self.setup = setup
        self.sl2: Sl2Triple = setup.sl2
        ge = setup.ge
        self.n = setup.n
        self.f_matrices = [_transpose_matrix(m) for m in ge.matrices]
        g = setup.g
        f = self.sl2.f
        for fm in self.f_matrices:
            x = LieElement(g, {g.index("e%d%d" % rc): c for rc, c in fm.items()})
            if not g.bracket(f, x).is_zero():
                raise ValueError("transposed basis element is not in g^f")
        if len(self.f_matrices) != g.dim - rank(g.ad_matrix(f)):
            raise ValueError("transposed basis does not span g^f")
        d = ge.dim
        self.pairing = QMatrix([[_trace_of_product(ge.matrices[k], self.f_matrices[l])
                                 for l in range(d)] for k in range(d)], d)
        self.pairing_inverse = inverse(self.pairing)  # raises if degenerate

    def slice_point(self) -> List[List[Poly]]:
        """The matrix ``e + sum_l y_l f_l`` with y_l written in S(g^e) coordinates."""
        n, ge = self.n, self.setup.ge
        d = ge.dim
        # y_l = sum_k (M^-1)_{lk} b_k
        ys = [Poly({((VarId(1, k), 1),): self.pairing_inverse[l, k] for k in range(d)})
              for l in range(d)]
        mat = [[Poly({}) for _ in range(n)] for _ in range(n)]
        mat[n - 1][n - 2] = Poly.const(1)  # e = e_{n,n-1}
        for l, fm in enumerate(self.f_matrices):
            for (r, c), x in fm.items():
                mat[r - 1][c - 1] = mat[r - 1][c - 1] + ys[l].scale(x)
        return mat


def restrict_to_slice(P: Poly, chart: SlodowyChart) -> Poly:
    from .liealg import gl_index
    n = chart.n
    x = chart.slice_point()
    # the variable e_ij evaluates to tr(x e_ij) = x_ji
    images = {VarId(1, gl_index(n, i, j)): x[j - 1][i - 1]
              for i in range(1, n + 1) for j in range(1, n + 1)}
    return substitute(P, images, chart.setup.ge)


def e_truncation(P: Poly, chart: SlodowyChart, centralizer: Optional[LieAlgebra] = None,
                 check: bool = True) -> Poly:
    ge = chart.setup.ge
    if centralizer is not None and centralizer is not ge:
        raise ValueError("centralizer does not match the chart")
    if check and not is_poisson_invariant(P, chart.setup.g):
        raise InvarianceViolation("input is not an invariant of %s" % chart.setup.g.name)
    out = min_degree_component(restrict_to_slice(P, chart)).with_algebra(ge)
    if check and not is_poisson_invariant(out, ge):
        raise InvarianceViolation("truncation is not g^e-invariant; chart is inconsistent")
    return out


def truncated_family(setup: MinimalSetup) -> InvariantFamily:
    chart = SlodowyChart(setup)
    fam = gl_char_invariants(setup.n, setup.g)
    polys = [e_truncation(P, chart) for P in fam.polys]
    return InvariantFamily(setup.ge, polys)


def good_system_check(family: InvariantFamily, centralizer: LieAlgebra, ell: int) -> bool:
    return 2 * sum(family.degrees) == centralizer.dim + ell


# ---------------------------------------------------------------------------
# C2 minimal nilpotent centralizer


C2_LABELS = ["E", "H", "F", "u", "v", "e"]


def c2_algebra() -> LieAlgebra:
    E, H, F, u, v, e = range(6)
    one = Fraction(1)
    brackets = {
        (H, E): {E: 2 * one},
        (H, F): {F: -2 * one},
        (E, F): {H: one},
        (E, v): {u: one},
        (F, u): {v: one},
        (H, u): {u: one},
        (H, v): {v: -one},
        (u, v): {e: one},
    }
    return LieAlgebra(C2_LABELS, brackets, name="sp4^e")


@dataclass
class C2Fixture:
    algebra: LieAlgebra
    invariants: InvariantFamily
    quadrics: List[Poly]
    branch: Callable[[random.Random], Dict[VarId, Fraction]]


def c2_fixture() -> C2Fixture:
    g = c2_algebra()
    E, H, F, u, v, e = (Poly.var(k, algebra=g) for k in range(6))
    F1 = e
    F2 = (4 * E * F + H * H) * e + 2 * E * v * v + 2 * u * v * H - 2 * F * u * u
    # coordinates x, y, z, p, q, t are the values on E, F, H, u, v, e
    x, y, z, p, q, t = E, F, H, u, v, e
    quadrics = [2 * y * t + q * q, 2 * x * t - p * p, q * z - 2 * y * p,
                2 * x * q + p * z, z * t + p * q]

    def branch(rng: random.Random) -> Dict[VarId, Fraction]:
        pv = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        qv = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        tv = Fraction(0)
        while not tv:
            tv = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        vals = [pv * pv / (2 * tv), -pv * qv / tv, -qv * qv / (2 * tv), pv, qv, tv]
        return {VarId(1, k): vals[k] for k in range(6)}

    return C2Fixture(g, InvariantFamily(g, [F1, F2]), quadrics, branch)
