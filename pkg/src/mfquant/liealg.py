"""Structure-constant Lie algebras over Q.

A :class:`LieAlgebra` is a labelled basis plus sparse brackets
``[b_i, b_j] = sum_k c_k b_k``.  Subalgebras remember their inclusion into the
parent, so matrix realisations and gradings can be pulled back.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .foundations import QMatrix, as_fraction, inverse, rank, rank_kernel

Vec = Dict[int, Fraction]


class UnsupportedRank(ValueError):
    pass


class LieAxiomError(ValueError):
    pass


def _axpy(out: Vec, c: Fraction, v: Vec) -> None:
    for k, x in v.items():
        s = out.get(k, 0) + c * x
        if s:
            out[k] = s
        else:
            out.pop(k, None)


class LieAlgebra:
    def __init__(self, labels: Sequence[str], brackets: Dict[Tuple[int, int], Vec],
                 name: str = "", matrices=None, parent: "LieAlgebra" = None,
                 inclusion: Optional[List[Vec]] = None, check: bool = True):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.name = name
        self.matrices = matrices
        self.parent = parent
        self.inclusion = inclusion
        table: Dict[Tuple[int, int], Vec] = {}
        for (i, j), v in brackets.items():
            v = {k: as_fraction(c) for k, c in v.items() if c}
            if not v:
                continue
            table[(i, j)] = v
            if (j, i) in brackets:
                other = {k: as_fraction(c) for k, c in brackets[(j, i)].items() if c}
                if other != {k: -c for k, c in v.items()}:
                    raise LieAxiomError("bracket table is not antisymmetric at %r" % ((i, j),))
            table[(j, i)] = {k: -c for k, c in v.items()}
        for i in range(self.dim):
            if (i, i) in table:
                raise LieAxiomError("[b_%d, b_%d] != 0" % (i, i))
        self._table = table
        if check:
            self.check_jacobi()

    def __repr__(self):
        return "LieAlgebra(%s, dim=%d)" % (self.name or "?", self.dim)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self._table.get((i, j), {})

    def bracket(self, x: "LieElement", y: "LieElement") -> "LieElement":
        out: Vec = {}
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                v = self._table.get((i, j))
                if v:
                    _axpy(out, a * b, v)
        return LieElement(self, out)

    def basis_element(self, i: int) -> "LieElement":
        return LieElement(self, {i: Fraction(1)})

    def element(self, spec: Dict) -> "LieElement":
        """Build an element from ``{label or index: coeff}``."""
        out = {}
        for k, c in spec.items():
            idx = self.index(k) if isinstance(k, str) else k
            out[idx] = as_fraction(c)
        return LieElement(self, out)

    def nonzero_brackets(self):
        return sorted((i, j, v) for (i, j), v in self._table.items() if i < j)

    def check_jacobi(self) -> None:
        d = self.dim
        for i, j, k in itertools.combinations(range(d), 3):
            total: Vec = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for m, x in self.bracket_basis(b, c).items():
                    _axpy(total, x, self.bracket_basis(a, m))
            if total:
                raise LieAxiomError("Jacobi identity fails on %s" % (
                    (self.labels[i], self.labels[j], self.labels[k]),))

    def is_abelian(self) -> bool:
        return not self._table

    def to_parent(self, x: "LieElement") -> "LieElement":
        out: Vec = {}
        for i, c in x.coeffs.items():
            _axpy(out, c, self.inclusion[i])
        return LieElement(self.parent, out)

    def ad_matrix(self, x: "LieElement") -> QMatrix:
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            col = self.bracket(x, self.basis_element(j)).coeffs
            for i, c in col.items():
                rows[i][j] = c
        return QMatrix(rows, self.dim)


@dataclass(frozen=True)
class LieElement:
    algebra: LieAlgebra
    coeffs: Vec

    def __add__(self, other):
        out = dict(self.coeffs)
        _axpy(out, Fraction(1), other.coeffs)
        return LieElement(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        _axpy(out, Fraction(-1), other.coeffs)
        return LieElement(self.algebra, out)

    def __rmul__(self, c):
        c = as_fraction(c)
        return LieElement(self.algebra, {k: c * v for k, v in self.coeffs.items() if c * v})

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.algebra is other.algebra
                and {k: v for k, v in self.coeffs.items() if v}
                == {k: v for k, v in other.coeffs.items() if v})

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.coeffs.items() if v))

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if c:
                parts.append("%s*%s" % (c, self.algebra.labels[k]) if c != 1 else self.algebra.labels[k])
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# gl_n


def gl_label(i: int, j: int) -> str:
    return "e%d%d" % (i, j)


def build_gl(n: int) -> LieAlgebra:
    if n < 2:
        raise UnsupportedRank("gl_n needs n >= 2, got %r" % n)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    idx = {p: k for k, p in enumerate(pairs)}
    brackets: Dict[Tuple[int, int], Vec] = {}
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        v: Vec = {}
        # [e_ij, e_kl] = d_jk e_il - d_li e_kj
        if j == k:
            _axpy(v, Fraction(1), {idx[(i, l)]: Fraction(1)})
        if l == i:
            _axpy(v, Fraction(-1), {idx[(k, j)]: Fraction(1)})
        if v:
            brackets[(idx[(i, j)], idx[(k, l)])] = v
    matrices = [{p: Fraction(1)} for p in pairs]
    g = LieAlgebra([gl_label(*p) for p in pairs], brackets, name="gl%d" % n,
                   matrices=matrices, check=n <= 5)
    g.n = n
    return g


def gl_index(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


@dataclass(frozen=True)
class Sl2Triple:
    e: LieElement
    h: LieElement
    f: LieElement

    def check(self) -> None:
        g = self.e.algebra
        if g.bracket(self.e, self.f) != self.h:
            raise LieAxiomError("[e,f] != h")
        if g.bracket(self.h, self.e) != 2 * self.e:
            raise LieAxiomError("[h,e] != 2e")
        if g.bracket(self.h, self.f) != (-2) * self.f:
            raise LieAxiomError("[h,f] != -2f")


def minimal_sl2_triple(n: int, g: Optional[LieAlgebra] = None) -> Sl2Triple:
    if n < 2:
        raise UnsupportedRank("gl_n needs n >= 2, got %r" % n)
    g = g or build_gl(n)
    e = g.basis_element(gl_index(n, n, n - 1))
    f = g.basis_element(gl_index(n, n - 1, n))
    h = g.basis_element(gl_index(n, n, n)) - g.basis_element(gl_index(n, n - 1, n - 1))
    t = Sl2Triple(e, h, f)
    t.check()
    return t


# ---------------------------------------------------------------------------
# subalgebras


def _solve_in_span(basis: List[Vec], dim: int):
    """Left inverse for coordinates in the span of ``basis`` (full column rank)."""
    cols = len(basis)
    m = QMatrix([[basis[c].get(r, Fraction(0)) for c in range(cols)] for r in range(dim)], cols)
    # normal equations keep this exact and square
    mt = m.transpose()
    gram = QMatrix([[sum((a * b for a, b in zip(r1, r2)), Fraction(0)) for r2 in mt.entries]
                    for r1 in mt.entries], cols)
    ginv = inverse(gram)

    def coords(v: Vec) -> Vec:
        rhs = [sum((row[k] * v.get(k, 0) for k in range(dim)), Fraction(0)) for row in mt.entries]
        sol = ginv.apply(rhs)
        back: Vec = {}
        for c, x in enumerate(sol):
            if x:
                _axpy(back, x, basis[c])
        if back != {k: x for k, x in v.items() if x}:
            raise LieAxiomError("vector is not in the span of the subalgebra basis")
        return {c: x for c, x in enumerate(sol) if x}

    return coords


def subalgebra(g: LieAlgebra, basis: List[LieElement], labels: Sequence[str], name: str = "") -> LieAlgebra:
    vecs = [{k: v for k, v in b.coeffs.items() if v} for b in basis]
    if rank(QMatrix([[v.get(k, Fraction(0)) for k in range(g.dim)] for v in vecs], g.dim)) != len(vecs):
        raise LieAxiomError("subalgebra basis is linearly dependent")
    coords = _solve_in_span(vecs, g.dim)
    brackets: Dict[Tuple[int, int], Vec] = {}
    for i, j in itertools.combinations(range(len(vecs)), 2):
        br = g.bracket(basis[i], basis[j]).coeffs
        if br:
            brackets[(i, j)] = coords(br)  # raises if not closed
    matrices = None
    if g.matrices is not None:
        matrices = []
        for v in vecs:
            m: Dict[Tuple[int, int], Fraction] = {}
            for k, c in v.items():
                for pos, x in g.matrices[k].items():
                    m[pos] = m.get(pos, 0) + c * x
            matrices.append({p: x for p, x in m.items() if x})
    sub = LieAlgebra(labels, brackets, name=name, matrices=matrices, parent=g, inclusion=vecs)
    sub.coords = coords
    return sub


def centralizer(g: LieAlgebra, x: LieElement, basis: Optional[List[LieElement]] = None,
                labels: Optional[Sequence[str]] = None) -> LieAlgebra:
    """Centralizer of ``x`` as a subalgebra; ``basis`` pins a preferred basis (checked)."""
    ad = g.ad_matrix(x)
    r, kernel = rank_kernel(ad)
    if basis is None:
        basis = [LieElement(g, {k: c for k, c in enumerate(v) if c}) for v in kernel]
        labels = []
        for b in basis:
            if len(b.coeffs) == 1 and next(iter(b.coeffs.values())) == 1:
                labels.append(g.labels[next(iter(b.coeffs))])
            else:
                labels.append(str(b).replace(" ", ""))
    else:
        if len(basis) != len(kernel):
            raise LieAxiomError("supplied basis has wrong size for the centralizer")
        for b in basis:
            if not g.bracket(x, b).is_zero():
                raise LieAxiomError("supplied basis element does not commute with x")
    return subalgebra(g, basis, labels, name="%s^x" % g.name)


def minimal_centralizer_basis(n: int, g: LieAlgebra) -> Tuple[List[LieElement], List[str]]:
    """Basis e_ij (i <= n-2, row-major), e_nj, then the identity I."""
    basis, labels = [], []
    for i in range(1, n - 1):
        for j in range(1, n):
            basis.append(g.basis_element(gl_index(n, i, j)))
            labels.append(gl_label(i, j))
    for j in range(1, n):
        basis.append(g.basis_element(gl_index(n, n, j)))
        labels.append(gl_label(n, j))
    ident = LieElement(g, {gl_index(n, i, i): Fraction(1) for i in range(1, n + 1)})
    basis.append(ident)
    labels.append("I")
    return basis, labels


def column_order(labels) -> List[int]:
    """PBW positions: e_ij sorted by column j, then row i; anything else last.

    Column determinants multiply entries in column order, so their terms are
    already ordered words in this order."""
    def key(k):
        l = labels[k]
        return (0, int(l[2]), int(l[1]), k) if l[0] == "e" and len(l) == 3 else (1, 0, 0, k)
    ranked = sorted(range(len(labels)), key=key)
    pos = [0] * len(labels)
    for p, k in enumerate(ranked):
        pos[k] = p
    return pos


class MinimalSetup:
    """gl_n, its minimal sl2-triple, the centralizer g^e and the good grading."""

    def __init__(self, n: int):
        if n < 2:
            raise UnsupportedRank("gl_n needs n >= 2, got %r" % n)
        self.n = n
        self.g = build_gl(n)
        self.sl2 = minimal_sl2_triple(n, self.g)
        basis, labels = minimal_centralizer_basis(n, self.g)
        self.ge = centralizer(self.g, self.sl2.e, basis, labels)
        self.ge.name = "gl%d^e" % n
        self.ge.n = n
        self.ge.pbw_order = column_order(self.ge.labels)
        self.grading = good_grading_minimal(n, self.g)
        self.ell = n

    def ge_index(self, i: int, j: int) -> int:
        return self.ge.index(gl_label(i, j))


_SETUPS: Dict[int, MinimalSetup] = {}


def minimal_setup(n: int) -> MinimalSetup:
    if n not in _SETUPS:
        _SETUPS[n] = MinimalSetup(n)
    return _SETUPS[n]


# ---------------------------------------------------------------------------
# gradings


class Grading:
    def __init__(self, algebra: LieAlgebra, degrees: Sequence[int]):
        self.algebra = algebra
        self.degrees = list(degrees)
        for (i, j), v in algebra._table.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise LieAxiomError("bracket of %s and %s leaves degree %d" % (
                        algebra.labels[i], algebra.labels[j], self.degrees[i] + self.degrees[j]))

    def component(self, d: int) -> List[int]:
        return [k for k, x in enumerate(self.degrees) if x == d]

    def degree_of(self, x: LieElement) -> Optional[int]:
        ds = {self.degrees[k] for k, c in x.coeffs.items() if c}
        return ds.pop() if len(ds) == 1 else None


def good_grading_minimal(n: int, g: Optional[LieAlgebra] = None) -> Grading:
    if n < 2:
        raise UnsupportedRank("gl_n needs n >= 2, got %r" % n)
    g = g or build_gl(n)
    degrees = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == n and j < n:
                degrees.append(2)
            elif j == n and i < n:
                degrees.append(-2)
            else:
                degrees.append(0)
    return Grading(g, degrees)


# ---------------------------------------------------------------------------
# bilinear forms


class BilinearForm:
    def __init__(self, algebra: LieAlgebra, matrix: QMatrix, kind: str):
        self.algebra = algebra
        self.matrix = matrix
        self.kind = kind
        for i in range(matrix.rows):
            for j in range(i):
                if matrix[i, j] != matrix[j, i]:
                    raise LieAxiomError("form is not symmetric")

    def __call__(self, i: int, j: int) -> Fraction:
        return self.matrix.entries[i][j]

    def on(self, x: LieElement, y: LieElement) -> Fraction:
        return sum((a * b * self.matrix.entries[i][j]
                    for i, a in x.coeffs.items() for j, b in y.coeffs.items()), Fraction(0))

    def is_invariant(self) -> bool:
        g = self.algebra
        for a, b, c in itertools.product(range(g.dim), repeat=3):
            lhs = sum((x * self(k, c) for k, x in g.bracket_basis(a, b).items()), Fraction(0))
            rhs = sum((x * self(a, k) for k, x in g.bracket_basis(b, c).items()), Fraction(0))
            if lhs != rhs:
                return False
        return True


def _trace_of_product(ma: Dict, mb: Dict) -> Fraction:
    total = Fraction(0)
    for (r, c), x in ma.items():
        y = mb.get((c, r))
        if y:
            total += x * y
    return total


def _ad_trace(g: LieAlgebra, x: LieElement, y: LieElement, on: Sequence[int]) -> Fraction:
    """tr(ad x ad y) restricted to the span of the basis vectors ``on`` of g."""
    on_set = set(on)
    total = Fraction(0)
    for k in on:
        v = g.bracket(x, g.bracket(y, g.basis_element(k))).coeffs
        for m, c in v.items():
            if m == k:
                total += c
            elif m not in on_set:
                raise LieAxiomError("ad x ad y does not preserve the chosen subspace")
    return total


# kappa_ec normalisation: -1/2 tr_{g_0}(ad x ad y), see ledger
KAPPA_EC_SCALE = Fraction(-1, 2)


def form(g: LieAlgebra, kind: str, grading: Optional[Grading] = None) -> BilinearForm:
    d = g.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    if kind == "trace":
        if g.matrices is None:
            raise ValueError("trace form needs a matrix realisation")
        for i in range(d):
            for j in range(i, d):
                rows[i][j] = rows[j][i] = _trace_of_product(g.matrices[i], g.matrices[j])
    elif kind in ("killing", "kappa_c"):
        scale = Fraction(1) if kind == "killing" else Fraction(-1, 2)
        everything = list(range(d))
        for i in range(d):
            for j in range(i, d):
                rows[i][j] = rows[j][i] = scale * _ad_trace(
                    g, g.basis_element(i), g.basis_element(j), everything)
    elif kind == "kappa_ec":
        if grading is None or g.parent is None or grading.algebra is not g.parent:
            raise ValueError("kappa_ec needs a centralizer subalgebra and a grading of its parent")
        parent = g.parent
        g0 = grading.component(0)
        deg0 = []
        for i in range(d):
            x = g.to_parent(g.basis_element(i))
            deg0.append(grading.degree_of(x) == 0)
        for i in range(d):
            for j in range(i, d):
                if deg0[i] and deg0[j]:
                    x = g.to_parent(g.basis_element(i))
                    y = g.to_parent(g.basis_element(j))
                    rows[i][j] = rows[j][i] = KAPPA_EC_SCALE * _ad_trace(parent, x, y, g0)
    else:
        raise ValueError("unknown form kind %r" % kind)
    return BilinearForm(g, QMatrix(rows, d), kind)


# ---------------------------------------------------------------------------
# index


def bracket_matrix(g: LieAlgebra, chi: Sequence[Fraction]) -> QMatrix:
    """M_ij = chi([b_i, b_j])."""
    d = g.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), v in g._table.items():
        rows[i][j] = sum((c * chi[k] for k, c in v.items()), Fraction(0))
    return QMatrix(rows, d)


def random_functional_values(dim: int, rng: random.Random, bound: int = 20) -> List[Fraction]:
    return [Fraction(rng.randint(-bound, bound)) for _ in range(dim)]


def index_estimate(g: LieAlgebra, trials: int, seed: int) -> int:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    best = g.dim
    for _ in range(trials):
        chi = random_functional_values(g.dim, rng)
        best = min(best, g.dim - rank(bracket_matrix(g, chi)))
    return best
