"""Exact rationals, sparse commutative polynomials and exact linear algebra.

Polynomial variables are ``VarId(depth, gen)`` pairs: ``gen`` indexes a basis
element of some Lie algebra and ``depth`` is the ``m`` of the loop symbol
``x_(-m)``.  Depth-1 variables span the finite symmetric algebra ``S(q)``,
higher depths the jet algebra ``S(q[t^-1]t^-1)``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple


class ContextMismatch(ValueError):
    """Operands live over different Lie algebras."""


class MissingAssignment(KeyError):
    pass


class VarId(NamedTuple):
    # field order sorts monomial variables depth-major
    depth: int
    gen: int


Monomial = Tuple[Tuple[VarId, int], ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _same_context(a, b):
    if a is None:
        return b
    if b is None or a is b:
        return a
    raise ContextMismatch("polynomials over different algebras")


class Poly:
    """Sparse polynomial with Fraction coefficients; immutable by convention."""

    __slots__ = ("terms", "algebra", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction]] = None, algebra=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = as_fraction(c)
        self.terms: Dict[Monomial, Fraction] = clean
        self.algebra = algebra
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c, algebra=None) -> "Poly":
        return cls({(): as_fraction(c)}, algebra)

    @classmethod
    def var(cls, gen: int, depth: int = 1, algebra=None) -> "Poly":
        return cls({((VarId(depth, gen), 1),): Fraction(1)}, algebra)

    @classmethod
    def _raw(cls, terms, algebra):
        p = cls.__new__(cls)
        p.terms = terms
        p.algebra = algebra
        p._hash = None
        return p

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.algebra)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        alg = _same_context(self.algebra, other.algebra)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, alg)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.algebra)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly._raw({}, self.algebra)
        return Poly._raw({m: c * v for m, v in self.terms.items()}, self.algebra)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        alg = _same_context(self.algebra, other.algebra)
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out, alg)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = Poly.const(1, self.algebra)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure
    def variables(self) -> List[VarId]:
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return sorted(vs)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(sum(e for _, e in m) for m in self.terms)

    def weights(self) -> List[int]:
        return sorted({sum(v.depth * e for v, e in m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly._raw(
            {m: c for m, c in self.terms.items() if sum(e for _, e in m) == d}, self.algebra
        )

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(e for _, e in mc[0]), mc[0]))

    def with_algebra(self, algebra) -> "Poly":
        return Poly._raw(dict(self.terms), algebra)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, labels: Optional[Sequence[str]] = None) -> str:
    if labels is None and p.algebra is not None:
        labels = p.algebra.labels
    if not p.terms:
        return "0"

    def var_str(v: VarId) -> str:
        name = labels[v.gen] if labels else "x%d" % v.gen
        return name if v.depth == 1 else "%s_(-%d)" % (name, v.depth)

    parts = []
    for m, c in p.sorted_terms():
        body = "*".join(var_str(v) + ("^%d" % e if e > 1 else "") for v, e in m)
        parts.append((c, body))
    return _join_signed(parts, "*")


def _join_signed(parts, sep) -> str:
    out = []
    for i, (c, body) in enumerate(parts):
        neg = c < 0
        a = -c if neg else c
        if not body:
            s = str(a)
        elif a == 1:
            s = body
        else:
            s = "%s%s%s" % (a, sep, body)
        if i == 0:
            out.append("-" + s if neg else s)
        else:
            out.append((" - " if neg else " + ") + s)
    return "".join(out)


def poly_arith(a: Poly, b, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError("unknown op %r" % op)


def partial_derivative(p: Poly, v: VarId) -> Poly:
    out: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for k, (w, e) in enumerate(m):
            if w == v:
                if e == 1:
                    nm = m[:k] + m[k + 1:]
                else:
                    nm = m[:k] + ((w, e - 1),) + m[k + 1:]
                out[nm] = out.get(nm, 0) + c * e
                break
    return Poly(out, p.algebra)


def evaluate(p: Poly, point: Mapping[VarId, Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        t = c
        for v, e in m:
            try:
                t *= as_fraction(point[v]) ** e
            except KeyError:
                raise MissingAssignment(v) from None
        total += t
    return total


def substitute(p: Poly, images: Mapping[VarId, Poly], algebra=None) -> Poly:
    """Replace each variable by a polynomial (variables absent from ``images`` stay)."""
    powers: Dict[Tuple[VarId, int], Poly] = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            base = images[v] if v in images else Poly({((v, 1),): 1}, p.algebra)
            powers[key] = base if e == 1 else power(v, e - 1) * base
        return powers[key]

    acc: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        t = Poly.const(c)
        for v, e in m:
            t = t * power(v, e).with_algebra(None)
        for mm, cc in t.terms.items():
            s = acc.get(mm, 0) + cc
            if s:
                acc[mm] = s
            else:
                acc.pop(mm, None)
    return Poly._raw(acc, algebra)


def min_degree_component(p: Poly) -> Poly:
    if not p.terms:
        raise ValueError("minimal degree component of the zero polynomial is undefined")
    d = min(sum(e for _, e in m) for m in p.terms)
    return p.homogeneous_component(d)


def top_degree_component(p: Poly) -> Poly:
    if not p.terms:
        return p
    return p.homogeneous_component(p.degree())


# ---------------------------------------------------------------------------
# exact linear algebra


class QMatrix:
    """Dense rational matrix stored as a list of rows."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: Optional[int] = None):
        self.entries = [[as_fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        if any(len(r) != cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def apply(self, vec: Sequence[Fraction]) -> List[Fraction]:
        return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.entries]

    def transpose(self) -> "QMatrix":
        return QMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.rows)


def row_echelon(entries: List[List[Fraction]], ncols: int):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(entries)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if entries[i][c]), None)
        if piv is None:
            continue
        entries[r], entries[piv] = entries[piv], entries[r]
        inv = 1 / entries[r][c]
        entries[r] = [x * inv for x in entries[r]]
        prow = entries[r]
        for i in range(nrows):
            if i != r and entries[i][c]:
                f = entries[i][c]
                entries[i] = [x - f * y for x, y in zip(entries[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m: QMatrix) -> int:
    work = [list(row) for row in m.entries]
    return len(row_echelon(work, m.cols))


def rank_kernel(m: QMatrix) -> Tuple[int, List[List[Fraction]]]:
    work = [list(row) for row in m.entries]
    pivots = row_echelon(work, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][f]
        basis.append(v)
    return len(pivots), basis


def inverse(m: QMatrix) -> QMatrix:
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.entries)]
    pivots = row_echelon(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return QMatrix([row[n:] for row in aug], n)


def span_rank(vectors: Iterable[Poly]) -> int:
    """Rank of the linear span of a family of polynomials."""
    vectors = list(vectors)
    monos = sorted({m for p in vectors for m in p.terms})
    if not monos:
        return 0
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for p in vectors:
        row = [Fraction(0)] * len(monos)
        for m, c in p.terms.items():
            row[index[m]] = c
        rows.append(row)
    return rank(QMatrix(rows, len(monos)))


def jacobian_matrix(fs: Sequence[Poly], point: Mapping[VarId, Fraction], variables=None) -> QMatrix:
    if variables is None:
        variables = sorted({v for f in fs for v in f.variables()} | set(point))
    rows = []
    for f in fs:
        rows.append([evaluate(partial_derivative(f, v), point) for v in variables])
    return QMatrix(rows, len(variables))


def jacobian_rank_at(fs: Sequence[Poly], point: Mapping[VarId, Fraction]) -> int:
    for f in fs:
        for v in f.variables():
            if v not in point:
                raise MissingAssignment(v)
    return rank(jacobian_matrix(fs, point))
