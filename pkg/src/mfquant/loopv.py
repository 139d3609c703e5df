"""PBW-ordered enveloping algebras and the vacuum module of the loop algebra.

Two product rules share one implementation:

* ``loop`` mode: letters are loop generators ``x_(-m)`` of ``q[t^-1]t^-1``
  with ``[x_(-m), y_(-k)] = [x,y]_(-m-k)``; this is ``U(q_-)`` and, through
  ``V(q) = U(q_-)``, the vacuum module.
* finite mode: letters are basis elements of ``q`` itself (stored with depth
  1) and the bracket keeps depth 1; this is ``U(q)``.

Words are tuples of :class:`VarId`; a word is ordered when nondecreasing in
``(position of gen, depth)``.  The position defaults to the basis index and can
be overridden by an algebra attribute ``pbw_order`` (a permutation of range(dim)).
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .foundations import Poly, VarId, _join_signed, as_fraction
from .liealg import BilinearForm, LieAlgebra

Word = Tuple[VarId, ...]
Terms = Dict[Word, Fraction]


def _acc(out: Terms, c: Fraction, terms: Mapping[Word, Fraction]) -> None:
    for w, x in terms.items():
        s = out.get(w, 0) + c * x
        if s:
            out[w] = s
        else:
            out.pop(w, None)


class PBW:
    """Normal-ordering engine for ``U(q_-)`` (loop) or ``U(q)`` (finite)."""

    def __init__(self, algebra: LieAlgebra, loop: bool):
        self.algebra = algebra
        self.loop = loop
        self._pos = list(getattr(algebra, "pbw_order", None) or range(algebra.dim))
        self._left: Dict[Tuple[VarId, Word], Terms] = {}
        self._prod: Dict[Tuple[Word, Word], Terms] = {}

    def key(self, v: VarId) -> Tuple[int, int]:
        return self._pos[v.gen], v.depth

    def word_key(self, w: Word):
        return tuple(self.key(v) for v in w)

    def bracket_letters(self, a: VarId, b: VarId) -> List[Tuple[VarId, Fraction]]:
        depth = a.depth + b.depth if self.loop else 1
        return [(VarId(depth, k), c) for k, c in self.algebra.bracket_basis(a.gen, b.gen).items()]

    def left_mul_letter(self, g: VarId, w: Word) -> Terms:
        """Normal form of ``g * w`` for an ordered word ``w``."""
        if not w or self.key(g) <= self.key(w[0]):
            return {(g,) + w: Fraction(1)}
        key = (g, w)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        # g w0 w' = w0 (g w') + [g, w0] w'
        out: Terms = {}
        head, rest = w[0], w[1:]
        for word, c in self.left_mul_letter(g, rest).items():
            _acc(out, c, self.left_mul_letter(head, word))
        for h, c in self.bracket_letters(g, head):
            _acc(out, c, self.left_mul_letter(h, rest))
        self._left[key] = out
        return out

    def mul_words(self, a: Word, b: Word) -> Terms:
        """Normal form of ``a * b`` where ``b`` is ordered."""
        if not a:
            return {b: Fraction(1)}
        key = (a, b)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        cur: Terms = {b: Fraction(1)}
        for letter in reversed(a):
            nxt: Terms = {}
            for w, c in cur.items():
                _acc(nxt, c, self.left_mul_letter(letter, w))
            cur = nxt
        self._prod[key] = cur
        return cur

    def normal_form(self, word: Sequence[VarId]) -> Terms:
        return self.mul_words(tuple(word), ())

    def is_ordered(self, word: Word) -> bool:
        return all(self.key(a) <= self.key(b) for a, b in zip(word, word[1:]))


def pbw_context(algebra: LieAlgebra, loop: bool = True) -> PBW:
    attr = "_pbw_loop" if loop else "_pbw_finite"
    ctx = getattr(algebra, attr, None)
    if ctx is None:
        ctx = PBW(algebra, loop)
        setattr(algebra, attr, ctx)
    return ctx


class UEAElement:
    """Rational combination of ordered PBW words."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PBW, terms: Optional[Mapping[Word, Fraction]] = None, ordered: bool = False):
        self.ctx = ctx
        if ordered:
            self.terms = {w: as_fraction(c) for w, c in (terms or {}).items() if c}
        else:
            out: Terms = {}
            for w, c in (terms or {}).items():
                if c:
                    w = tuple(w)
                    if ctx.is_ordered(w):
                        _acc(out, as_fraction(c), {w: Fraction(1)})
                    else:
                        _acc(out, as_fraction(c), ctx.normal_form(w))
            self.terms = out

    @classmethod
    def one(cls, ctx: PBW) -> "UEAElement":
        return cls(ctx, {(): Fraction(1)}, ordered=True)

    @classmethod
    def zero(cls, ctx: PBW) -> "UEAElement":
        return cls(ctx, {}, ordered=True)

    @classmethod
    def letter(cls, ctx: PBW, gen: int, depth: int = 1, coeff=1) -> "UEAElement":
        return cls(ctx, {(VarId(depth, gen),): as_fraction(coeff)}, ordered=True)

    @classmethod
    def scalar(cls, ctx: PBW, c) -> "UEAElement":
        return cls(ctx, {(): as_fraction(c)}, ordered=True)

    def _check(self, other: "UEAElement") -> None:
        if other.ctx is not self.ctx:
            raise ValueError("enveloping-algebra elements over different contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.scalar(self.ctx, other)
        self._check(other)
        out = dict(self.terms)
        _acc(out, Fraction(1), other.terms)
        return UEAElement(self.ctx, out, ordered=True)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.ctx, {w: -c for w, c in self.terms.items()}, ordered=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.scalar(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "UEAElement":
        c = as_fraction(c)
        return UEAElement(self.ctx, {w: c * x for w, x in self.terms.items()} if c else {}, ordered=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        self._check(other)
        out: Terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                _acc(out, ca * cb, self.ctx.mul_words(a, b))
        return UEAElement(self.ctx, out, ordered=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.scalar(self.ctx, other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> List[int]:
        return sorted({sum(v.depth for v in w) for w in self.terms})

    def max_weight(self) -> int:
        return max((sum(v.depth for v in w) for w in self.terms), default=0)

    def weight_component(self, j: int) -> "UEAElement":
        return UEAElement(self.ctx, {w: c for w, c in self.terms.items()
                                     if sum(v.depth for v in w) == j}, ordered=True)

    def degree(self) -> int:
        """PBW filtration degree (maximal word length)."""
        return max((len(w) for w in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), self.ctx.word_key(wc[0])))

    def scalar_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __str__(self):
        return format_uea(self)

    def __repr__(self):
        return "UEAElement(%s)" % format_uea(self)


def format_word(w: Word, labels: Sequence[str], loop: bool) -> str:
    if loop:
        return "".join("(%s)_(-%d)" % (labels[v.gen], v.depth) for v in w)
    return "*".join(labels[v.gen] for v in w)


def format_uea(a: UEAElement) -> str:
    if not a.terms:
        return "0"
    labels = a.ctx.algebra.labels
    parts = [(c, format_word(w, labels, a.ctx.loop)) for w, c in a.sorted_terms()]
    return _join_signed(parts, "" if a.ctx.loop else "*")


def pbw_normal_form(ctx: PBW, word: Sequence[VarId], coeff=1) -> UEAElement:
    return UEAElement(ctx, {tuple(word): as_fraction(coeff)})


def rewrite_normal_form(ctx: PBW, word: Sequence[VarId], rng: random.Random) -> Terms:
    """Naive rewriting at randomly chosen descents; independent of :class:`PBW` caches."""
    pending: Terms = {tuple(word): Fraction(1)}
    done: Terms = {}
    while pending:
        w, c = pending.popitem()
        descents = [k for k in range(len(w) - 1) if ctx.key(w[k]) > ctx.key(w[k + 1])]
        if not descents:
            _acc(done, c, {w: Fraction(1)})
            continue
        k = rng.choice(descents)
        a, b = w[k], w[k + 1]
        swapped = w[:k] + (b, a) + w[k + 2:]
        _acc(pending, c, {swapped: Fraction(1)})
        for h, x in ctx.bracket_letters(a, b):
            _acc(pending, c * x, {w[:k] + (h,) + w[k + 2:]: Fraction(1)})
    return done


# ---------------------------------------------------------------------------
# vacuum module


class VacuumModule:
    """``V^kappa(q)`` realised on ordered words of ``U(q_-)``.

    ``x t^n`` (n >= 0) acts through ``[x t^n, y t^-m] = [x,y] t^(n-m) + m kappa(x,y) d_{n,m}``
    and kills the vacuum.
    """

    def __init__(self, algebra: LieAlgebra, kappa: BilinearForm):
        if kappa.algebra is not algebra:
            raise ValueError("level form lives on a different algebra")
        self.algebra = algebra
        self.kappa = kappa
        self.ctx = pbw_context(algebra, loop=True)
        self._act: Dict[Tuple[int, int, Word], Terms] = {}

    def act_word(self, x: int, n: int, w: Word) -> Terms:
        key = (x, n, w)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        out: Terms = {}
        if n <= sum(v.depth for v in w):
            alg = self.algebra
            for k, y in enumerate(w):
                prefix, suffix = w[:k], w[k + 1:]
                shift = n - y.depth
                for z, c in alg.bracket_basis(x, y.gen).items():
                    if shift < 0:
                        _acc(out, c, self.ctx.normal_form(prefix + (VarId(-shift, z),) + suffix))
                    else:
                        for ww, cc in self.act_word(z, shift, suffix).items():
                            _acc(out, c * cc, self.ctx.mul_words(prefix, ww))
                if shift == 0:
                    central = y.depth * self.kappa(x, y.gen)
                    if central:
                        _acc(out, central, {prefix + suffix: Fraction(1)})
        self._act[key] = out
        return out

    def vacuum_action(self, x: int, n: int, v: UEAElement) -> UEAElement:
        if n < 0:
            raise ValueError("only non-negative modes annihilate the vacuum")
        out: Terms = {}
        for w, c in v.terms.items():
            _acc(out, c, self.act_word(x, n, w))
        return UEAElement(self.ctx, out, ordered=True)

    def annihilation_residues(self, v: UEAElement):
        """Yield ``(x, n, x t^n v)`` for every nonzero result with n <= weight(v)."""
        top = v.max_weight()
        for x in range(self.algebra.dim):
            for n in range(top + 1):
                r = self.vacuum_action(x, n, v)
                if r:
                    yield x, n, r

    def is_center_vacuum(self, v: UEAElement) -> bool:
        # x t^n lowers weight by n, so modes above the top weight act by zero
        return next(self.annihilation_residues(v), None) is None


# ---------------------------------------------------------------------------
# translation, symbols, classical action


def translation_T(a):
    """Derivation with ``T x_(-m) = m x_(-m-1)`` on UEAElement or Poly."""
    if isinstance(a, UEAElement):
        out: Terms = {}
        for w, c in a.terms.items():
            for k, v in enumerate(w):
                nw = w[:k] + (VarId(v.depth + 1, v.gen),) + w[k + 1:]
                _acc(out, c * v.depth, a.ctx.normal_form(nw))
        return UEAElement(a.ctx, out, ordered=True)
    if isinstance(a, Poly):
        out_p: Dict = {}
        for m, c in a.terms.items():
            for k, (v, e) in enumerate(m):
                rest = dict(m)
                if e == 1:
                    del rest[v]
                else:
                    rest[v] = e - 1
                up = VarId(v.depth + 1, v.gen)
                rest[up] = rest.get(up, 0) + 1
                nm = tuple(sorted(rest.items()))
                out_p[nm] = out_p.get(nm, 0) + c * e * v.depth
        return Poly(out_p, a.algebra)
    raise TypeError("T acts on UEAElement or Poly, not %r" % type(a))


def word_to_monomial(w: Word):
    d: Dict[VarId, int] = {}
    for v in w:
        d[v] = d.get(v, 0) + 1
    return tuple(sorted(d.items()))


def commutative_image(a: UEAElement) -> Poly:
    out: Dict = {}
    for w, c in a.terms.items():
        m = word_to_monomial(w)
        out[m] = out.get(m, 0) + c
    return Poly(out, a.ctx.algebra)


def li_symbol(v: UEAElement) -> Poly:
    """Image in gr V = S(q_-): top word-length part of each weight component."""
    out = Poly({}, v.ctx.algebra)
    for j in v.weights():
        comp = v.weight_component(j)
        top = comp.degree()
        out = out + commutative_image(UEAElement(
            v.ctx, {w: c for w, c in comp.terms.items() if len(w) == top}, ordered=True))
    return out


def pbw_symbol(a: UEAElement) -> Poly:
    """Symbol in S(q) = gr U(q): top-degree part, read commutatively."""
    top = a.degree()
    return commutative_image(UEAElement(a.ctx, {w: c for w, c in a.terms.items() if len(w) == top},
                                        ordered=True))


def classical_action(algebra: LieAlgebra, x: int, n: int, p: Poly) -> Poly:
    """``x t^n`` acting on S(q_-) as a derivation; modes landing in q[t] vanish."""
    if n < 0:
        raise ValueError("classical action is defined for n >= 0")
    out: Dict = {}
    for m, c in p.terms.items():
        for k, (y, e) in enumerate(m):
            shift = n - y.depth
            if shift > -1:
                continue
            br = algebra.bracket_basis(x, y.gen)
            if not br:
                continue
            rest = dict(m)
            if e == 1:
                del rest[y]
            else:
                rest[y] = e - 1
            for z, cz in br.items():
                r2 = dict(rest)
                zv = VarId(-shift, z)
                r2[zv] = r2.get(zv, 0) + 1
                nm = tuple(sorted(r2.items()))
                out[nm] = out.get(nm, 0) + c * e * cz
    return Poly(out, p.algebra)


# ---------------------------------------------------------------------------
# U(q) tensored with polynomials in u^-1


class LaurentUEA:
    """Finite sum ``sum_m a_m u^-m`` with ``a_m`` in U(q) (finite mode), m >= 0."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: PBW, coeffs: Optional[Mapping[int, UEAElement]] = None):
        self.ctx = ctx
        self.coeffs = {m: a for m, a in (coeffs or {}).items() if a}

    @classmethod
    def scalar(cls, ctx, c) -> "LaurentUEA":
        return cls(ctx, {0: UEAElement.scalar(ctx, c)})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentUEA.scalar(self.ctx, other)
        out = dict(self.coeffs)
        for m, a in other.coeffs.items():
            out[m] = out[m] + a if m in out else a
        return LaurentUEA(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentUEA(self.ctx, {m: -a for m, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LaurentUEA(self.ctx, {m: a.scale(c) for m, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentUEA):
            return NotImplemented
        out: Dict[int, UEAElement] = {}
        for m, a in self.coeffs.items():
            for k, b in other.coeffs.items():
                p = a * b
                out[m + k] = out[m + k] + p if m + k in out else p
        return LaurentUEA(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentUEA):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, m: int) -> UEAElement:
        """Coefficient of u^-m."""
        return self.coeffs.get(m, UEAElement.zero(self.ctx))

    def neg_d_du(self) -> "LaurentUEA":
        """``-d/du`` sends ``u^-m`` to ``m u^-m-1``."""
        return LaurentUEA(self.ctx, {m + 1: a.scale(m) for m, a in self.coeffs.items() if m})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, reverse=True):
            body = format_uea(self.coeffs[m])
            if m:
                parts.append("(%s)*u^-%d" % (body, m))
            else:
                parts.append("(%s)" % body)
        return " + ".join(parts)

    __repr__ = __str__


def _chi_values(chi) -> Sequence[Fraction]:
    return chi.values if hasattr(chi, "values") else chi


def phi_letter(ctx_fin: PBW, v: VarId, chi) -> LaurentUEA:
    vals = _chi_values(chi)
    coeffs = {v.depth: UEAElement.letter(ctx_fin, v.gen)}
    if v.depth == 1 and vals[v.gen]:
        coeffs[0] = UEAElement.scalar(ctx_fin, vals[v.gen])
    return LaurentUEA(ctx_fin, coeffs)


def phi_chi(a: UEAElement, chi) -> LaurentUEA:
    """``x_(-m) -> u^-m x + d_{m,1} chi(x)``, extended multiplicatively."""
    if not a.ctx.loop:
        raise ValueError("phi_chi acts on U(q_-)")
    fin = pbw_context(a.ctx.algebra, loop=False)
    total = LaurentUEA(fin)
    cache: Dict[VarId, LaurentUEA] = {}
    for w, c in a.terms.items():
        term = LaurentUEA.scalar(fin, c)
        for v in w:
            if v not in cache:
                cache[v] = phi_letter(fin, v, chi)
            term = term * cache[v]
        total = total + term
    return total


def phi_chi_coeff(a: UEAElement, chi, n: int) -> UEAElement:
    return phi_chi(a, chi).coeff(n)


def phi_bar(p: Poly, chi) -> Dict[int, Poly]:
    """Commutative counterpart of phi_chi: returns {m: coefficient of u^-m}."""
    vals = _chi_values(chi)
    out: Dict[int, Poly] = {}
    for mono, c in p.terms.items():
        term = {0: Poly.const(c)}
        for v, e in mono:
            img = {v.depth: Poly.var(v.gen)}
            if v.depth == 1 and vals[v.gen]:
                img[0] = Poly.const(vals[v.gen])
            for _ in range(e):
                nxt: Dict[int, Poly] = {}
                for a, pa in term.items():
                    for b, pb in img.items():
                        nxt[a + b] = nxt[a + b] + pa * pb if a + b in nxt else pa * pb
                term = nxt
        for m, q in term.items():
            out[m] = out[m] + q if m in out else q
    return {m: q.with_algebra(p.algebra) for m, q in out.items() if q}


def phi_bar_coeff(p: Poly, chi, n: int) -> Poly:
    return phi_bar(p, chi).get(n, Poly({}, p.algebra))
