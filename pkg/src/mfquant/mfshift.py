"""Argument shifts and Mishchenko-Fomenko subalgebras of S(g^e)."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .foundations import Poly, VarId, as_fraction, jacobian_rank_at, partial_derivative, rank
from .liealg import LieAlgebra, bracket_matrix, random_functional_values
from .poisson import InvariantFamily, lie_poisson_bracket


class RegularityError(ValueError):
    pass


class Functional:
    """Rational linear functional on a Lie algebra, by its values on the basis."""

    def __init__(self, algebra: LieAlgebra, values: Sequence):
        if len(values) != algebra.dim:
            raise ValueError("functional needs %d values, got %d" % (algebra.dim, len(values)))
        self.algebra = algebra
        self.values = [as_fraction(v) for v in values]

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "Functional":
        return cls(algebra, [0] * algebra.dim)

    def __getitem__(self, label):
        if isinstance(label, str):
            label = self.algebra.index(label)
        return self.values[label]

    def __eq__(self, other):
        return isinstance(other, Functional) and self.values == other.values

    def __repr__(self):
        return "Functional(%s)" % ", ".join("%s=%s" % (l, v) for l, v in
                                           zip(self.algebra.labels, self.values))


def shift_derivative(F: Poly, chi: Functional, j: int = 1) -> Poly:
    """j-fold directional derivative D_chi^j along chi."""
    if j < 0:
        raise ValueError("j must be non-negative")
    out = F
    for _ in range(j):
        acc = Poly({}, F.algebra)
        for v in out.variables():
            c = chi.values[v.gen] if v.depth == 1 else 0
            if c:
                acc = acc + partial_derivative(out, v).scale(c)
        out = acc
        if not out:
            break
    return out


def chi_corank(chi: Functional, g: LieAlgebra) -> int:
    return g.dim - rank(bracket_matrix(g, chi.values))


def chi_regular(chi: Functional, g: LieAlgebra, ell: int) -> bool:
    return chi_corank(chi, g) == ell


def random_regular_chi(g: LieAlgebra, ell: int, seed: int, retries: int = 50) -> Functional:
    rng = random.Random(seed)
    for _ in range(retries):
        chi = Functional(g, random_functional_values(g.dim, rng))
        if chi_regular(chi, g, ell):
            return chi
    raise RegularityError("no regular functional found in %d draws" % retries)


@dataclass
class MFAlgebra:
    algebra: LieAlgebra
    generators: List[Poly]
    labels: List[Tuple[int, int]]
    nonzero_brackets: List[Tuple[int, int, Poly]] = field(default_factory=list)

    @property
    def commutative(self) -> bool:
        return not self.nonzero_brackets


def mf_generators(family: InvariantFamily, chi: Functional, ell: Optional[int] = None,
                  allow_singular: bool = False, check: bool = True) -> MFAlgebra:
    g = family.algebra
    if ell is None:
        ell = len(family.polys)
    if not allow_singular and not chi_regular(chi, g, ell):
        raise RegularityError("chi is not regular (corank %d, index %d)" % (chi_corank(chi, g), ell))
    gens, labels = [], []
    for i, (P, d) in enumerate(zip(family.polys, family.degrees), start=1):
        for j in range(d):
            Dj = shift_derivative(P, chi, j)
            if Dj:
                gens.append(Dj)
                labels.append((i, j))
    alg = MFAlgebra(g, gens, labels)
    if check:
        for a, b in itertools.combinations(range(len(gens)), 2):
            br = lie_poisson_bracket(gens[a], gens[b], g)
            if br:
                alg.nonzero_brackets.append((a, b, br))
    return alg


def random_point(g: LieAlgebra, rng: random.Random) -> Dict[VarId, Fraction]:
    return {VarId(1, k): Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for k in range(g.dim)}


def independence_check(alg: MFAlgebra, trials: int = 3, seed: int = 0) -> bool:
    rng = random.Random(seed)
    for _ in range(trials):
        if jacobian_rank_at(alg.generators, random_point(alg.algebra, rng)) == len(alg.generators):
            return True
    return False
