"""Reference closed forms for Q_i and A_i at n = 3, 4.

Each expression is rebuilt term by term from its displayed column
determinants (products taken in column order), independently of the
``quantize`` machinery, so the two can be compared after PBW ordering.
"""
from __future__ import annotations

import itertools
from typing import List, Sequence

from .liealg import minimal_setup
from .loopv import LaurentUEA, UEAElement, pbw_context
from .mfshift import Functional


def _col_det(m: Sequence[Sequence]):
    n = len(m)
    total = None
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = m[perm[0]][0]
        for c in range(1, n):
            term = term * m[perm[c]][c]
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


def reference_Q(n: int) -> List[UEAElement]:
    if n not in (3, 4):
        raise ValueError("closed forms are recorded for n = 3, 4 only")
    setup = minimal_setup(n)
    ctx = pbw_context(setup.ge, loop=True)

    def x(ij: str, m: int = 1) -> UEAElement:
        return UEAElement.letter(ctx, setup.ge.index("e" + ij), m)

    if n == 3:
        q1 = x("32")
        q2 = x("11") * x("32") - x("31") * x("12") + x("32", 2)
        return [q1, q2]
    q1 = x("43")
    q2 = (_col_det([[x("11"), x("13")], [x("41"), x("43")]])
          + _col_det([[x("22"), x("23")], [x("42"), x("43")]])
          + x("43", 2).scale(2))
    q3 = (_col_det([[x("11"), x("12"), x("13")],
                    [x("21"), x("22"), x("23")],
                    [x("41"), x("42"), x("43")]])
          + _col_det([[x("11"), x("13", 2)], [x("41"), x("43", 2)]])
          + _col_det([[x("22", 2), x("23")], [x("42", 2), x("43")]])
          + _col_det([[x("22"), x("23", 2)], [x("42"), x("43", 2)]])
          + x("43", 3).scale(2))
    return [q1, q2, q3]


def reference_A(n: int, chi: Functional, as_printed: bool = False) -> List[LaurentUEA]:
    """A_1..A_{n-1}.  ``as_printed`` keeps the misprinted indices of the display:
    ``e31 u^-2`` in A_2 (n=3) and ``chi_41`` in place of ``chi_42`` (n=4)."""
    if n not in (3, 4):
        raise ValueError("closed forms are recorded for n = 3, 4 only")
    setup = minimal_setup(n)
    fin = pbw_context(setup.ge, loop=False)

    def lin(ij: str, m: int = 1, chi_ij: str = None) -> LaurentUEA:
        gen = setup.ge.index("e" + ij)
        coeffs = {m: UEAElement.letter(fin, gen)}
        if m == 1:
            c = chi["e" + (chi_ij or ij)]
            if c:
                coeffs[0] = UEAElement.scalar(fin, c)
        return LaurentUEA(fin, coeffs)

    if n == 3:
        a1 = lin("32")
        a2 = (_col_det([[lin("11"), lin("12")], [lin("31"), lin("32")]])
              + lin("31" if as_printed else "32", 2))
        return [a1, a2]
    chi42 = "41" if as_printed else "42"
    a1 = lin("43")
    a2 = (_col_det([[lin("11"), lin("13")], [lin("41"), lin("43")]])
          + _col_det([[lin("22"), lin("23")], [lin("42", chi_ij=chi42), lin("43")]])
          + lin("43", 2).scale(2))
    a3 = (_col_det([[lin("11"), lin("12"), lin("13")],
                    [lin("21"), lin("22"), lin("23")],
                    [lin("41"), lin("42"), lin("43")]])
          + _col_det([[lin("11"), lin("13", 2)], [lin("41"), lin("43", 2)]])
          + _col_det([[lin("22", 2), lin("23")], [lin("42", 2), lin("43")]])
          + _col_det([[lin("22"), lin("23", 2)], [lin("42"), lin("43", 2)]])
          + lin("43", 3).scale(2))
    return [a1, a2, a3]
