import json
import random
from fractions import Fraction

import pytest

from mfquant import serialize as ser
from mfquant.liealg import minimal_setup
from mfquant.loopv import UEAElement, pbw_context, phi_chi
from mfquant.mfshift import Functional, random_regular_chi
from mfquant.poisson import truncated_family
from mfquant.quantize import extract_Q


def test_vacuum_serialization():
    ctx = pbw_context(minimal_setup(3).ge)
    assert ser.serialize(UEAElement.one(ctx)) == b'{"terms":[{"coeff":"1","word":[]}]}'


def test_single_letter():
    ge = minimal_setup(3).ge
    ctx = pbw_context(ge)
    data = ser.to_data(UEAElement.letter(ctx, ge.index("e32")))
    assert data == {"terms": [{"coeff": "1", "word": [["e32", 1]]}]}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_Q_roundtrip(n):
    ctx = pbw_context(minimal_setup(n).ge)
    for q in extract_Q(n):
        raw = ser.serialize(q)
        back = ser.loads_uea(raw, ctx)
        assert back == q
        assert ser.serialize(back) == raw


def test_random_uea_roundtrip():
    ge = minimal_setup(4).ge
    ctx = pbw_context(ge)
    rng = random.Random(0)
    for _ in range(50):
        a = UEAElement.zero(ctx)
        for _ in range(3):
            t = UEAElement.scalar(ctx, Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            for _ in range(rng.randint(0, 3)):
                t = t * UEAElement.letter(ctx, rng.randrange(ge.dim), rng.randint(1, 3))
            a = a + t
        assert ser.loads_uea(ser.serialize(a), ctx) == a


def test_poly_roundtrip():
    s = minimal_setup(4)
    for p in truncated_family(s).polys:
        raw = ser.serialize(p)
        assert ser.loads_poly(raw, s.ge) == p
    data = json.loads(ser.serialize(truncated_family(s).polys[1]))
    mono = data["terms"][0]["monomial"][0]
    assert isinstance(mono[0], str) and mono[1] == 1 and mono[2] == 1


def test_laurent_and_functional_roundtrip():
    s = minimal_setup(3)
    chi = random_regular_chi(s.ge, 3, 1)
    a = phi_chi(extract_Q(3)[1], chi)
    fin = pbw_context(s.ge, loop=False)
    assert ser.laurent_from_data(json.loads(ser.serialize(a)), fin) == a
    assert ser.functional_from_data(json.loads(ser.serialize(chi)), s.ge) == chi
    assert ser.functional_from_data([1, 2, 3, 4, 5], s.ge) == Functional(s.ge, [1, 2, 3, 4, 5])


def test_stable_bytes():
    q = extract_Q(4)[2]
    assert ser.serialize(q) == ser.serialize(q)
    assert ser.serialize(q, "text") == str(q).encode()
    with pytest.raises(ValueError):
        ser.serialize(q, "xml")
