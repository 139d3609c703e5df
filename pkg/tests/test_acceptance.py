"""Acceptance suite: one PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) or through pytest, which
shows the same lines in its output.
"""
import sys
import time

import pytest

from mfquant import checks

SEED = 7

CRITERIA = [
    (1, "golden Q_i for n=3,4, byte-exact", lambda: checks.check_golden()),
    (2, "Q_i central at kappa_ec, n=3,4; T(Q_i) central, n=3", lambda: checks.check_centrality()),
    (3, "A_i^(j) commute, counts 4 and 7, three seeds", lambda: checks.check_quantized_commutativity(SEED)),
    (4, "A_i = phi_chi(Q_i), n=3,4, display misprints flagged", lambda: checks.check_cross(SEED)),
    (5, "classical layer: invariance, good systems, MF", lambda: checks.check_classical(SEED)),
    (6, "gr-consistency of A with MF, n=3", lambda: checks.check_gr(SEED, (3,))),
    (7, "jet invariance of T^j sigma(Q_i), j<=2, n=3", lambda: checks.check_jets((3,))),
    (8, "index of g^e equals n, n=2..5", lambda: checks.check_index(SEED)),
    (9, "C2 fixture", lambda: checks.check_c2(SEED)),
    (10, "structural property suites, 100 instances each", lambda: checks.check_properties(SEED, 100)),
]


def evaluate(number):
    _, title, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    results = fn()
    elapsed = time.perf_counter() - t0
    failed = [c for c in results if c.status == checks.FAIL]
    flagged = [c for c in results if c.status == checks.FLAGGED]
    tag = "FAIL" if failed or not results else "PASS"
    line = "%s  criterion %2d: %s (%d checks, %d flagged, %.2fs)" % (
        tag, number, title, len(results), len(flagged), elapsed)
    return line, failed, flagged, elapsed


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    line, failed, flagged, elapsed = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
        for c in failed + flagged:
            print("      " + c.line()[:400])
    assert not failed, [c.line() for c in failed]
    if number == 1:
        assert elapsed < 1.0
    if number == 4:
        # both misprinted closed forms are reported, not silently resolved
        assert len(flagged) == 2


if __name__ == "__main__":
    bad = 0
    for number, _, _ in CRITERIA:
        line, failed, flagged, _ = evaluate(number)
        print(line)
        bad += bool(failed)
    sys.exit(1 if bad else 0)
