"""Acceptance criteria: one exact check group per criterion, one summary line each.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.
"""
import sys

import pytest

from braidweyl.verify import CRITERIA

TITLES = {
    1: "relation generation reproduces the printed q-case relations",
    2: "q -> 1 limit, commuting derivatives, compact basis",
    3: "16 permutation rows for k = 0..6",
    4: "derivative actions: powers, generator values, decomposable elements",
    5: "coproduct Leibniz rule over the q -> 1 table",
    6: "ordered exponentials are eigenfunctions",
    7: "de Rham differential squares to zero",
    8: "Cayley-Hamilton identity and traces of powers",
    9: "Pi matrix identity, spectrum, Lagrange-Sylvester",
    10: "radial part: closed formulas, Delta(Cas), classical limit",
    11: "Poisson pencil: extracted tables, Jacobi, compatibility, report",
    12: "local confluence of the six bundled tables",
}


def summary_line(n, checks):
    ok = all(c.passed for c in checks)
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}"
    if not ok:
        bad = next(c for c in checks if not c.passed)
        line += f"  [{bad.check}: {bad.witness}]"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    checks = CRITERIA[n]()
    ok, line = summary_line(n, checks)
    with capsys.disabled():
        print("\n" + line)
    failed = [f"{c.check}: {c.witness}" for c in checks if not c.passed]
    assert ok, "\n".join(failed)


if __name__ == "__main__":
    results = [summary_line(n, CRITERIA[n]()) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
