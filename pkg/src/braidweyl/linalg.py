"""Sparse exact linear algebra over :class:`~braidweyl.scalars.Scalar`.

Vectors are dicts ``key -> Scalar`` with no stored zeros; keys are anything
hashable (words, exponent tuples).
"""
from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

Vector = Dict[Hashable, Scalar]


def axpy(y: Vector, a: Scalar, x: Vector) -> Vector:
    """Return ``y + a x`` as a new vector."""
    out = dict(y)
    for k, v in x.items():
        s = out.get(k, ZERO) + a * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _weight(c: Scalar) -> int:
    return len(c.num_terms()) + len(c.den_terms())


def rref(rows: Sequence[Vector], column_order: Sequence[Hashable]) -> List[Tuple[Hashable, Vector]]:
    """Reduced row echelon form with pivots searched in ``column_order``.

    Returns ``[(pivot_column, row)]`` with each row normalized to 1 at its
    pivot and zero at every other pivot column.  Columns missing from
    ``column_order`` are never pivots (there are none if the order is complete).
    """
    pending = [dict(r) for r in rows if r]
    done: List[Tuple[Hashable, Vector]] = []
    for col in column_order:
        best = None
        for j, r in enumerate(pending):
            c = r.get(col)
            if c is not None and (best is None or _weight(c) < _weight(pending[best][col])):
                best = j
        if best is None:
            continue
        row = pending.pop(best)
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        pending = [axpy(r, -r[col], row) if col in r else r for r in pending]
        pending = [r for r in pending if r]
        done = [(pc, axpy(r, -r[col], row)) if col in r else (pc, r) for pc, r in done]
        done.append((col, row))
    if pending:
        leftover = sorted({k for r in pending for k in r}, key=repr)
        raise ValueError(f"rows not reduced; column order misses {leftover[:5]}")
    return done


class Decomposer:
    """Express vectors as linear combinations of a fixed basis family."""

    def __init__(self, basis: Sequence[Vector]):
        self.n = len(basis)
        # each reduced vector carries its expression in the original basis
        self._rows: List[Tuple[Hashable, Vector, Dict[int, Scalar]]] = []
        for j, v in enumerate(basis):
            vec, comb = dict(v), {j: ONE}
            vec, comb = self._reduce(vec, comb)
            if not vec:
                raise ValueError(f"basis vector {j} is linearly dependent on the previous ones")
            piv = min(vec, key=repr)
            inv = vec[piv].inverse()
            vec = {k: c * inv for k, c in vec.items()}
            comb = {k: c * inv for k, c in comb.items()}
            self._rows.append((piv, vec, comb))

    def _reduce(self, vec: Vector, comb: Dict[int, Scalar]):
        for piv, row, rcomb in self._rows:
            c = vec.get(piv)
            if c:
                vec = axpy(vec, -c, row)
                comb = axpy(comb, -c, rcomb)
        return vec, comb

    def decompose(self, target: Vector) -> Optional[List[Scalar]]:
        """Coefficients ``c`` with ``target = sum c_j basis_j``, or None."""
        vec, comb = self._reduce(dict(target), {})
        if vec:
            return None
        return [-comb.get(j, ZERO) for j in range(self.n)]


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for k in range(p):
            acc = ZERO
            for j in range(m):
                a = Ai[j]
                if a:
                    b = B[j][k]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def kron(A, B):
    n, m = len(A), len(B)
    return [[A[i // m][j // m] * B[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def mat_add(A, B, b: Scalar = ONE):
    return [[a + b * c for a, c in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_inverse(A):
    n = len(A)
    rows = []
    for i in range(n):
        r = {("a", j): A[i][j] for j in range(n) if A[i][j]}
        r[("e", i)] = ONE
        rows.append(r)
    red = rref(rows, [("a", j) for j in range(n)] + [("e", j) for j in range(n)])
    pivots = {pc: r for pc, r in red}
    if any(("a", j) not in pivots for j in range(n)):
        raise ZeroDivisionError("singular matrix")
    return [[pivots[("a", i)].get(("e", j), ZERO) for j in range(n)] for i in range(n)]


def is_zero_matrix(A) -> bool:
    return all(not c for row in A for c in row)
