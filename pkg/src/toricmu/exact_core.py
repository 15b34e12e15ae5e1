"""Exact rational linear algebra and integer lattice algorithms.

Everything here works on plain Python lists/tuples of ``int`` and
``fractions.Fraction``.  Nothing is ever rounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

from .errors import DegenerateError

Rat = Fraction
Vector = Sequence  # of int or Fraction
Matrix = Sequence[Sequence]


def dot(a: Vector, b: Vector) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def transpose(a: Matrix) -> list[list]:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def frac(q: Fraction) -> Fraction:
    """Fractional part in [0, 1)."""
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def rref(a: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(r) < n:
        raise DegenerateError("singular matrix")
    return [row[n:] for row in r]


def solve(a: Matrix, b: Vector) -> list[Fraction]:
    """Unique solution of ``a x = b``; raises if none or not unique."""
    cols = len(a[0])
    r, pivots = rref([list(row) + [bi] for row, bi in zip(a, b)])
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < cols:
        raise DegenerateError("rank deficient")
    return [r[i][cols] for i in range(cols)]


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : a x = 0}``, in reduced echelon form (rows)."""
    if ncols is None:
        ncols = len(a[0])
    r, pivots = rref(a) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    # re-echelon so leading entries come first and are positive
    echelon, _ = rref(basis)
    return echelon


def primitive(v: Vector, positive: bool = True) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    With ``positive`` the first nonzero entry is made positive.
    """
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive multiple")
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if positive and next(x for x in ints if x != 0) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def int_matrix(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        cur = []
        for x in row:
            q = Fraction(x)
            if q.denominator != 1:
                raise ValueError("non-integer entry")
            cur.append(q.numerator)
        out.append(cur)
    return out


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """``A = U * S * W`` with ``U``, ``W`` unimodular and ``S`` diagonal."""

    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    W: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def snf(a: Matrix) -> SnfResult:
    """Smith normal form with both transforms.

    Invariant maintained throughout: ``input == U * A * W``.
    """
    A = [[int(x) for x in row] for row in a]
    n = len(A)
    m = len(A[0]) if n else 0
    U = identity(n)
    W = identity(m)

    def row_add(i, j, c):  # R_i += c R_j
        A[i] = [x + c * y for x, y in zip(A[i], A[j])]
        for r in range(n):
            U[r][j] -= c * U[r][i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in range(n):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        for r in range(n):
            U[r][i] = -U[r][i]

    def col_add(j, i, c):  # C_j += c C_i
        for r in range(n):
            A[r][j] += c * A[r][i]
        W[i] = [x - c * y for x, y in zip(W[i], W[j])]

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        W[i], W[j] = W[j], W[i]

    for t in range(min(n, m)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, m) if A[i][j]]
            if not entries:
                return _snf_result(U, A, W)
            _, pi, pj = min(entries)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, m):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % A[t][t]),
                None,
            )
            if bad is not None:
                row_add(t, bad, 1)
                continue
            if A[t][t] < 0:
                row_neg(t)
            break
    return _snf_result(U, A, W)


def _snf_result(U, A, W) -> SnfResult:
    return SnfResult(
        tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, W))
    )


def _columns(vectors: Sequence[Vector], n: int | None = None) -> list[list[int]]:
    if not vectors:
        return [[] for _ in range(n or 0)]
    return transpose([[int(x) for x in v] for v in vectors])


def unimodular_completion(vectors: Sequence[Vector], n: int) -> list[list[int]]:
    """Unimodular ``n x n`` matrix whose first ``k`` columns span the
    saturation of the given ``k`` independent integer vectors."""
    k = len(vectors)
    if k == 0:
        return identity(n)
    res = snf(_columns(vectors, n))
    if len(res.invariant_factors) < k:
        raise DegenerateError("rank deficient")
    return [list(row) for row in res.U]


def saturate(vectors: Sequence[Vector], n: int | None = None) -> list[tuple[int, ...]]:
    """Basis of ``span_Q(vectors) ∩ Z^n``."""
    if not vectors:
        return []
    n = len(vectors[0]) if n is None else n
    U = unimodular_completion(vectors, n)
    return [tuple(U[r][c] for r in range(n)) for c in range(len(vectors))]


def coordinates(basis: Sequence[Vector], v: Vector) -> list[Fraction]:
    """Coefficients of ``v`` in the given (independent) vectors."""
    return solve(transpose(basis), v)


# --------------------------------------------------------------------------
# finite quotients N_J / N_{J,V}


@dataclass(frozen=True)
class QuotientGroup:
    """``N_J / N_{J,V}`` with one lift per element.

    ``fractions[h][j]`` is the coefficient of ``v_j`` in ``lifts[h]``; they lie
    in [0, 1), so ``lifts`` are the canonical representatives in the
    half-open fundamental parallelepiped of ``V_J``.
    """

    invariant_factors: tuple[int, ...]
    order: int
    lifts: tuple[tuple[int, ...], ...]
    fractions: tuple[tuple[Fraction, ...], ...]


def quotient_group(vectors: Sequence[Vector], n: int | None = None) -> QuotientGroup:
    vectors = [tuple(int(x) for x in v) for v in vectors]
    k = len(vectors)
    if k == 0:
        return QuotientGroup((), 1, ((0,) * (n or 0),), ((),))
    n = len(vectors[0]) if n is None else n
    basis = saturate(vectors, n)
    # A[l][j]: coordinate of v_j along basis_l
    A = transpose([coordinates(basis, v) for v in vectors])
    A = int_matrix(A)
    res = snf(A)
    factors = tuple(res.diagonal)
    if any(d == 0 for d in factors):
        raise DegenerateError("rank deficient")
    lifts, fracs = [], []
    for t in product(*(range(d) for d in factors)):
        y = [sum(res.U[l][i] * t[i] for i in range(k)) for l in range(k)]
        v = [sum(y[l] * basis[l][r] for l in range(k)) for r in range(n)]
        a = [frac(c) for c in coordinates(vectors, v)]
        lift = [sum(a[j] * vectors[j][r] for j in range(k)) for r in range(n)]
        lifts.append(tuple(int(x) for x in lift))
        fracs.append(tuple(a))
    return QuotientGroup(factors, prod(factors), tuple(lifts), tuple(fracs))


def dual_basis(vectors: Sequence[Vector]) -> list[tuple[Fraction, ...]]:
    """Rows ``u_i`` with ``<u_i, v_j> = delta_ij`` for a square configuration."""
    n = len(vectors)
    if any(len(v) != n for v in vectors):
        raise DegenerateError("degenerate cone")
    try:
        inv = inverse(transpose(vectors))
    except DegenerateError:
        raise DegenerateError("degenerate cone") from None
    return [tuple(row) for row in inv]


def annihilator(vectors: Sequence[Vector], n: int) -> list[tuple[Fraction, ...]]:
    """Oriented basis of the annihilator of ``span(vectors)`` in ``M_Q``.

    Rows are in reduced echelon order, each scaled to a primitive integer
    vector with positive leading entry.  The orientation is this fixed
    convention; only orientation-invariant quantities are consumed.
    """
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rows = nullspace([list(v) for v in vectors], n)
    return [tuple(Fraction(x) for x in primitive(r)) for r in rows]


def wedge_pairing(u: Vector, m_basis: Sequence[Vector], e_basis: Sequence[Vector]) -> Fraction:
    """``<u ∧ u_1 ∧ ... ∧ u_{r}, w_1 ∧ ... ∧ w_{r+1}>`` as a determinant."""
    if len(e_basis) != len(m_basis) + 1:
        raise ValueError("dimension mismatch")
    rows = [list(u)] + [list(b) for b in m_basis]
    return det([[dot(r, w) for w in e_basis] for r in rows])
