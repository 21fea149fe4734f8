"""
Exact integer and rational linear algebra.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Nothing in here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list  # list of rows
Vector = tuple


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def transpose(M: Sequence[Sequence], cols: Optional[int] = None) -> list[list]:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(A[0])
    cols = len(B[0]) if B else 0
    if inner != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{inner} @ {len(B)}x{cols}")
    Bt = transpose(B, cols)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def to_fraction_matrix(M: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# Rational row reduction

def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with left-most pivots."""
    A = to_fraction_matrix(M)
    rows, cols = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rational_rank(M: Sequence[Sequence]) -> int:
    """Exact rank over Q."""
    if not M or not M[0]:
        return 0
    return _int_rank([list(row) for row in M]) if _all_int(M) else len(rref(M)[1])


def _all_int(M) -> bool:
    return all(isinstance(x, int) for row in M for x in row)


def _int_rank(A: list[list[int]]) -> int:
    # fraction-free (Bareiss) elimination, much faster than Fractions for
    # the small 0/±1 boundary matrices of simplicial complexes
    rows, cols = shape(A)
    rank = 0
    prev = 1
    for c in range(cols):
        p = next((i for i in range(rank, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        piv = A[rank][c]
        for i in range(rank + 1, rows):
            a = A[i][c]
            if a == 0:
                A[i] = [(piv * x) // prev for x in A[i]]
                continue
            A[i] = [(piv * x - a * y) // prev for x, y in zip(A[i], A[rank])]
        prev = piv
        rank += 1
        if rank == rows:
            break
    return rank


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """
    Solve ``A x = b`` exactly.

    Returns None when the system is inconsistent. For underdetermined systems
    the free variables (non-pivot columns of the reduced echelon form, pivots
    chosen left-most first) are set to zero, which makes the answer
    deterministic.
    """
    rows = len(A)
    if rows != len(b):
        raise ValueError("row count of A and length of b differ")
    cols = len(A[0]) if rows else 0
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = R[r][cols]
    return tuple(x)


def nullspace(M: Sequence[Sequence], cols: Optional[int] = None) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel, one vector per free column."""
    if not M:
        n = cols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, pivots = rref(M)
    n = len(M[0])
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r][free]
        basis.append(tuple(v))
    return basis


def det(M: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant (Bareiss for integer input)."""
    n = len(M)
    if n == 0:
        return 1
    if _all_int(M):
        A = [list(row) for row in M]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if p is None:
                    return 0
                A[k], A[p] = A[p], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = to_fraction_matrix(M)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        result *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(M[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def integer_inverse(M: Sequence[Sequence[int]]) -> list[list[int]]:
    inv = inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms

@dataclass(frozen=True)
class SNFResult:
    U: list
    V: list
    D: list
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> SNFResult:
    """
    Smith normal form with transforms: ``U @ M @ V == D``.

    Pivoting always moves the nonzero entry of smallest absolute value to the
    diagonal; the first such entry in row-major order wins ties.
    """
    m = len(M)
    n = len(M[0]) if m else (cols or 0)
    A = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        clean = True
        p = A[t][t]
        for i in range(t + 1, m):
            if A[i][t]:
                add_row(i, t, -(A[i][t] // p))
                clean = clean and A[i][t] == 0
        for j in range(t + 1, n):
            if A[t][j]:
                add_col(j, t, -(A[t][j] // p))
                clean = clean and A[t][j] == 0
        if not clean:
            continue
        bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                    if A[i][j] % p), None)
        if bad is not None:
            add_row(t, bad[0], 1)
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i] != 0)
    return SNFResult(U=U, V=V, D=A, invariant_factors=factors)


def hermite_rows(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """
    Row-style Hermite normal form of an integer matrix, zero rows dropped.

    The result is the unique echelon basis of the row lattice with positive
    pivots and entries above each pivot reduced into ``[0, pivot)``.
    """
    A = [[int(x) for x in row] for row in M]
    rows, cols = shape(A)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if A[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(A[k][c]))
            A[r], A[i] = A[i], A[r]
            done = True
            for k in range(r + 1, rows):
                if A[k][c]:
                    q = A[k][c] // A[r][c]
                    A[k] = [x - q * y for x, y in zip(A[k], A[r])]
                    done = done and A[k][c] == 0
            if done:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for k in range(r):
            q = A[k][c] // A[r][c]
            if q:
                A[k] = [x - q * y for x, y in zip(A[k], A[r])]
        r += 1
    return [row for row in A[:r]]


def integer_kernel(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[list[int]]:
    """Hermite basis of the (saturated) integer kernel ``{x in Z^n : M x = 0}``."""
    n = len(M[0]) if M else (cols or 0)
    if not M:
        return identity(n)
    snf = smith_normal_form(M)
    Vt = transpose(snf.V, n)
    return hermite_rows(Vt[snf.rank:])


# ---------------------------------------------------------------------------
# Finitely generated abelian groups

@dataclass(frozen=True)
class FGAbelianGroup:
    """
    ``Z^m / im(M)`` in canonical coordinates.

    ``transform`` is a unimodular matrix whose rows split as: rows with unit
    invariant factor (killed), rows with invariant factor ``> 1`` (torsion),
    then the free rows in Hermite normal form.
    """
    ambient: int
    free_rank: int
    torsion: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]
    inverse_transform: tuple[tuple[int, ...], ...]
    _torsion_rows: tuple[int, ...]
    _free_start: int

    def project(self, x: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if len(x) != self.ambient:
            raise ValueError(f"expected vector of length {self.ambient}")
        y = matvec(self.transform, x)
        free = tuple(y[self._free_start:])
        tors = tuple(y[i] % d for i, d in zip(self._torsion_rows, self.torsion))
        return free, tors

    def section(self, free: Sequence[int], torsion: Sequence[int] = ()) -> tuple[int, ...]:
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise ValueError("coordinate lengths do not match the group")
        y = [0] * self.ambient
        for i, t, d in zip(self._torsion_rows, torsion, self.torsion):
            y[i] = t % d
        for j, f in enumerate(free):
            y[self._free_start + j] = f
        return matvec(self.inverse_transform, y)

    @property
    def free_rows(self) -> tuple[tuple[int, ...], ...]:
        return self.transform[self._free_start:]

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out


def cokernel(M: Sequence[Sequence[int]], ambient: Optional[int] = None) -> FGAbelianGroup:
    """
    Cokernel of the integer matrix ``M`` whose columns are relations in ``Z^m``.

    ``ambient`` must be given when ``M`` has no rows information (m = 0 rows
    is meaningless here), and is used for an ``m x 0`` matrix given as ``m``
    empty rows.
    """
    m = len(M) if M else (ambient or 0)
    if ambient is not None and ambient != m:
        raise ValueError("ambient dimension disagrees with matrix")
    r_cols = len(M[0]) if M else 0
    if r_cols == 0:
        snf = SNFResult(U=identity(m), V=[], D=[[] for _ in range(m)], invariant_factors=())
    else:
        snf = smith_normal_form(M)
    rank = snf.rank
    free_rows = hermite_rows(snf.U[rank:]) if rank < m else []
    transform = [list(r) for r in snf.U[:rank]] + free_rows
    inv = integer_inverse(transform) if m else []
    torsion_rows = tuple(i for i, d in enumerate(snf.invariant_factors) if d > 1)
    return FGAbelianGroup(
        ambient=m,
        free_rank=m - rank,
        torsion=tuple(snf.invariant_factors[i] for i in torsion_rows),
        transform=tuple(tuple(r) for r in transform),
        inverse_transform=tuple(tuple(r) for r in inv),
        _torsion_rows=torsion_rows,
        _free_start=rank,
    )
