"""Exact linear algebra over Q, Z and polynomial rings.

Matrices are plain lists of rows.  Three entry kinds appear: Fraction
(rational matrices), int (integral matrices for homology certificates)
and MultiPoly (symbolic matrices such as Hessians).  Everything here is
exact; ranks and normal forms are certificates, not estimates.

Determinism matters for golden tests: pivots are always the first
admissible entry in row order, and minors stream in colexicographic
order of index sets (rows outer, columns inner).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Optional, Sequence

from .errors import InternalCheckError
from .poly import MultiPoly, divides

RatMatrix = Sequence[Sequence[Fraction]]
IntMatrix = Sequence[Sequence[int]]
PolyMatrix = Sequence[Sequence[MultiPoly]]


def matrix_dims(m: Sequence[Sequence]) -> tuple[int, int]:
    """(rows, cols) of a rectangular matrix; rejects ragged input."""
    rows = len(m)
    if rows == 0:
        return 0, 0
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return rows, cols


def identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    ra, ca = matrix_dims(a)
    rb, cb = matrix_dims(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    return [
        [sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)]
        for i in range(ra)
    ]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    ra, ca = matrix_dims(a)
    if len(v) != ca:
        raise ValueError(f"cannot apply {ra}x{ca} to vector of length {len(v)}")
    return [sum(a[i][k] * v[k] for k in range(ca)) for i in range(ra)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    rows, cols = matrix_dims(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


# -- rank and determinant over Q ---------------------------------------------


def _clear_rows(m: RatMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators.  Rank-preserving."""
    out = []
    for row in m:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def rank_rational(m: RatMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; the Bareiss update keeps all
    intermediate values integral, and every interior division is checked
    to be exact.
    """
    rows, cols = matrix_dims(m)
    work = _clear_rows(m)
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                num = work[r][c] * work[i][j] - work[i][c] * work[r][j]
                q, rem = divmod(num, prev)
                if rem:
                    raise InternalCheckError("Bareiss division was not exact")
                work[i][j] = q
            work[i][c] = 0
        prev = work[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def det_rational(m: RatMatrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows, cols = matrix_dims(m)
    if rows != cols:
        raise ValueError("determinant needs a square matrix")
    work = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(cols):
        pivot_row = None
        for i in range(c, rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        pivot = work[c][c]
        det *= pivot
        for i in range(c + 1, rows):
            factor = work[i][c] / pivot
            if factor == 0:
                continue
            for j in range(c, cols):
                work[i][j] -= factor * work[c][j]
    return det


def inverse_rational(m: RatMatrix) -> list[list[Fraction]]:
    """Exact inverse via Gauss-Jordan; raises on singular input."""
    rows, cols = matrix_dims(m)
    if rows != cols:
        raise ValueError("inverse needs a square matrix")
    n = rows
    work = [[Fraction(x) for x in row] for row in m]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            raise ValueError("matrix is singular")
        work[c], work[pivot_row] = work[pivot_row], work[c]
        inv[c], inv[pivot_row] = inv[pivot_row], inv[c]
        pivot = work[c][c]
        work[c] = [x / pivot for x in work[c]]
        inv[c] = [x / pivot for x in inv[c]]
        for i in range(n):
            if i == c or work[i][c] == 0:
                continue
            factor = work[i][c]
            work[i] = [a - factor * b for a, b in zip(work[i], work[c])]
            inv[i] = [a - factor * b for a, b in zip(inv[i], inv[c])]
    return inv


# -- symbolic minors ----------------------------------------------------------


def det_poly(m: PolyMatrix) -> MultiPoly:
    """Determinant of a square polynomial matrix.

    Fraction-free elimination over the polynomial ring: the Bareiss
    update stays inside the ring and each interior division is exact.
    A zero pivot column short-circuits to the zero determinant.
    """
    rows, cols = matrix_dims(m)
    if rows != cols:
        raise ValueError("determinant needs a square matrix")
    num_vars = _shared_num_vars(m)
    if rows == 0:
        return MultiPoly.constant(1, num_vars)
    work = [list(row) for row in m]
    prev = MultiPoly.constant(1, num_vars)
    sign = 1
    for c in range(cols - 1):
        pivot_row = None
        for i in range(c, rows):
            if not work[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return MultiPoly.zero(num_vars)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            sign = -sign
        for i in range(c + 1, rows):
            for j in range(c + 1, cols):
                num = work[c][c] * work[i][j] - work[i][c] * work[c][j]
                quotient = divides(prev, num)
                if quotient is None:
                    raise InternalCheckError("polynomial Bareiss division was not exact")
                work[i][j] = quotient
            work[i][c] = MultiPoly.zero(num_vars)
        prev = work[c][c]
    return work[rows - 1][cols - 1] * sign


def _shared_num_vars(m: PolyMatrix) -> int:
    counts = {entry.num_vars for row in m for entry in row}
    if len(counts) > 1:
        raise ValueError("matrix entries live in different polynomial rings")
    return counts.pop() if counts else 0


def _colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def minor_dets(
    m: PolyMatrix, k: int
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], MultiPoly]]:
    """Stream all k x k minors as (row-set, col-set, determinant).

    Index sets run in colexicographic order, row-sets outermost, so a
    caller searching for the first nonzero (or first non-divisible)
    minor sees a deterministic sequence and can stop early.
    """
    rows, cols = matrix_dims(m)
    if k < 0 or k > min(rows, cols):
        raise ValueError(f"minor size {k} out of range for {rows}x{cols} matrix")
    num_vars = _shared_num_vars(m)
    if k == 0:
        yield (), (), MultiPoly.constant(1, num_vars)
        return
    col_sets = _colex_subsets(cols, k)
    for row_set in _colex_subsets(rows, k):
        for col_set in col_sets:
            sub = [[m[i][j] for j in col_set] for i in row_set]
            yield row_set, col_set, det_poly(sub)


# -- Smith normal form and cokernels ------------------------------------------


def smith_normal_form(
    m: IntMatrix,
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, D, V) with D = U*m*V diagonal, d1 | d2 | ..., all di >= 0.

    Classical elimination: pull the smallest nonzero entry of the working
    block to the pivot, run Euclidean reductions on its row and column,
    and fold in any entry the pivot fails to divide.  U and V collect the
    row and column operations and stay unimodular by construction.  The
    factorization is re-multiplied before returning.
    """
    rows, cols = matrix_dims(m)
    d = [[int(x) for x in row] for row in m]
    u = identity_int(rows)
    v = identity_int(cols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, factor: int) -> None:
        d[dst] = [a + factor * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + factor * b for a, b in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, factor: int) -> None:
        for row in d:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # Euclid on the pivot column: any nonzero remainder becomes
            # the new, strictly smaller pivot.
            restart = False
            for i in range(t + 1, rows):
                if d[i][t] == 0:
                    continue
                q, rem = divmod(d[i][t], d[t][t])
                add_row(t, i, -q)
                if rem != 0:
                    swap_rows(t, i)
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, cols):
                if d[t][j] == 0:
                    continue
                q, rem = divmod(d[t][j], d[t][t])
                add_col(t, j, -q)
                if rem != 0:
                    swap_cols(t, j)
                    restart = True
                    break
            if restart:
                continue
            # Row and column are clear; fold in any interior entry the
            # pivot fails to divide, so the invariant chain comes out
            # right without a separate pass.
            offender = None
            for i in range(t + 1, rows):
                if any(d[i][j] % d[t][t] != 0 for j in range(t + 1, cols)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    product = mat_mul(mat_mul(u, [[int(x) for x in row] for row in m]), v)
    if product != d:
        raise InternalCheckError("Smith factorization does not multiply back")
    diag = [d[i][i] for i in range(limit)]
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise InternalCheckError("zero precedes nonzero on Smith diagonal")
        if a != 0 and b % a != 0:
            raise InternalCheckError("Smith diagonal divisibility chain broken")
    return u, d, v


@dataclass(frozen=True)
class FGAbelianGroup:
    """Finitely generated abelian group: free rank plus torsion chain."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for value in self.torsion:
            if value < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """Cokernel of the map Z^cols -> Z^rows given by the matrix.

    Invariant factors come straight from the Smith diagonal: unit
    entries contribute nothing, entries >= 2 become torsion, and the
    missing pivots are free rank.
    """
    rows, _ = matrix_dims(m)
    _, d, _ = smith_normal_form(m)
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    nonzero = [x for x in diag if x != 0]
    return FGAbelianGroup(
        free_rank=rows - len(nonzero),
        torsion=tuple(x for x in nonzero if x >= 2),
    )


# -- conformal factor ----------------------------------------------------------


@dataclass(frozen=True)
class ConformalFactor:
    """Multiplier of a conformal map, with component sign in even size."""

    tau: Fraction
    sign: Optional[int]  # det/tau^n for size 2n; None in odd size


def conformal_factor(a: RatMatrix) -> Optional[ConformalFactor]:
    """Conformal multiplier of a square matrix for the split form.

    The bilinear form pairs basis vector i with basis vector r-1-i, so
    its Gram matrix J is the anti-diagonal of ones.  When a^T J a equals
    tau * J for a nonzero scalar tau, the matrix is conformal; we verify
    (det a)^2 = tau^r and, for even r = 2n, report the connected
    component through the sign det(a)/tau^n.  Returns None when a is
    not conformal (including the degenerate tau = 0 case: the group
    consists of invertible maps).
    """
    rows, cols = matrix_dims(a)
    if rows != cols:
        raise ValueError("conformal check needs a square matrix")
    if rows == 0:
        raise ValueError("conformal check needs a nonempty matrix")
    r = rows
    rat = [[Fraction(x) for x in row] for row in a]
    j = [[Fraction(1 if i + k == r - 1 else 0) for k in range(r)] for i in range(r)]
    gram = mat_mul(mat_mul(transpose(rat), j), rat)
    tau = gram[0][r - 1]
    if tau == 0:
        return None
    for i in range(r):
        for k in range(r):
            if gram[i][k] != tau * j[i][k]:
                return None
    det = det_rational(rat)
    if det * det != tau**r:
        raise InternalCheckError("conformal determinant identity failed")
    if r % 2 == 0:
        n = r // 2
        sign_value = det / tau**n
        if sign_value not in (Fraction(1), Fraction(-1)):
            raise InternalCheckError("component sign is not a unit")
        return ConformalFactor(tau=tau, sign=int(sign_value))
    return ConformalFactor(tau=tau, sign=None)
