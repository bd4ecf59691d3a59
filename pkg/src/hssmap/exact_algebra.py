"""Exact rational linear algebra and the determinantal primitives.

Scalars are Python ``int`` or :class:`fractions.Fraction`; both are exact
rationals and mix freely.  Floats are rejected at every entry point so no
rounding can creep into downstream identity checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ArgumentError, DomainError

Rat = Fraction
Scalar = Union[int, Fraction]
IndexSet = Tuple[int, ...]


def rat(x) -> Scalar:
    """Coerce ``x`` to an exact rational (int or Fraction).

    Accepts ints, Fractions and strings such as ``"3"``, ``"-2/7"``.
    """
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    raise ArgumentError(f"not an exact rational: {x!r}")


def rat_str(x: Scalar) -> str:
    """Serialize a rational as ``"p"`` or ``"p/q"``."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _denominator_lcm(values: Iterable[Scalar]) -> int:
    out = 1
    for v in values:
        if isinstance(v, Fraction):
            out = out * v.denominator // math.gcd(out, v.denominator)
    return out


class RatMatrix:
    """Dense immutable matrix of exact rationals, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence]):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ArgumentError("ragged matrix rows")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(rat(x) for r in data for x in r)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "RatMatrix":
        if len(entries) != rows * cols:
            raise ArgumentError("entry count does not match shape")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self[i, j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_antisymmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == -self[j, i] for i in range(self.rows) for j in range(i, self.cols)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[self[i, j] for j in cols] for i in rows])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ArgumentError("shape mismatch in matrix product")
        a = self.tolist()
        bt = other.transpose().tolist()
        return RatMatrix([[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ArgumentError("shape mismatch in matrix sum")
        return RatMatrix.from_entries(
            self.rows, self.cols, [x + y for x, y in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "RatMatrix":
        c = rat(c)
        return RatMatrix.from_entries(self.rows, self.cols, [c * x for x in self.entries])

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RatMatrix({[[rat_str(x) for x in r] for r in self.tolist()]})"

    def to_json(self) -> List[List[str]]:
        return [[rat_str(x) for x in r] for r in self.tolist()]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls(data)


# --- elimination -----------------------------------------------------------

def _integer_rows(M: RatMatrix) -> Tuple[List[List[int]], int]:
    """Scale each row to integers; return the rows and the product of scale factors."""
    out = []
    scale = 1
    for i in range(M.rows):
        r = M.row(i)
        L = _denominator_lcm(r)
        out.append([int(x * L) for x in r])
        scale *= L
    return out, scale


def _bareiss(rows: List[List[int]]) -> Tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    sign = 1
    for col in range(ncols):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        p = rows[rank][col]
        prow = rows[rank]
        for i in range(rank + 1, m):
            ri = rows[i]
            a = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (ri[j] * p - a * prow[j]) // prev
            ri[col] = 0
        prev = p
        rank += 1
    return rank, sign * prev


def mat_rank(M: RatMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination; exact."""
    if M.rows == 0 or M.cols == 0:
        return 0
    rows, _ = _integer_rows(M)
    rank, _ = _bareiss(rows)
    return rank


def det(M: RatMatrix) -> Scalar:
    """Determinant of a square matrix; exact."""
    if not M.is_square():
        raise ArgumentError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    rows, scale = _integer_rows(M)
    rank, last = _bareiss(rows)
    if rank < n:
        return 0
    return rat(Fraction(last, scale))


def nullspace(M: RatMatrix) -> List[List[Scalar]]:
    """Basis of the right kernel {x : M x = 0} via reduced row echelon form."""
    A = [[Fraction(x) for x in M.row(i)] for i in range(M.rows)]
    ncols = M.cols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v: List[Scalar] = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = rat(-A[i][fc])
        basis.append(v)
    return basis


# --- minors and Pfaffians ---------------------------------------------------

def minor_table(M: RatMatrix, kmax: int) -> List[Dict[Tuple[IndexSet, IndexSet], Scalar]]:
    """All j x j minors for 0 <= j <= kmax, keyed by (row set, column set).

    Level j is built from level j-1 by Laplace expansion along the first
    column of each column set.
    """
    table: List[Dict[Tuple[IndexSet, IndexSet], Scalar]] = [{((), ()): 1}]
    m, n = M.rows, M.cols
    rows = M.tolist()
    for j in range(1, kmax + 1):
        prev = table[-1]
        level: Dict[Tuple[IndexSet, IndexSet], Scalar] = {}
        for C in combinations(range(n), j):
            c0, rest = C[0], C[1:]
            for R in combinations(range(m), j):
                total = 0
                for i, ri in enumerate(R):
                    a = rows[ri][c0]
                    if a:
                        sub = prev[(R[:i] + R[i + 1:], rest)]
                        if sub:
                            total = total + a * sub if i % 2 == 0 else total - a * sub
                level[(R, C)] = total
        table.append(level)
    return table


def minors(M: RatMatrix, k: int) -> List[Scalar]:
    """Determinants of all k x k submatrices, lexicographic in (row set, column set)."""
    if not 1 <= k <= min(M.rows, M.cols):
        raise ArgumentError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    level = minor_table(M, k)[k]
    return [
        level[(R, C)]
        for R in combinations(range(M.rows), k)
        for C in combinations(range(M.cols), k)
    ]


def maximal_minors(M: RatMatrix) -> List[Scalar]:
    """All cols x cols minors of a tall matrix, lexicographic in the row set."""
    m, n = M.rows, M.cols
    if n > m:
        raise ArgumentError("maximal minors need rows >= cols")
    rows = M.tolist()
    prev: Dict[IndexSet, Scalar] = {(): 1}
    for j in range(1, n + 1):
        c0 = n - j
        level: Dict[IndexSet, Scalar] = {}
        for R in combinations(range(m), j):
            total = 0
            for i, ri in enumerate(R):
                a = rows[ri][c0]
                if a:
                    sub = prev[R[:i] + R[i + 1:]]
                    if sub:
                        total = total + a * sub if i % 2 == 0 else total - a * sub
            level[R] = total
        prev = level
    return [prev[R] for R in combinations(range(m), n)]


def _check_antisymmetric(A: RatMatrix) -> None:
    if not A.is_antisymmetric():
        raise ArgumentError("matrix is not antisymmetric")


def pfaffian_table(A: RatMatrix, mmax: int) -> Dict[IndexSet, Scalar]:
    """Pfaffians of all principal submatrices of even size <= mmax, keyed by index set."""
    _check_antisymmetric(A)
    n = A.rows
    a = A.tolist()
    table: Dict[IndexSet, Scalar] = {(): 1}
    for size in range(2, mmax + 1, 2):
        for S in combinations(range(n), size):
            s0 = S[0]
            total = 0
            for t in range(1, size):
                x = a[s0][S[t]]
                if x:
                    sub = table[S[1:t] + S[t + 1:]]
                    if sub:
                        total = total + x * sub if t % 2 == 1 else total - x * sub
            table[S] = total
    return table


def sub_pfaffians(A: RatMatrix, m: int) -> List[Scalar]:
    """Pfaffians of all principal m x m submatrices, index sets in lexicographic order."""
    _check_antisymmetric(A)
    if m % 2:
        raise ArgumentError("sub-Pfaffian size must be even")
    if not 2 <= m <= A.rows:
        raise ArgumentError(f"sub-Pfaffian size {m} out of range for n={A.rows}")
    table = pfaffian_table(A, m)
    return [table[S] for S in combinations(range(A.rows), m)]


def pfaffian(A: RatMatrix) -> Scalar:
    _check_antisymmetric(A)
    n = A.rows
    if n % 2:
        return 0
    if n == 0:
        return 1
    return sub_pfaffians(A, n)[0]


def adjugate(M: RatMatrix) -> RatMatrix:
    """Classical adjugate: M @ adjugate(M) == det(M) * I."""
    if not M.is_square():
        raise ArgumentError("adjugate of a non-square matrix")
    n = M.rows
    if n == 1:
        return RatMatrix([[1]])
    level = minor_table(M, n - 1)[n - 1]
    full = tuple(range(n))

    def drop(i: int) -> IndexSet:
        return full[:i] + full[i + 1:]

    return RatMatrix(
        [[(-1) ** (i + j) * level[(drop(j), drop(i))] for j in range(n)] for i in range(n)]
    )


# --- projective points ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProjPoint:
    """Normalized homogeneous coordinates: the first nonzero coordinate is 1.

    ``blocks`` optionally records the graded block lengths of the ambient
    projective space; equality ignores it.
    """

    coords: Tuple[Scalar, ...]
    blocks: Optional[Tuple[int, ...]] = None

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def block_values(self) -> List[Tuple[Scalar, ...]]:
        if self.blocks is None:
            raise ArgumentError("point carries no block structure")
        out, start = [], 0
        for size in self.blocks:
            out.append(self.coords[start:start + size])
            start += size
        return out

    def block(self, j: int) -> Tuple[Scalar, ...]:
        return self.block_values()[j]

    def to_json(self) -> dict:
        out = {"point": [rat_str(x) for x in self.coords]}
        if self.blocks is not None:
            out["blocks"] = list(self.blocks)
        return out

    def __repr__(self) -> str:
        return "[" + ",".join(rat_str(x) for x in self.coords) + "]"


def proj_point(v: Sequence, blocks: Optional[Sequence[int]] = None) -> ProjPoint:
    """Normalize ``v`` so its first nonzero coordinate equals 1."""
    vals = [rat(x) for x in v]
    if len(vals) < 2:
        raise ArgumentError("a projective point needs at least two coordinates")
    if blocks is not None:
        blocks = tuple(int(b) for b in blocks)
        if sum(blocks) != len(vals) or any(b <= 0 for b in blocks):
            raise ArgumentError("block lengths must be positive and sum to the coordinate count")
    lead = next((x for x in vals if x != 0), None)
    if lead is None:
        raise DomainError("the zero vector is not a projective point")
    if lead != 1:
        inv = Fraction(1) / lead
        vals = [rat(x * inv) for x in vals]
    return ProjPoint(tuple(vals), blocks)
