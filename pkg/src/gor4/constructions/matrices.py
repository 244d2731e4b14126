"""Skew-symmetric matrices, Pfaffians, determinants and the Cramer's rule format."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..groebner import Ideal
from ..polyring import Polynomial, PolyRing


class SkewMatrix:
    """Skew-symmetric matrix of polynomials; indices are 0-based internally."""

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence]):
        m = len(entries)
        E = [[ring(entries[i][j]) for j in range(m)] for i in range(m)]
        for i in range(m):
            if E[i][i]:
                raise ValueError("diagonal entries of a skew matrix must vanish")
            for j in range(i + 1, m):
                if E[j][i] != -E[i][j]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        self.ring = ring
        self.size = m
        self.entries = E

    @classmethod
    def from_upper(cls, ring: PolyRing, rows: Sequence[Sequence]) -> "SkewMatrix":
        """Build from the strictly upper triangle, row by row: rows[i] = (a_{i,i+1}, ..., a_{i,m-1})."""
        m = len(rows) + 1
        E = [[ring.zero() for _ in range(m)] for _ in range(m)]
        for i, row in enumerate(rows):
            if len(row) != m - 1 - i:
                raise ValueError(f"row {i} of the upper triangle has the wrong length")
            for k, a in enumerate(row):
                j = i + 1 + k
                E[i][j] = ring(a)
                E[j][i] = -ring(a)
        return cls(ring, E)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def with_entry(self, i: int, j: int, value) -> "SkewMatrix":
        """Copy with entry (i, j) (0-based) replaced, and (j, i) set to its negative."""
        E = [row[:] for row in self.entries]
        v = self.ring(value)
        E[i][j] = v
        E[j][i] = -v
        return SkewMatrix(self.ring, E)

    def upper(self) -> list[list[Polynomial]]:
        return [[self.entries[i][j] for j in range(i + 1, self.size)] for i in range(self.size - 1)]


def pfaffian(M: SkewMatrix, rows: Sequence[int] | None = None) -> Polynomial:
    """Pfaffian of the principal submatrix on ``rows`` (0-based), by first-row expansion.

    Pf(A) = sum_{k>=1} (-1)^(k+1) a_{i_0 i_k} Pf(A without i_0, i_k); Pf of the empty matrix is 1.
    """
    idx = tuple(range(M.size)) if rows is None else tuple(rows)
    if len(idx) % 2:
        raise ValueError("Pfaffians need an even number of indices")
    if len(set(idx)) != len(idx):
        raise ValueError("repeated index")
    cache: dict = {}

    def pf(ix: tuple) -> Polynomial:
        if not ix:
            return M.ring.const(1)
        if ix in cache:
            return cache[ix]
        i0 = ix[0]
        out = M.ring.zero()
        for k in range(1, len(ix)):
            a = M.entries[i0][ix[k]]
            if a.is_zero():
                continue
            rest = ix[1:k] + ix[k + 1:]
            term = a * pf(rest)
            out = out + term if k % 2 == 1 else out - term
        cache[ix] = out
        return out

    return pf(idx)


def maximal_pfaffians(M: SkewMatrix, signed: bool = False) -> list[Polynomial]:
    """[Pf_{\\hat i}] for i = 1..m: Pfaffians of the submatrices deleting row and column i.

    With ``signed`` the i-th entry carries (-1)^(i+1), which makes the vector a syzygy
    of the rows of M.
    """
    m = M.size
    if m % 2 == 0:
        raise ValueError("maximal Pfaffians need an odd-sized matrix")
    out = []
    for i in range(m):
        f = pfaffian(M, [j for j in range(m) if j != i])
        out.append(-f if signed and i % 2 == 1 else f)
    return out


def sub_pfaffian(M: SkewMatrix, one_based: Sequence[int]) -> Polynomial:
    """Pf_{i1 i2 ...}: Pfaffian on the listed 1-based indices."""
    return pfaffian(M, [i - 1 for i in one_based])


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring

    @lru_cache(maxsize=None)
    def det(r0: int, cols: tuple) -> Polynomial:
        if not cols:
            return ring.const(1)
        out = ring.zero()
        for k, c in enumerate(cols):
            a = rows[r0][c]
            if a.is_zero():
                continue
            term = a * det(r0 + 1, cols[:k] + cols[k + 1:])
            out = out + term if k % 2 == 0 else out - term
        return out

    return det(0, tuple(range(n)))


def minors(rows: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    """All k x k minors, rows and columns in lexicographic order of index subsets."""
    from itertools import combinations
    nr, nc = len(rows), len(rows[0])
    out = []
    for R in combinations(range(nr), k):
        for C in combinations(range(nc), k):
            out.append(determinant([[rows[i][j] for j in C] for i in R]))
    return out


@dataclass
class CramerFormat:
    """Equations Mv = 0 and s*v_i = (-1)^i det M_{\\hat i} (columns numbered 1..4)."""

    M: list      # 3 rows of 4 polynomials
    v: list      # 4 polynomials
    s: Polynomial

    @property
    def ring(self) -> PolyRing:
        return self.s.ring

    def signed_minors(self) -> list[Polynomial]:
        """(-1)^i det M_{\\hat i} for i = 1..4."""
        out = []
        for i in range(4):
            cols = [j for j in range(4) if j != i]
            d = determinant([[self.M[r][j] for j in cols] for r in range(3)])
            # column i here is 0-based, so (-1)^(i+1) in 1-based numbering
            out.append(-d if i % 2 == 0 else d)
        return out

    def equations(self) -> list[Polynomial]:
        R = self.ring
        lin = []
        for r in range(3):
            f = R.zero()
            for j in range(4):
                f = f + self.M[r][j] * self.v[j]
            lin.append(f)
        wedge = [self.s * vi - mi for vi, mi in zip(self.v, self.signed_minors())]
        return lin + wedge

    def laplace_check(self) -> bool:
        """M times the signed minor vector vanishes identically."""
        mins = self.signed_minors()
        for r in range(3):
            f = self.ring.zero()
            for j in range(4):
                f = f + self.M[r][j] * mins[j]
            if not f.is_zero():
                return False
        return True


def cramer_ideal(fmt: CramerFormat) -> Ideal:
    eqs = fmt.equations()
    for f in eqs:
        if not f.is_homogeneous():
            raise ValueError(f"Cramer equation is not homogeneous: {f}")
    return Ideal(fmt.ring, eqs)
