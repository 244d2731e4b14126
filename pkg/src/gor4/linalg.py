"""Dense row reduction over GF(p).

The elimination loop is compiled with numba when it is importable and falls
back to vectorised numpy otherwise.  Entries stay in [0, p); products fit in
int64 for p < 2**31.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None


def _rref_numpy(M: np.ndarray, p: int) -> int:
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        r += 1
    return r


if numba is not None:
    @numba.njit(cache=True)
    def _inv(a, p):
        # extended Euclid
        t, newt, r, newr = 0, 1, p, a
        while newr != 0:
            q = r // newr
            t, newt = newt, t - q * newt
            r, newr = newr, r - q * newr
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_numba(M, p):
        rows, cols = M.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if M[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    tmp = M[r, j]
                    M[r, j] = M[k, j]
                    M[k, j] = tmp
            inv = _inv(M[r, c], p)
            for j in range(c, cols):
                M[r, j] = (M[r, j] * inv) % p
            for i in range(rows):
                if i != r:
                    f = M[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            if M[r, j] != 0:
                                M[i, j] = (M[i, j] - f * M[r, j]) % p
            r += 1
        return r


def _reduce_inplace(M: np.ndarray, p: int) -> int:
    if numba is not None and M.size:
        return int(_rref_numba(M, p))
    return _rref_numpy(M, p)


def _as_matrix(A, p: int) -> np.ndarray:
    M = np.array(A, dtype=np.int64)
    if M.ndim != 2:
        M = M.reshape(len(A), -1) if len(A) else np.zeros((0, 0), dtype=np.int64)
    return np.ascontiguousarray(M % p)


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    M = _as_matrix(A, p)
    r = _reduce_inplace(M, p)
    R = M[:r]
    pivots = [int(np.nonzero(row)[0][0]) for row in R]
    return R, pivots


def rank(A, p: int) -> int:
    M = _as_matrix(A, p)
    if M.size == 0:
        return 0
    if M.shape[0] > M.shape[1]:
        M = np.ascontiguousarray(M.T)
    return _reduce_inplace(M, p)


def nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0} mod p, in reduced form."""
    M = _as_matrix(A, p)
    cols = M.shape[1]
    R, piv = rref(M, p)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = (-R[r, f]) % p
    return out
