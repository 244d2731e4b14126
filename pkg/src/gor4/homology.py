"""Free resolutions, Betti tables and Hilbert data of graded quotients R/I.

The resolution is built as a Schreyer frame on the reduced Groebner basis and
then pruned to a minimal one by cancelling unit entries.  Module terms of the
frame are packed integers ``(induced_monomial << RB) | rank`` where the induced
monomial is the ring monomial the term maps to under the lead-term chain and
``rank`` orders basis elements; integer comparison is then the Schreyer order.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np

from . import linalg
from .groebner import Ideal, groebner_basis
from .monomial import divide_one_minus_t, poly_trim
from .polyring import Polynomial, PolyRing, pmul, padd

RB = 24
RMASK = (1 << RB) - 1


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: tuple

    @property
    def rank(self) -> int:
        return len(self.shifts)


@dataclass
class ResolutionStep:
    """Map source -> target given column by column; ``columns[c]`` maps row -> Polynomial."""

    source: GradedFreeModule
    target: GradedFreeModule
    columns: list

    def entry(self, r: int, c: int, ring: PolyRing) -> Polynomial:
        return self.columns[c].get(r, ring.zero())

    def matrix(self, ring: PolyRing) -> list[list[Polynomial]]:
        return [[self.entry(r, c, ring) for c in range(self.source.rank)]
                for r in range(self.target.rank)]

    def is_minimal(self) -> bool:
        return not any(f.is_constant() and f for col in self.columns for f in col.values())

    def is_graded(self) -> bool:
        for c, col in enumerate(self.columns):
            for r, f in col.items():
                if f and not (f.is_homogeneous()
                              and f.degree() == self.source.shifts[c] - self.target.shifts[r]):
                    return False
        return True


def compose_is_zero(first: ResolutionStep, second: ResolutionStep, ring: PolyRing) -> bool:
    """first ∘ second == 0, where second maps into first's source."""
    for col in second.columns:
        acc: dict = {}
        for mid, g in col.items():
            for r, f in first.columns[mid].items():
                acc[r] = padd(acc.get(r, {}), pmul(f.terms, g.terms, ring), ring.p)
        if any(v for v in acc.values()):
            return False
    return True


# -- Betti tables ---------------------------------------------------------

class BettiTable:
    """Ranks b[i, j] of the graded free modules in a minimal resolution."""

    def __init__(self, entries: dict | None = None):
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def from_rows(cls, rows: dict) -> "BettiTable":
        """Build from display rows: ``{row: [b_0, b_1, ...]}`` with b_i at (i, i + row)."""
        e = {}
        for r, vals in rows.items():
            for i, v in enumerate(vals):
                if v:
                    e[(i, i + r)] = v
        return cls(e)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __repr__(self):
        return f"BettiTable({self.entries})"

    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def is_gorenstein_symmetric(self, codim: int = 4, socle: int = 8) -> bool:
        return all(self.entries.get((codim - i, socle - j), 0) == v
                   for (i, j), v in self.entries.items())

    def numerator(self) -> list[int]:
        """sum (-1)^i b[i,j] T^j."""
        top = max((j for _, j in self.entries), default=0)
        out = [0] * (top + 1)
        for (i, j), v in self.entries.items():
            out[j] += (-1) ** i * v
        return poly_trim(out)

    def render(self, rows: int | None = None, cols: int | None = None) -> str:
        nrow = rows if rows is not None else max((j - i for i, j in self.entries), default=0) + 1
        ncol = cols if cols is not None else self.length() + 1
        cells = [[str(self.entries.get((i, i + r), 0) or "-") for i in range(ncol)]
                 for r in range(nrow)]
        # single-space separated and unpadded, as the tables are displayed in print
        lw = len(str(nrow - 1))
        head = " " * lw + " |" + "".join(f" {i}" for i in range(ncol))
        lines = [head, "-" * (lw + 1) + "+" + "-" * (len(head) - lw - 2)]
        for r, row in enumerate(cells):
            lines.append(str(r).rjust(lw) + " |" + "".join(" " + c for c in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"entries": [[i, j, v] for (i, j), v in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, obj) -> "BettiTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({(i, j): v for i, j, v in obj["entries"]})


# -- Schreyer frame ---------------------------------------------------------

class _Elt:
    __slots__ = ("vec", "lead", "comp", "u", "M", "rank")

    def __init__(self, vec: dict, lead: int, comp: int, u: int, M: int):
        self.vec = vec      # dict over the previous level's term keys
        self.lead = lead
        self.comp = comp    # rank of the lead component in the previous level
        self.u = u          # lead ring monomial, without the component's induced part
        self.M = M          # induced monomial of this basis element
        self.rank = -1


def _lex_key(R: PolyRing, u: int, start: int) -> tuple:
    e = R.unpack(u)[:R.n]
    order = list(range(start, R.n)) + list(range(0, start))
    return tuple(e[i] for i in order)


def _assign_ranks(R: PolyRing, level: list[_Elt], k: int) -> list[_Elt]:
    start = min(k - 1, R.n - 1) if R.n else 0
    level.sort(key=lambda a: (a.comp, _lex_key(R, a.u, start)), reverse=True)
    N = len(level)
    for pos, a in enumerate(level):
        a.rank = N - 1 - pos
    return level


class _LevelIndex:
    def __init__(self, R: PolyRing, level: list[_Elt]):
        self.R = R
        self.by_comp: dict = {}
        for a in level:
            self.by_comp.setdefault(a.comp, []).append(((a.M & R.gmask) | R.gguard, a))
        self.cache: dict = {}

    def find(self, K: int):
        hit = self.cache.get(K)
        if hit is not None:
            return hit
        R = self.R
        G = R.gguard
        kk = (K >> RB) & R.gmask
        for probe, a in self.by_comp.get(K & RMASK, ()):
            if (probe - kk) & G == G:
                self.cache[K] = a
                return a
        self.cache[K] = False
        return False


def _syzygy(R: PolyRing, alpha: _Elt, beta: _Elt, n: int, mprime: int, index: _LevelIndex) -> dict:
    """Syzygy with lead n*e_alpha from the pair (alpha, beta), as a dict over this level's keys."""
    p = R.p
    C = R.C
    tau: dict = {}

    def add(key, c):
        v = (tau.get(key, 0) + c) % p
        if v:
            tau[key] = v
        else:
            tau.pop(key, None)

    add(((n + alpha.M - C) << RB) | alpha.rank, 1)
    add(((mprime + beta.M - C) << RB) | beta.rank, p - 1)
    sa = (n - C) << RB
    sb = (mprime - C) << RB
    v = {k + sa: c for k, c in alpha.vec.items()}
    for k, c in beta.vec.items():
        key = k + sb
        x = (v.get(key, 0) - c) % p
        if x:
            v[key] = x
        else:
            v.pop(key, None)
    heap = [-k for k in v]
    heapq.heapify(heap)
    while heap:
        K = -heapq.heappop(heap)
        c = v.pop(K, 0)
        if not c:
            continue
        g = index.find(K)
        if g is False:
            raise ArithmeticError("Schreyer syzygy failed to reduce to zero")
        add(((K >> RB) << RB) | g.rank, p - c)
        s = K - g.lead
        for kk, cc in g.vec.items():
            if kk == g.lead:
                continue
            key = kk + s
            old = v.get(key)
            if old is None:
                v[key] = (-c * cc) % p
                heapq.heappush(heap, -key)
            else:
                x = (old - c * cc) % p
                if x:
                    v[key] = x
                else:
                    del v[key]
    return tau


def _minimal_monomials(R: PolyRing, items: list) -> list:
    """Keep (monomial, payload) pairs whose monomial is not divisible by an earlier-kept one."""
    items = sorted(items, key=lambda t: (R.mdeg(t[0]), -t[2]))
    kept = []
    seen = set()
    for m, payload, order in items:
        if m in seen:
            continue
        if any(R.mdivides(q, m) for q, _, _ in kept):
            continue
        kept.append((m, payload, order))
        seen.add(m)
    return kept


def schreyer_frame(I: Ideal, max_length: int | None = None) -> list[list[_Elt]]:
    """Levels 1.. of the (non-minimal) Schreyer resolution of R/I."""
    R = I.ring
    if R.naux:
        raise ValueError("resolutions need a ring without auxiliary variables")
    bound = R.n if max_length is None else max_length
    gb = I.groebner()
    if not gb:
        return []
    level = []
    for g in gb:
        vec = {k << RB: c for k, c in g.terms.items()}
        lead = g.lead()
        level.append(_Elt(vec, lead << RB, 0, lead, lead))
    levels = [_assign_ranks(R, level, 1)]
    k = 1
    while True:
        cur = levels[-1]
        index = _LevelIndex(R, cur)
        groups: dict = {}
        for a in cur:
            groups.setdefault(a.comp, []).append(a)
        nxt = []
        for comp, members in groups.items():
            members.sort(key=lambda a: -a.rank)
            for ia, a in enumerate(members):
                cands = []
                for b in members[ia + 1:]:
                    l = R.mlcm(a.u, b.u)
                    cands.append((R.mquo(l, a.u), b, b.rank))
                for n, b, _ in _minimal_monomials(R, cands):
                    l = R.mmul(n, a.u)
                    mprime = R.mquo(l, b.u)
                    tau = _syzygy(R, a, b, n, mprime, index)
                    lead = ((n + a.M - R.C) << RB) | a.rank
                    nxt.append(_Elt(tau, lead, a.rank, n, R.mmul(n, a.M)))
        if not nxt:
            break
        k += 1
        if k > bound:
            raise RuntimeError(f"Schreyer frame exceeded length bound {bound}")
        levels.append(_assign_ranks(R, nxt, k))
    return levels


def _frame_matrices(R: PolyRing, levels: list[list[_Elt]]):
    """Convert frame levels to sparse column matrices with degree data."""
    C = R.C
    prev_M = {0: C}
    prev_index = {0: 0}
    mats = []
    degs = [[0]]
    for level in levels:
        order = sorted(level, key=lambda a: -a.rank)
        cols = []
        for a in order:
            col: dict = {}
            for K, c in a.vec.items():
                row = prev_index[K & RMASK]
                mono = (K >> RB) - prev_M[K & RMASK] + C
                d = col.setdefault(row, {})
                d[mono] = (d.get(mono, 0) + c) % R.p
            cols.append({r: {m: c for m, c in d.items() if c} for r, d in col.items()})
        mats.append(cols)
        degs.append([R.mdeg(a.M) for a in order])
        prev_M = {a.rank: a.M for a in level}
        prev_index = {a.rank: i for i, a in enumerate(order)}
    return mats, degs


def _minimalize(R: PolyRing, mats: list, degs: list):
    """Cancel unit entries; returns pruned matrices and degree lists."""
    p = R.p
    one = R.one
    L = len(mats)
    alive = [[True] * len(d) for d in degs]
    # row index per matrix: row -> set of columns
    rowidx = []
    for cols in mats:
        ri: dict = {}
        for c, col in enumerate(cols):
            for r in col:
                ri.setdefault(r, set()).add(c)
        rowidx.append(ri)
    for k in range(L):
        cols = mats[k]
        ri = rowidx[k]
        rows_deg = degs[k]
        cols_deg = degs[k + 1]
        c = 0
        while c < len(cols):
            if not alive[k + 1][c]:
                c += 1
                continue
            unit = None
            if cols_deg[c] in set(rows_deg):
                for r in sorted(cols[c]):
                    if alive[k][r] and rows_deg[r] == cols_deg[c]:
                        ent = cols[c][r]
                        if len(ent) == 1 and one in ent:
                            unit = (r, ent[one])
                            break
            if unit is None:
                c += 1
                continue
            r, u = unit
            uinv = pow(u, -1, p)
            pivot_col = cols[c]
            for c2 in sorted(ri.get(r, ())):
                if c2 == c or not alive[k + 1][c2]:
                    continue
                a = cols[c2].get(r)
                if not a:
                    continue
                factor = {m: (v * uinv) % p for m, v in a.items()}
                for r2, ent in pivot_col.items():
                    prod = pmul(factor, ent, R)
                    cur = cols[c2].get(r2, {})
                    new = dict(cur)
                    for m, v in prod.items():
                        x = (new.get(m, 0) - v) % p
                        if x:
                            new[m] = x
                        else:
                            new.pop(m, None)
                    if new:
                        cols[c2][r2] = new
                        ri.setdefault(r2, set()).add(c2)
                    else:
                        cols[c2].pop(r2, None)
                        ri.get(r2, set()).discard(c2)
            alive[k][r] = False
            alive[k + 1][c] = False
            # earlier columns cannot acquire units: their row-r entries had positive degree
            c += 1
    out_mats = []
    out_degs = [[d for d, a in zip(degs[0], alive[0]) if a]]
    for k in range(L):
        rmap = {}
        for r, a in enumerate(alive[k]):
            if a:
                rmap[r] = len(rmap)
        cols = []
        for c, col in enumerate(mats[k]):
            if not alive[k + 1][c]:
                continue
            cols.append({rmap[r]: Polynomial(R, ent) for r, ent in col.items()
                         if alive[k][r] and ent})
        out_degs.append([d for d, a in zip(degs[k + 1], alive[k + 1]) if a])
        if not cols:
            break
        out_mats.append(cols)
    return out_mats, out_degs


def minimal_free_resolution(I: Ideal) -> list[ResolutionStep]:
    """Minimal graded free resolution of R/I as a list of maps F_i -> F_{i-1}."""
    R = I.ring
    levels = schreyer_frame(I)
    if not levels:
        return []
    mats, degs = _frame_matrices(R, levels)
    mats, degs = _minimalize(R, mats, degs)
    steps = []
    for k, cols in enumerate(mats):
        steps.append(ResolutionStep(GradedFreeModule(tuple(degs[k + 1])),
                                    GradedFreeModule(tuple(degs[k])), cols))
    return steps


def betti_from_resolution(steps: Sequence[ResolutionStep]) -> BettiTable:
    e = {(0, 0): 1}
    for i, s in enumerate(steps, start=1):
        for d in s.source.shifts:
            e[(i, d)] = e.get((i, d), 0) + 1
    return BettiTable(e)


def betti_table(I: Ideal) -> BettiTable:
    if I.is_unit():
        return BettiTable({})
    return betti_from_resolution(minimal_free_resolution(I))


def frame_betti(I: Ideal) -> BettiTable:
    """Betti numbers from ranks of the scalar parts of the frame differentials.

    Tor(R/I, k) is the homology of the frame tensored with k, whose differentials
    are the constant entries; no minimalization is performed.
    """
    R = I.ring
    levels = schreyer_frame(I)
    mats, degs = _frame_matrices(R, levels)
    one = R.one
    p = R.p
    ranks = {}
    for k, cols in enumerate(mats):
        for d in set(degs[k + 1]):
            cs = [c for c, dd in enumerate(degs[k + 1]) if dd == d]
            rs = [r for r, dd in enumerate(degs[k]) if dd == d]
            if not cs or not rs:
                continue
            rpos = {r: i for i, r in enumerate(rs)}
            A = np.zeros((len(rs), len(cs)), dtype=np.int64)
            for j, c in enumerate(cs):
                for r, ent in cols[c].items():
                    if r in rpos and one in ent:
                        A[rpos[r], j] = ent[one]
            ranks[(k + 1, d)] = linalg.rank(A, p)
    e = {(0, 0): 1}
    for k in range(1, len(degs)):
        for d in set(degs[k]):
            n = degs[k].count(d)
            e[(k, d)] = n - ranks.get((k, d), 0) - ranks.get((k + 1, d), 0)
    return BettiTable(e)


# -- syzygies of given generators -------------------------------------------

def syzygies(generators: Sequence, target_shifts: Sequence[int] | None = None,
             minimal: bool = True) -> ResolutionStep:
    """Generators of the syzygy module of the given elements.

    Elements are Polynomials (elements of R) or equal-length lists of
    Polynomials (elements of a free module with ``target_shifts``).  The
    syzygies are read off a position-over-term Groebner basis of the graph
    module {(f_i | e_i)}; with ``minimal`` a minimal generating set is returned.
    """
    gens = [list(g) if isinstance(g, (list, tuple)) else [g] for g in generators]
    if not gens:
        raise ValueError("no generators")
    R = gens[0][0].ring
    m = len(gens[0])
    r = len(gens)
    tshift = list(target_shifts) if target_shifts is not None else [0] * m
    shifts = []
    for g in gens:
        d = next((tshift[i] + f.degree() for i, f in enumerate(g) if f), None)
        if d is None:
            raise ValueError("zero generator")
        shifts.append(d)
    cshift = R.auxshift
    total = m + r
    # component priority: target components above the tracking components
    def key(comp, mono):
        return ((total - comp) << cshift) | mono

    elems = []
    for i, g in enumerate(gens):
        d: dict = {}
        for comp, f in enumerate(g):
            for mono, c in f.terms.items():
                d[key(comp, mono)] = c
        d[key(m + i, R.one)] = 1
        elems.append(d)
    gb = groebner_basis(R, elems, cshift=cshift)
    low = (1 << cshift) - 1
    syz = []
    for f in gb:
        comps = {total - (k >> cshift) for k in f}
        if all(c >= m for c in comps):
            col: dict = {}
            for k, c in f.items():
                idx = total - (k >> cshift) - m
                col.setdefault(idx, {})[k & low] = c
            syz.append({i: Polynomial(R, t) for i, t in col.items()})
    def degree(col):
        i, f = next(iter(col.items()))
        return shifts[i] + f.degree()
    syz.sort(key=degree)
    if minimal:
        syz = _minimal_columns(R, syz, shifts)
    src = GradedFreeModule(tuple(degree(c) for c in syz))
    return ResolutionStep(src, GradedFreeModule(tuple(shifts)), syz)


def _minimal_columns(R: PolyRing, cols: list, shifts: list) -> list:
    """Drop columns lying in the submodule generated by the others of lower or equal degree."""
    cshift = R.auxshift
    r = len(shifts)

    def as_dict(col):
        d = {}
        for i, f in col.items():
            for mono, c in f.terms.items():
                d[((r - i) << cshift) | mono] = c
        return d

    kept = []
    from .groebner import _Basis, _reduce
    for col in cols:
        if kept:
            gb = groebner_basis(R, [as_dict(c) for c in kept], cshift=cshift)
            B = _Basis(R, cshift)
            for g in gb:
                B.add(g, 0)
            if not _reduce(as_dict(col), B, R.p):
                continue
        kept.append(col)
    return kept


# -- Koszul homology route --------------------------------------------------

def generic_regularity_bound(I: Ideal, seed: int = 1) -> int:
    """Largest degree of a grevlex Groebner basis after a random linear change of coordinates.

    In generic coordinates this degree equals reg(I) (Bayer-Stillman), which bounds the
    rows of the Betti table of R/I.  The grevlex basis in the given coordinates need not.
    """
    from .polyring import SplitMix64, random_form
    R = I.ring
    rng = SplitMix64(seed)
    images = {v: random_form(R, 1, rng) for v in R.graded}
    gens = [g.substitute(images, R, homogeneous=True) for g in I.generators]
    return max((g.degree() for g in Ideal(R, gens).groebner()), default=1)


def koszul_betti(I: Ideal, max_row: int | None = None) -> BettiTable:
    """Betti numbers as dimensions of Tor(R/I, k) from the Koszul complex on R/I.

    C_{i,j} = wedge^i(k^n) ⊗ (R/I)_{j-i}; b_{i,j} = dim C_{i,j} - rank d_{i,j} - rank d_{i+1,j}.
    """
    R = I.ring
    n = R.n
    p = R.p
    if max_row is None:
        max_row = generic_regularity_bound(I)
    var_keys = [R.var(v).lead() for v in R.graded]
    std: dict = {}

    def standard(d):
        if d not in std:
            std[d] = I.standard_monomials(d) if d >= 0 else []
        return std[d]

    mult_cache: dict = {}

    def times(s, m):
        key = (s, m)
        if key not in mult_cache:
            mult_cache[key] = I.reduce_terms({R.mmul(var_keys[s], m): 1})
        return mult_cache[key]

    subsets = {i: list(itertools.combinations(range(n), i)) for i in range(n + 1)}

    def dmatrix(i, j):
        """d: C_{i,j} -> C_{i-1,j}."""
        if i <= 0 or i > n:
            return None
        src_m = standard(j - i)
        tgt_m = standard(j - i + 1)
        if not src_m or not tgt_m:
            return None
        tpos = {}
        for S in subsets[i - 1]:
            for m in tgt_m:
                tpos[(S, m)] = len(tpos)
        cols = []
        for S in subsets[i]:
            for m in src_m:
                col = {}
                for t, s in enumerate(S):
                    sign = 1 if t % 2 == 0 else p - 1
                    rest = S[:t] + S[t + 1:]
                    for mm, c in times(s, m).items():
                        idx = tpos[(rest, mm)]
                        col[idx] = (col.get(idx, 0) + sign * c) % p
                cols.append(col)
        A = np.zeros((len(tpos), len(cols)), dtype=np.int64)
        for jj, col in enumerate(cols):
            for ii, v in col.items():
                A[ii, jj] = v
        return A

    rank_cache: dict = {}

    def rk(i, j):
        if (i, j) not in rank_cache:
            A = dmatrix(i, j)
            rank_cache[(i, j)] = 0 if A is None else linalg.rank(A, p)
        return rank_cache[(i, j)]

    e = {}
    for i in range(n + 1):
        for j in range(i, i + max_row + 1):
            dim = len(subsets[i]) * len(standard(j - i))
            if not dim:
                continue
            b = dim - rk(i, j) - rk(i + 1, j)
            if b:
                e[(i, j)] = b
    return BettiTable(e)


# -- Hilbert data -------------------------------------------------------------

@dataclass
class HilbertData:
    numerator: list          # N(T) with HS = N / (1-T)^n
    nvars: int
    reduced: list            # N / (1-T)^(n - dim)
    dimension: int           # Krull dimension of R/I
    degree: int
    hilbert_polynomial: list  # coefficients in m, lowest first, as Fractions
    genus: int | None = None

    def hp(self, m: int) -> Fraction:
        return sum((c * m ** i for i, c in enumerate(self.hilbert_polynomial)), Fraction(0))

    def projective_dimension(self) -> int:
        return self.dimension - 1

    def hp_string(self, var: str = "m") -> str:
        terms = []
        for i in reversed(range(len(self.hilbert_polynomial))):
            c = self.hilbert_polynomial[i]
            if c == 0:
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                terms.append(mono if c == 1 else f"{cs}{mono}")
        s = " + ".join(terms) if terms else "0"
        return s.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"numerator": self.numerator, "nvars": self.nvars, "dimension": self.dimension,
                "degree": self.degree,
                "hilbert_polynomial": [str(c) for c in self.hilbert_polynomial],
                "genus": self.genus}


def _binom_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients in m of binomial(m + shift, k)."""
    out = [Fraction(1)]
    for l in range(k):
        # multiply by (m + shift - l)
        a = shift - l
        new = [Fraction(0)] * (len(out) + 1)
        for i, c in enumerate(out):
            new[i] += c * a
            new[i + 1] += c
        out = new
    f = factorial(k)
    return [c / f for c in out]


def hilbert_from_numerator(num: list[int], n: int) -> HilbertData:
    num = poly_trim(num)
    if not num:
        return HilbertData([], n, [], 0, 0, [], None)
    red, k = divide_one_minus_t(num)
    dim = n - k
    hp = [Fraction(0)]
    if dim > 0:
        hp = [Fraction(0)] * dim
        for i, h in enumerate(red):
            for e, c in enumerate(_binom_poly(dim - 1 - i, dim - 1)):
                hp[e] += h * c
        while len(hp) > 1 and hp[-1] == 0:
            hp.pop()
    deg = sum(red)
    genus = None
    if dim == 2:
        genus = int(1 - hp[0])
    return HilbertData(num, n, red, dim, deg, hp, genus)


def hilbert_data(I: Ideal) -> HilbertData:
    return hilbert_from_numerator(I.hilbert_numerator(), I.ring.n)


def hilbert_function(I: Ideal, d: int) -> int:
    """dim (R/I)_d by counting standard monomials."""
    return len(I.standard_monomials(d))
