"""Groebner bases, normal forms, membership, colon ideals and intersections.

Buchberger's algorithm with the Gebauer-Moeller pair criteria; pairs are
processed in order of sugar degree, which for homogeneous input is the plain
degree, so the basis is completed one degree at a time.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .monomial import hilbert_numerator, poly_add, poly_sub, poly_trim
from .polyring import (Polynomial, PolyRing, RingMismatch, dumps_polys, loads_polys,
                       pmul_term, pscale)


class _Basis:
    """Monic polynomials with fast lead-divisor lookup.

    With ``cshift`` set, keys are module terms ``(component << cshift) | monomial``
    and a divisor must share the component.
    """

    def __init__(self, ring: PolyRing, cshift: int | None = None):
        if cshift is not None and ring.naux:
            raise ValueError("module terms over rings with auxiliary variables are unsupported")
        self.ring = ring
        self.cshift = cshift
        self._comp: list[int] = []
        self.leads: list[int] = []
        self.tails: list[list] = []
        self.polys: list[dict] = []
        self.sugar: list[int] = []
        self._probe: list[int] = []
        self._aux: list[int] = []
        self._hit: dict = {}
        self._miss: set = set()

    def add(self, f: dict, sugar: int) -> int:
        R = self.ring
        lead = max(f)
        self.leads.append(lead)
        self.tails.append([(k, c) for k, c in f.items() if k != lead])
        self.polys.append(f)
        self.sugar.append(sugar)
        self._probe.append((lead & R.gmask) | R.gguard)
        self._aux.append(lead >> R.auxshift)
        if self.cshift is not None:
            self._comp.append(lead >> self.cshift)
        self._miss.clear()
        return len(self.leads) - 1

    def find(self, k: int, skip: int = -1) -> int:
        j = self._hit.get(k)
        if j is not None and j != skip:
            return j
        if k in self._miss and skip < 0:
            return -1
        R = self.ring
        G = R.gguard
        kk = k & R.gmask
        if self.cshift is not None:
            comp = k >> self.cshift
            cs = self._comp
            for j, a in enumerate(self._probe):
                if j != skip and cs[j] == comp and (a - kk) & G == G:
                    if skip < 0:
                        self._hit[k] = j
                    return j
        elif R.naux:
            ka = (k >> R.auxshift) | R.aguard
            ga = R.aguard
            for j, a in enumerate(self._probe):
                if j != skip and (a - kk) & G == G and (ka - self._aux[j]) & ga == ga:
                    if skip < 0:
                        self._hit[k] = j
                    return j
        else:
            for j, a in enumerate(self._probe):
                if j != skip and (a - kk) & G == G:
                    if skip < 0:
                        self._hit[k] = j
                    return j
        if skip < 0:
            self._miss.add(k)
        return -1


def _reduce(f: dict, B: _Basis, p: int, skip: int = -1) -> dict:
    """Full reduction of f by B; returns the remainder."""
    f = dict(f)
    heap = [-k for k in f]
    heapq.heapify(heap)
    rem = {}
    find = B.find
    leads, tails = B.leads, B.tails
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = f.pop(k, 0)
        if not c:
            continue
        j = find(k, skip)
        if j < 0:
            rem[k] = c
            continue
        s = k - leads[j]
        get = f.get
        for kk, cc in tails[j]:
            key = kk + s
            old = get(key)
            if old is None:
                f[key] = (-c * cc) % p
                push(heap, -key)
            else:
                v = (old - c * cc) % p
                if v:
                    f[key] = v
                else:
                    del f[key]
    return rem


def _monic(f: dict, p: int) -> dict:
    lc = f[max(f)]
    if lc == 1:
        return f
    return pscale(f, pow(lc, -1, p), p)


def groebner_basis(ring: PolyRing, polys: Iterable[dict], cshift: int | None = None) -> list[dict]:
    """Reduced Groebner basis (monic dicts) sorted by (degree, lead).

    ``cshift`` switches to submodules of a free module (position over term).
    """
    R = ring
    p = R.p
    inputs = [_monic(dict(f), p) for f in polys if f]
    if not inputs:
        return []
    B = _Basis(R, cshift)
    if cshift is None:
        def _lcm_key(R, a, b):
            return R.mlcm(a, b)

        def coprime(a, b):
            return R.coprime(a, b)

        def same(a, b):
            return True
    else:
        low = (1 << cshift) - 1

        def _lcm_key(R, a, b):
            return ((a >> cshift) << cshift) | R.mlcm(a & low, b & low)

        def coprime(a, b):
            return False

        def same(a, b):
            return a >> cshift == b >> cshift
    active: list[bool] = []
    queue: list = []
    seq = 0
    for f in sorted(inputs, key=lambda f: (max(R.mdeg(k) for k in f), max(f))):
        deg = max(R.mdeg(k) for k in f)
        heapq.heappush(queue, (deg, max(f), seq, -1, f))
        seq += 1
    pairs: dict = {}

    def sugar_of(i, j, lcm):
        dl = R.mdeg(lcm)
        return max(B.sugar[i] + dl - R.mdeg(B.leads[i]), B.sugar[j] + dl - R.mdeg(B.leads[j]))

    def update(h: int):
        nonlocal seq
        lh = B.leads[h]
        cand = []
        for g in range(h):
            if active[g] and same(lh, B.leads[g]):
                cand.append((g, _lcm_key(R, lh, B.leads[g]), coprime(lh, B.leads[g])))
        # Gebauer-Moeller criterion M / F
        keep = []
        for idx, (g, l, cop) in enumerate(cand):
            if cop:
                keep.append((g, l, cop))
                continue
            redundant = False
            for idx2, (g2, l2, cop2) in enumerate(cand):
                if idx2 == idx:
                    continue
                if R.mdivides(l2, l) and (l2 != l or idx2 < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((g, l, cop))
        # criterion B on old pairs
        for key in list(pairs):
            i, j = key
            l = pairs[key][1]
            if (same(lh, l) and R.mdivides(lh, l) and _lcm_key(R, B.leads[i], lh) != l
                    and _lcm_key(R, B.leads[j], lh) != l):
                del pairs[key]
        for g, l, cop in keep:
            if cop:
                continue
            s = sugar_of(g, h, l)
            pairs[(g, h)] = (s, l, seq)
            heapq.heappush(queue, (s, l, seq, g, h))
            seq += 1
        for g in range(h):
            if active[g] and same(lh, B.leads[g]) and R.mdivides(lh, B.leads[g]):
                active[g] = False

    while queue:
        s, l, sq, i, j = heapq.heappop(queue)
        if i == -1:
            f = j
            sugar = s
        else:
            cur = pairs.get((i, j))
            if cur is None or cur[2] != sq:
                continue
            del pairs[(i, j)]
            li, lj = B.leads[i], B.leads[j]
            fi = pmul_term(B.polys[i], R.mquo(l, li), 1, R)
            fj = pmul_term(B.polys[j], R.mquo(l, lj), 1, R)
            f = fi
            for k, c in fj.items():
                v = (f.get(k, 0) - c) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
            sugar = s
        r = _reduce(f, B, p)
        if r:
            r = _monic(r, p)
            h = B.add(r, sugar)
            active.append(True)
            update(h)
    return _interreduce(R, [B.polys[i] for i in range(len(B.polys)) if active[i]], cshift)


def _interreduce(R: PolyRing, polys: list[dict], cshift: int | None = None) -> list[dict]:
    p = R.p
    polys = sorted(polys, key=lambda f: max(f))
    minimal: list[dict] = []

    def divides(a, b):
        if cshift is not None and a >> cshift != b >> cshift:
            return False
        return R.mdivides(a, b)

    for f in polys:
        lf = max(f)
        if not any(divides(max(g), lf) for g in minimal):
            minimal.append(f)
    B = _Basis(R, cshift)
    for f in minimal:
        B.add(f, 0)
    out = []
    for i, f in enumerate(minimal):
        lead = B.leads[i]
        tail = {k: c for k, c in f.items() if k != lead}
        r = _reduce(tail, B, p, skip=i)
        r[lead] = f[lead]
        out.append(_monic(r, p))
    out.sort(key=lambda f: (R.mdeg(max(f)), max(f)))
    return out


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    R = f.ring
    lf, lg = f.lead(), g.lead()
    l = R.mlcm(lf, lg)
    p = R.p
    a = pmul_term(f.terms, R.mquo(l, lf), pow(f.terms[lf], -1, p), R)
    b = pmul_term(g.terms, R.mquo(l, lg), pow(g.terms[lg], -1, p), R)
    return Polynomial(R, a) - Polynomial(R, b)


@dataclass
class ReductionTrace:
    """f = sum(quotients[i] * basis[i]) + remainder."""

    quotients: list
    remainder: Polynomial
    basis: list = field(default_factory=list)

    def reassemble(self) -> Polynomial:
        out = self.remainder
        for q, g in zip(self.quotients, self.basis):
            out = out + q * g
        return out


class Ideal:
    """Homogeneous ideal given by generators, with a cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable = (), check_homogeneous: bool = True):
        gens = []
        for g in generators:
            g = ring(g)
            if g.is_zero():
                continue
            if check_homogeneous and not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
            gens.append(g)
        self.ring = ring
        self.generators: list[Polynomial] = gens
        self._gb: list[Polynomial] | None = None
        self._basis: _Basis | None = None

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring!r})"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal | Sequence[Polynomial]") -> "Ideal":
        gens = other.generators if isinstance(other, Ideal) else list(other)
        if isinstance(other, Ideal) and other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")
        return Ideal(self.ring, self.generators + list(gens), check_homogeneous=False)

    def groebner(self) -> list[Polynomial]:
        if self._gb is None:
            dicts = groebner_basis(self.ring, [g.terms for g in self.generators])
            self._gb = [Polynomial(self.ring, d) for d in dicts]
        return self._gb

    def _gb_index(self) -> _Basis:
        if self._basis is None:
            B = _Basis(self.ring)
            for g in self.groebner():
                B.add(g.terms, 0)
            self._basis = B
        return self._basis

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch("polynomial and ideal live in different rings")
        return Polynomial(self.ring, _reduce(f.terms, self._gb_index(), self.ring.p))

    def reduce_terms(self, f: dict) -> dict:
        return _reduce(f, self._gb_index(), self.ring.p)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def lead_exponents(self) -> list[tuple]:
        return [self.ring.unpack(g.lead()) for g in self.groebner()]

    def hilbert_numerator(self) -> list[int]:
        """Numerator N(T) of HS(R/I) = N(T)/(1-T)^n."""
        if not self.generators:
            return [1]
        return hilbert_numerator(self.lead_exponents(), self.ring.n)

    def standard_monomials(self, degree: int) -> list[int]:
        B = self._gb_index()
        return [m for m in self.ring.monomials(degree) if B.find(m) < 0]

    def to_json(self) -> str:
        return dumps_polys(self.generators, self.ring)

    @classmethod
    def from_json(cls, text: str) -> "Ideal":
        R, gens = loads_polys(text)
        return cls(R, gens)


def reduced_groebner(I: Ideal) -> list[Polynomial]:
    return list(I.groebner())


def normal_form(f: Polynomial, I: Ideal) -> ReductionTrace:
    """Division of f by the reduced Groebner basis of I, keeping quotients."""
    R = I.ring
    if f.ring != R:
        raise RingMismatch("polynomial and ideal live in different rings")
    gb = I.groebner()
    B = I._gb_index()
    p = R.p
    quot = [dict() for _ in gb]
    rem: dict = {}
    work = dict(f.terms)
    heap = [-k for k in work]
    heapq.heapify(heap)
    while heap:
        k = -heapq.heappop(heap)
        c = work.pop(k, 0)
        if not c:
            continue
        j = B.find(k)
        if j < 0:
            rem[k] = c
            continue
        q = R.mquo(k, B.leads[j])
        quot[j][q] = (quot[j].get(q, 0) + c) % p
        s = k - B.leads[j]
        for kk, cc in B.tails[j]:
            key = kk + s
            if key not in work:
                heapq.heappush(heap, -key)
            v = (work.get(key, 0) - c * cc) % p
            if v:
                work[key] = v
            else:
                work.pop(key, None)
    return ReductionTrace([Polynomial(R, {k: v for k, v in q.items() if v}) for q in quot],
                          Polynomial(R, rem), list(gb))


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")
    return [g.terms for g in I.groebner()] == [g.terms for g in J.groebner()]


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    if not polys:
        return True
    R = polys[0].ring
    B = _Basis(R)
    for g in polys:
        B.add(_monic(dict(g.terms), R.p), 0)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if _reduce(s_polynomial(polys[i], polys[j]).terms, B, R.p):
                return False
    return True


def is_reduced(polys: Sequence[Polynomial]) -> bool:
    """Monic, and no term of any element divisible by another element's lead."""
    if not polys:
        return True
    R = polys[0].ring
    leads = [g.lead() for g in polys]
    for i, g in enumerate(polys):
        if g.lead_coeff() != 1:
            return False
        for k in g.terms:
            for j, l in enumerate(leads):
                if (i != j or k != l) and R.mdivides(l, k):
                    return False
    return True


# -- degree-wise kernels: colon ideals and intersections ---------------------

def _numerator_of(I: Ideal) -> list[int]:
    return poly_trim(I.hilbert_numerator())


def _kernel_ideal(ring: PolyRing, target: list[int], maps: list, max_degree: int = 40) -> Ideal:
    """Ideal K with K_d = intersection of kernels of the given degree maps.

    ``maps`` is a list of (ideal, multiplier polynomial); f is in K_d iff
    f*multiplier reduces to zero modulo ideal for every pair.  Generators are
    collected degree by degree until HS(R/K) has numerator ``target``.
    """
    R = ring
    p = R.p
    target = poly_trim(target)
    K = Ideal(R, [])
    if target == [1]:
        return K
    cache: list[dict] = [dict() for _ in maps]
    var_keys = [R.var(v).lead() for v in R.graded]

    def image(idx: int, m: int) -> dict:
        # NF(m * g) computed as NF(x * NF(m/x * g)) to keep reductions small
        c = cache[idx]
        if m in c:
            return c[m]
        I, g = maps[idx]
        if m == R.one:
            val = I.reduce_terms(g.terms)
        else:
            e = R.unpack(m)
            i = next(i for i in range(R.n) if e[i])
            prev = image(idx, R.mquo(m, var_keys[i]))
            val = I.reduce_terms(pmul_term(prev, var_keys[i], 1, R)) if prev else {}
        c[m] = val
        return val

    for d in range(0, max_degree + 1):
        mons = R.monomials(d)
        cols: dict = {}
        rows = []
        for m in mons:
            row = {}
            for idx in range(len(maps)):
                for k, v in image(idx, m).items():
                    key = (idx, k)
                    if key not in cols:
                        cols[key] = len(cols)
                    row[cols[key]] = v
            rows.append(row)
        A = np.zeros((len(cols), len(mons)), dtype=np.int64)
        for j, row in enumerate(rows):
            for i, v in row.items():
                A[i, j] = v
        ker = linalg.nullspace(A, p) if len(cols) else np.eye(len(mons), dtype=np.int64)
        if len(ker):
            vecs = [{mons[j]: int(v) for j, v in enumerate(vec) if v} for vec in ker]
            new = _new_generators(K, vecs, R)
            if new:
                K = Ideal(R, K.generators + new)
        if K.generators and _numerator_of(K) == target:
            return K
    raise RuntimeError("degree bound exceeded while assembling kernel ideal")


def _new_generators(K: Ideal, vecs: list[dict], R: PolyRing) -> list[Polynomial]:
    """Elements of span(vecs) completing K_d, as an echelonized list."""
    p = R.p
    if K.generators:
        vecs = [K.reduce_terms(v) for v in vecs]
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    keys = sorted({k for v in vecs for k in v}, reverse=True)
    pos = {k: i for i, k in enumerate(keys)}
    A = np.zeros((len(vecs), len(keys)), dtype=np.int64)
    for i, v in enumerate(vecs):
        for k, c in v.items():
            A[i, pos[k]] = c
    E, _ = linalg.rref(A, p)
    return [Polynomial(R, {keys[j]: int(c) for j, c in enumerate(row) if c}) for row in E]


def colon_principal(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) for a single homogeneous g."""
    R = I.ring
    if g.is_zero():
        raise ValueError("colon by the zero ideal")
    e = g.degree()
    a = _numerator_of(I)
    b = _numerator_of(I + [g])
    diff = poly_sub(a, b)
    if any(diff[:e]):
        raise ArithmeticError("Hilbert series difference not divisible by T^deg(g)")
    target = diff[e:]
    return _kernel_ideal(R, target, [(I, g)])


def intersect(I: Ideal, J: Ideal, method: str = "linear") -> Ideal:
    """I ∩ J, by degree-wise linear algebra (default) or by elimination."""
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")
    if method == "elimination":
        return intersect_elimination(I, J)
    R = I.ring
    one = R.const(1)
    if not I.generators or not J.generators:
        return Ideal(R, [])
    target = poly_sub(poly_add(_numerator_of(I), _numerator_of(J)), _numerator_of(I + J))
    return _kernel_ideal(R, target, [(I, one), (J, one)])


def intersect_elimination(I: Ideal, J: Ideal, tname: str = "_t") -> Ideal:
    """I ∩ J = (t I + (1 - t) J) ∩ R, with t a degree-0 variable eliminated first."""
    R = I.ring
    S = R.extend(aux=[tname])
    t = S.var(tname)
    gens = [t * S.imbed(f) for f in I.generators]
    gens += [(1 - t) * S.imbed(f) for f in J.generators]
    gb = groebner_basis(S, [f.terms for f in gens])
    back = []
    for f in gb:
        P = Polynomial(S, f)
        if tname not in P.variables():
            back.append(_restrict(P, R))
    return Ideal(R, back)


def _restrict(f: Polynomial, R: PolyRing) -> Polynomial:
    S = f.ring
    pos = [S.index[v] for v in R.names]
    out = {}
    for k, c in f.terms.items():
        e = S.unpack(k)
        out[R.pack([e[i] for i in pos])] = c
    return Polynomial(R, out)


def colon(I: Ideal, J: Ideal | Sequence[Polynomial], method: str = "linear") -> Ideal:
    """(I : J) as the intersection of the principal colons (I : g), g in J."""
    gens = J.generators if isinstance(J, Ideal) else [I.ring(g) for g in J]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("colon by the zero ideal")
    if method == "elimination":
        parts = [colon_principal_elimination(I, g) for g in gens]
    else:
        parts = [colon_principal(I, g) for g in gens]
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P, method=method)
    return out


def colon_principal_elimination(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) = (I ∩ (g)) / g with the intersection taken by elimination."""
    R = I.ring
    G = Ideal(R, [g])
    inv = pow(g.lead_coeff(), -1, R.p)
    out = []
    for h in intersect_elimination(I, G).generators:
        tr = normal_form(h, G)
        if not tr.remainder.is_zero():
            raise ArithmeticError("intersection element not divisible by g")
        # the basis of (g) is g scaled to be monic
        out.append(tr.quotients[0] * inv)
    return Ideal(R, out)


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """A minimal homogeneous generating set, chosen degree by degree."""
    R = I.ring
    gens = sorted(I.generators, key=lambda g: g.degree())
    out: list[Polynomial] = []
    cur = Ideal(R, [])
    for d in sorted({g.degree() for g in gens}):
        layer = [g.terms for g in gens if g.degree() == d]
        for new in _new_generators(cur, layer, R):
            out.append(new)
        cur = Ideal(R, out)
    return out


def codimension(I: Ideal) -> int:
    from .monomial import divide_one_minus_t
    num = I.hilbert_numerator()
    if not num:
        return I.ring.n + 1
    _, k = divide_one_minus_t(num)
    return k
