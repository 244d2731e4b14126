"""Catalogue of curve families: random instances built from their defining formats.

Every family is given by two functions: ``draw(R, rng)`` picks the general
forms and scalars (the provenance) and ``equations(R, prov)`` turns them into
ideal generators.  The equation builders take optional perturbation arguments
so the deformation module can reuse them with a parameter ``t`` in place of a
zero entry.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import linalg
from ..groebner import Ideal, colon, ideal_equal, minimal_generators
from ..homology import BettiTable, betti_table, hilbert_data
from ..polyring import DEFAULT_CHAR, Polynomial, PolyRing, SplitMix64, derived_seed, random_form
from .matrices import CramerFormat, SkewMatrix, maximal_pfaffians, pfaffian, sub_pfaffian
from .tables import DEGREE_TABLE, degree_of, genus_of, named_table

RETRY_BUDGET = 5
CURVE_VARS = ("u0", "u1", "u2", "u3", "u4", "u5")


class GenericityError(RuntimeError):
    """Raised when no seed in the retry budget produced the expected invariants."""

    def __init__(self, name: str, seeds: list[int], reasons: list[str]):
        self.name = name
        self.seeds = seeds
        self.reasons = reasons
        detail = "; ".join(f"seed {s}: {r}" for s, r in zip(seeds, reasons))
        super().__init__(f"{name}: genericity failed for every seed tried ({detail})")


@dataclass
class FamilyDef:
    name: str
    betti: str
    variables: tuple
    summary: str
    draw: Callable
    equations: Callable
    # structural assertions on the ambient generators: (R, prov, gens) -> list of failures
    structure: Callable | None = None

    @property
    def degree(self) -> int:
        return degree_of(self.betti)

    @property
    def genus(self) -> int:
        return genus_of(self.betti)

    def ambient_ring(self, char: int = DEFAULT_CHAR) -> PolyRing:
        return PolyRing(self.variables, char)


@dataclass
class FamilyInstance:
    name: str
    ring: PolyRing                 # the ring of the curve (P^5 unless overridden)
    ideal: Ideal
    seed: int
    expected: dict
    provenance: dict               # symbol -> Polynomial in ambient_ring
    ambient_ring: PolyRing
    ambient_ideal: Ideal
    section: dict | None = None    # ambient variable -> linear form in ring
    attempts: list = field(default_factory=list)
    betti: BettiTable | None = None

    def to_curve(self, f: Polynomial) -> Polynomial:
        """Push an ambient polynomial to the curve ring through the section."""
        if self.section is None:
            return self.ring.imbed(f) if f.ring != self.ring else f
        return f.substitute(self.section, self.ring)

    def to_json(self) -> dict:
        from ..polyring import format_poly
        out = {
            "name": self.name,
            "seed": self.seed,
            "attempts": self.attempts,
            "ring": self.ring.header(),
            "generators": [format_poly(g) for g in self.ideal.generators],
            "expected": self.expected,
            "ambient_ring": self.ambient_ring.header(),
            "ambient_generators": [format_poly(g) for g in self.ambient_ideal.generators],
            "provenance": {k: format_poly(v) for k, v in self.provenance.items()},
        }
        if self.section is not None:
            out["section"] = {k: format_poly(v) for k, v in self.section.items()}
        if self.betti is not None:
            out["betti"] = self.betti.to_json()
        return out


# -- helpers -------------------------------------------------------------------

def _vars(*names: str) -> tuple:
    return tuple(names)


def _xs(prefix: str, n: int, start: int = 0) -> tuple:
    return tuple(f"{prefix}{i}" for i in range(start, start + n))


def _form(R: PolyRing, rng: SplitMix64, d: int, allowed=None) -> Polynomial:
    return random_form(R, d, rng, allowed)


def _scalar(R: PolyRing, rng: SplitMix64) -> Polynomial:
    return R.const(rng.nonzero(R.p))


def _lift(S: PolyRing, prov: dict) -> dict:
    return {k: S.imbed(v) for k, v in prov.items()}


def _need(prov: dict, *keys: str):
    missing = [k for k in keys if k not in prov]
    if missing:
        raise KeyError(f"provenance is missing {', '.join(missing)}")
    return [prov[k] for k in keys]


def restrict_to(f: Polynomial, keep) -> Polynomial:
    """Set every graded variable outside ``keep`` to zero."""
    R = f.ring
    zero = {v: 0 for v in R.graded if v not in keep}
    return f.substitute(zero, R)


def split_by_support(f: Polynomial, names) -> tuple[Polynomial, Polynomial]:
    """(terms involving some variable in ``names``, the other terms)."""
    R = f.ring
    idx = [R.index[v] for v in names]
    inside, outside = {}, {}
    for k, c in f.terms.items():
        e = R.unpack(k)
        (inside if any(e[i] for i in idx) else outside)[k] = c
    return Polynomial(R, inside), Polynomial(R, outside)


def solve_combination(gens, degrees, target: Polynomial, allowed, rng: SplitMix64 | None = None):
    """Forms u_i of the given degrees in the ``allowed`` variables with sum g_i u_i = target.

    A random element of the solution space is returned when ``rng`` is given,
    otherwise the particular solution with free coordinates set to zero.
    Raises ValueError when there is no solution.
    """
    R = target.ring
    p = R.p
    idx = [R.index[v] for v in allowed]
    cols = []
    for g, d in zip(gens, degrees):
        for m in R.monomials(d, idx):
            cols.append((len(cols), g * Polynomial(R, {m: 1}), m))
    keys = sorted({k for _, h, _ in cols for k in h.terms} | set(target.terms), reverse=True)
    pos = {k: i for i, k in enumerate(keys)}
    A = np.zeros((len(keys), len(cols) + 1), dtype=np.int64)
    for j, h, _ in cols:
        for k, c in h.terms.items():
            A[pos[k], j] = c
    for k, c in target.terms.items():
        A[pos[k], -1] = c
    E, piv = linalg.rref(A, p)
    if len(cols) in piv:
        raise ValueError("no solution")
    x = [0] * len(cols)
    free = [j for j in range(len(cols)) if j not in set(piv)]
    if rng is not None:
        for j in free:
            x[j] = rng.element(p)
    for r, c in enumerate(piv):
        v = int(E[r, -1])
        for j in free:
            v -= int(E[r, j]) * x[j]
        x[c] = v % p
    out = []
    j = 0
    for g, d in zip(gens, degrees):
        terms = {}
        for m in R.monomials(d, idx):
            if x[j]:
                terms[m] = x[j]
            j += 1
        out.append(Polynomial(R, terms))
    return out


def in_ideal_of_vars(f: Polynomial, names) -> bool:
    """f lies in the ideal generated by the listed variables."""
    return restrict_to(f, [v for v in f.ring.graded if v not in names]).is_zero()


def seed_for(seed: int, tag: str) -> int:
    """Independent stream for auxiliary randomness attached to ``tag``."""
    return (seed * 0x9E3779B97F4A7C15 + zlib.crc32(tag.encode())) & ((1 << 64) - 1)


def _pfs(R: PolyRing, upper) -> list[Polynomial]:
    return maximal_pfaffians(SkewMatrix.from_upper(R, upper))


# -- degree 15 -----------------------------------------------------------------

V550 = _xs("x", 6)


def draw_550a(R, rng):
    prov = {f"m{i}{j}": _form(R, rng, 1) for i in range(1, 6) for j in range(i + 1, 6)}
    prov["X3"] = _form(R, rng, 3)
    return prov


def eq_550a(R, P):
    upper = [[P[f"m{i}{j}"] for j in range(i + 1, 6)] for i in range(1, 5)]
    return _pfs(R, upper) + [P["X3"]]


V551 = ("x0", "x1", "x2", "x3", "x4", "y")


def draw_551a(R, rng):
    prov = {}
    for row, d in (("a", 1), ("b", 1), ("c", 2)):
        for i in range(3):
            prov[f"{row}{i}"] = _form(R, rng, d)
    prov["F2"] = _form(R, rng, 3)
    return prov


def cramer_551a(R, P, corner=0) -> CramerFormat:
    a = _need(P, "a0", "a1", "a2")
    b = _need(P, "b0", "b1", "b2")
    c = _need(P, "c0", "c1", "c2")
    M = [[R.zero(), *a], [R.zero(), *b], [R(corner), *c]]
    v = [P["F2"], R.var("x0"), R.var("x1"), R.var("x2")]
    return CramerFormat(M, v, R.var("y"))


def eq_551a(R, P, corner=0):
    return cramer_551a(R, P, corner).equations()


V562a = ("x1", "x2", "x3", "x4", "y1", "y2")


def _draw_562_common(R, rng):
    prov = {}
    for s in ("a", "b"):
        for ij in ("13", "14", "23", "24"):
            prov[f"{s}{ij}"] = _form(R, rng, 1)
    return prov


def draw_562a(R, rng):
    prov = _draw_562_common(R, rng)
    prov["H12"] = _form(R, rng, 3)
    prov["H34"] = _form(R, rng, 3)
    return prov


def draw_562ai(R, rng):
    prov = _draw_562_common(R, rng)
    H = _form(R, rng, 3)
    prov["H12"] = H
    prov["H34"] = H
    return prov


def draw_562aii(R, rng):
    prov = _draw_562_common(R, rng)
    prov["H12"] = _form(R, rng, 3)
    prov["H34"] = R.zero()
    return prov


def bilinear_cubics_562(R, P) -> dict:
    """F1, F2 and their formal partial derivatives (coefficient forms held fixed)."""
    x = {i: R.var(f"x{i}") for i in (1, 2, 3, 4)}
    out = {}
    for s, F in (("a", "F1"), ("b", "F2")):
        c = {ij: P[f"{s}{ij}"] for ij in ("13", "14", "23", "24")}
        out[F] = c["13"] * x[3] * x[1] + c["14"] * x[4] * x[1] + c["23"] * x[3] * x[2] + c["24"] * x[4] * x[2]
        out[f"d1{F}"] = c["13"] * x[3] + c["14"] * x[4]
        out[f"d2{F}"] = c["23"] * x[3] + c["24"] * x[4]
        out[f"d3{F}"] = c["13"] * x[1] + c["23"] * x[2]
        out[f"d4{F}"] = c["14"] * x[1] + c["24"] * x[2]
    return out


def matrices_562(R, P, t13=(0, 0), t23=(0, 0)):
    """The two 5x5 skew matrices; t13, t23 give the (1,3) and (2,3) entries of (M1, M2)."""
    D = bilinear_cubics_562(R, P)
    x1, x2, x3, x4 = (R.var(f"x{i}") for i in (1, 2, 3, 4))
    y1, y2 = R.var("y1"), R.var("y2")
    M1 = SkewMatrix.from_upper(R, [
        [y2, R(t13[0]), D["d1F2"], D["d2F2"]],
        [R(t23[0]), D["d1F1"], D["d2F1"]],
        [x2, -x1],
        [P["H34"]],
    ])
    M2 = SkewMatrix.from_upper(R, [
        [y1, R(t13[1]), D["d3F2"], D["d4F2"]],
        [R(t23[1]), D["d3F1"], D["d4F1"]],
        [x4, -x3],
        [P["H12"]],
    ])
    return M1, M2


def parts_562a(R, P, t13=(0, 0), t23=(0, 0), q5=None) -> dict:
    """Named generators; shared Pfaffians F1, F2 are taken from M1.

    Q1 and Q3 are negated Pfaffians so that they start with x3*y1 and x1*y2.
    """
    M1, M2 = matrices_562(R, P, t13, t23)
    p1 = maximal_pfaffians(M1)
    p2 = maximal_pfaffians(M2)
    y1y2 = R.var("y1") * R.var("y2")
    return {
        "Q1": -p2[3], "Q2": p2[4], "Q3": -p1[3], "Q4": p1[4],
        "Q5": y1y2 if q5 is None else q5,
        "F1": p1[0], "F2": p1[1], "G12": p2[2], "G34": p1[2],
        "_M1": p1, "_M2": p2,
    }


def eq_562a(R, P):
    d = parts_562a(R, P)
    return [d[k] for k in ("Q1", "Q2", "Q3", "Q4", "Q5", "F1", "F2", "G12", "G34")]


def structure_562a(R, P, gens):
    d = parts_562a(R, P)
    bad = []
    for i in (0, 1):
        if d["_M1"][i] != d["_M2"][i]:
            bad.append(f"Pf_{i + 1} of M1 and M2 differ")
    x = {v: R.var(v) for v in R.graded}
    for name, f in (("Q1", x["x3"] * x["y1"]), ("Q2", x["x4"] * x["y1"]),
                    ("Q3", x["x1"] * x["y2"]), ("Q4", x["x2"] * x["y2"])):
        if d[name] != f:
            bad.append(f"{name} is not the product quadric")
    return bad


V562b = ("x0", "x1", "y0", "y1", "z0", "z1")
_Z = ("z0", "z1")
_X01 = ("x0", "x1")
_Y01 = ("y0", "y1")


def matching_quartic(P_xy: Polynomial, Q_xz: Polynomial, xs=_X01) -> Polynomial:
    """Quartic agreeing with P_xy modulo (xs) and with Q_xz modulo the y-side.

    Takes the terms of P_xy free of ``xs`` and the terms of Q_xz involving ``xs``.
    """
    _, p_free = split_by_support(P_xy, xs)
    q_with, _ = split_by_support(Q_xz, xs)
    return p_free + q_with


def draw_562b(R, rng):
    prov = {k: _form(R, rng, 2) for k in ("A0", "A1", "B0", "B1")}
    prov["l0"] = _form(R, rng, 1)
    prov["l1"] = _form(R, rng, 1)
    D0 = _form(R, rng, 3)
    D1 = _form(R, rng, 3)
    A0, A1, B0, B1, l0, l1 = (prov[k] for k in ("A0", "A1", "B0", "B1", "l0", "l1"))
    # make A0 B1 - B0 A1 and l0 D1 - l1 D0 agree on the line y = x = 0
    r = restrict_to(A0 * B1 - B0 * A1 - (l0 * D1 - l1 * D0), _Z)
    beta, alpha = solve_combination([restrict_to(l0, _Z), -restrict_to(l1, _Z)], [3, 3], r, _Z, rng)
    prov["D0"] = D0 + alpha
    prov["D1"] = D1 + beta
    prov["H"] = matching_quartic(A0 * B1 - B0 * A1, prov["l0"] * prov["D1"] - prov["l1"] * prov["D0"])
    return prov


def draw_562bi(R, rng):
    L = [_form(R, rng, 1) for _ in range(4)]
    A1 = _form(R, rng, 2)
    x1 = R.var("x1")
    prov = {"L0": L[0], "L1": L[1], "L2": L[2], "L3": L[3], "A1": A1}
    prov.update({
        "A0": L[3] * x1, "B0": L[0] * L[1], "B1": L[0] * L[2],
        "l0": L[0], "l1": x1,
        "D0": L[0] * L[2] * L[3], "D1": L[1] * A1,
        "H": L[0] * L[2] * L[3] * x1 - L[0] * L[1] * A1,
    })
    return prov


def parts_562b(R, P) -> dict:
    x0, x1, y0, y1 = (R.var(v) for v in ("x0", "x1", "y0", "y1"))
    A0, A1, B0, B1, l0, l1, D0, D1, H = _need(P, "A0", "A1", "B0", "B1", "l0", "l1", "D0", "D1", "H")
    return {
        "Q1": x0 * y0, "Q2": x0 * y1, "Q3": x1 * y0, "Q4": x1 * y1,
        "F1": A0 * y0 - A1 * y1, "F2": B0 * y0 - B1 * y1,
        "G1": l0 * x0 - l1 * x1, "G2": D0 * x0 - D1 * x1, "H": H,
    }


def eq_562b(R, P):
    return list(parts_562b(R, P).values())


def _matching_failures(R, P, sign: int):
    A0, A1, B0, B1, l0, l1, D0, D1, H = _need(P, "A0", "A1", "B0", "B1", "l0", "l1", "D0", "D1", "H")
    bad = []
    if not in_ideal_of_vars(H - (A0 * B1 - B0 * A1), _X01):
        bad.append("H does not agree with A0 B1 - B0 A1 modulo (x0, x1)")
    if not in_ideal_of_vars(H - sign * (l0 * D1 - l1 * D0), _Y01):
        bad.append("H does not agree with the determinantal quartic of G modulo (y0, y1)")
    return bad


def structure_562b(R, P, gens):
    return _matching_failures(R, P, 1)


def structure_562bi(R, P, gens):
    # the displayed specialisation matches the G-side quartic with the opposite sign
    return _matching_failures(R, P, -1)


# -- degree 16 -----------------------------------------------------------------

V400 = _xs("x", 6)


def draw_400a(R, rng):
    return {f"Q{i}": _form(R, rng, 2) for i in range(1, 5)}


def eq_400a(R, P):
    return _need(P, "Q1", "Q2", "Q3", "Q4")


V420 = _xs("x", 6)


def draw_420a(R, rng):
    return {k: _form(R, rng, 2) for k in ("q1", "q2", "q3", "Q")}


def matrix_420a(R, P, m14=None, m15=0) -> SkewMatrix:
    """First row (x0, x1, m14, m15); m14 defaults to x2 and m15 to 0."""
    x = [R.var(f"x{i}") for i in range(6)]
    q1, q2, q3 = _need(P, "q1", "q2", "q3")
    return SkewMatrix.from_upper(R, [
        [x[0], x[1], x[2] if m14 is None else R(m14), R(m15)],
        [q1, q2, x[3]],
        [q3, x[4]],
        [x[5]],
    ])


def eq_420a(R, P, m14=None, m15=0):
    return maximal_pfaffians(matrix_420a(R, P, m14, m15)) + [P["Q"]]


def eq_420ai(R, P, m14=0, m15=0):
    return eq_420a(R, P, m14=m14, m15=m15)


V430 = ("x0", "x1", "x2", "y1", "y2", "z")


def draw_430a(R, rng):
    prov = {k: _form(R, rng, 1) for k in ("A", "C")}
    prov.update({k: _form(R, rng, 2) for k in ("B", "D", "P", "Q")})
    return prov


def cramer_430a(R, P, N=((0, 0), (0, 0))) -> CramerFormat:
    A, B, C, D, Pq, Q = _need(P, "A", "B", "C", "D", "P", "Q")
    x0, x1, x2, y1, y2, z = (R.var(v) for v in V430)
    M = [[Q, Pq, A, C],
         [-x0, x1, R(N[0][0]), R(N[0][1])],
         [x1, -x2, R(N[1][0]), R(N[1][1])]]
    # the written equations (F = A(x0x2 - x1^2) - Bz, ...) follow from s = -z
    # under the sign rule s*v_i = (-1)^i det M_i used everywhere else
    return CramerFormat(M, [y2, y1, D, -B], -z)


def eq_430a(R, P, N=((0, 0), (0, 0))):
    return cramer_430a(R, P, N).equations()


V441a = ("x0", "x1", "x2", "x3", "x4", "y")
_P4 = ("x0", "x1", "x2", "x3", "x4")


def _draw_441a_common(R, rng):
    prov = {k: _form(R, rng, 2, _P4) for k in ("b", "c")}
    for i in range(3):
        prov[f"d{i}"] = _form(R, rng, 1, _P4)
    prov["d"] = sum((prov[f"d{i}"] * R.var(f"x{i}") for i in range(3)), R.zero())
    return prov


def draw_441a(R, rng):
    prov = _draw_441a_common(R, rng)
    prov["P"] = _form(R, rng, 3, ("x3", "x4", "y"))
    return prov


def draw_441ai(R, rng):
    prov = _draw_441a_common(R, rng)
    prov["A"] = _form(R, rng, 2, ("x3", "x4", "y"))
    prov["P"] = R.var("y") * prov["A"]
    return prov


def draw_441aii(R, rng):
    return _draw_441a_common(R, rng)


def rolling_factors_quartic(prov: dict, printed: bool = False) -> Polynomial:
    """Quartic obtained from F = d x3 - c x1 + b x0 by rolling x0 -> b, x1 -> c, x2 -> d, plus P y.

    ``printed=True`` returns the variant (d0 d + d1 b + d2 c) x3 - c^2 + b^2 + P y
    with the coefficient forms permuted, kept for comparison.
    """
    b, c, d, d0, d1, d2 = _need(prov, "b", "c", "d", "d0", "d1", "d2")
    R = b.ring
    if d != d0 * R.var("x0") + d1 * R.var("x1") + d2 * R.var("x2"):
        raise ValueError("d must equal d0 x0 + d1 x1 + d2 x2")
    Py = prov["P"] * R.var("y") if "P" in prov else R.zero()
    x3 = R.var("x3")
    roll = d0 * d + d1 * b + d2 * c if printed else d0 * b + d1 * c + d2 * d
    return roll * x3 - c * c + b * b + Py


def matrix_441a(R, P) -> SkewMatrix:
    x0, x1, x2, x3 = (R.var(f"x{i}") for i in range(4))
    return SkewMatrix.from_upper(R, [
        [P["b"], P["c"], P["d"], R.zero()],
        [x3, x1, x0],
        [x0, x1],
        [x2],
    ])


def eq_441a(R, P):
    y = R.var("y")
    Q = [R.var(f"x{i}") * y for i in range(3)]
    return Q + maximal_pfaffians(matrix_441a(R, P)) + [rolling_factors_quartic(P)]


def matrix_441aii(R, P) -> SkewMatrix:
    x0, x1, x2, x3 = (R.var(f"x{i}") for i in range(4))
    return SkewMatrix.from_upper(R, [
        [P["b"], P["c"], P["d"], R.zero()],
        [x3, R.zero(), x1],
        [x0, R.zero()],
        [x2],
    ])


def quartic_441aii(R, P) -> Polynomial:
    b, c, d0 = _need(P, "b", "c", "d0")
    y = R.var("y")
    return b * c + R.var("x3") * c * d0 + c * y * y


def eq_441aii(R, P):
    y = R.var("y")
    Q = [R.var(f"x{i}") * y for i in range(3)]
    return Q + maximal_pfaffians(matrix_441aii(R, P)) + [quartic_441aii(R, P)]


def structure_441a(R, P, gens):
    M = matrix_441aii(R, P) if "A" not in P and "P" not in P else matrix_441a(R, P)
    bad = []
    for i, f in enumerate(maximal_pfaffians(M)):
        if not in_ideal_of_vars(f, ("x0", "x1", "x2")):
            bad.append(f"Pf_{i + 1} is not in (x0, x1, x2)")
    return bad


V441b = ("x0", "x1", "y0", "y1", "z0", "z1")


def draw_441b(R, rng):
    """Two determinantal halves whose quartics agree on the line x = y = 0."""
    xz = ("x0", "x1", "z0", "z1")
    yz = ("y0", "y1", "z0", "z1")
    prov = {k: _form(R, rng, 2, xz) for k in ("A", "B", "C", "D")}
    prov.update({k: _form(R, rng, 2, yz) for k in ("P", "Q", "M", "N")})
    A, B, C, D, Pq, Q, M, N = (prov[k] for k in ("A", "B", "C", "D", "P", "Q", "M", "N"))
    r = restrict_to(A * D - B * C - (Pq * N - Q * M), _Z)
    n, m = solve_combination([restrict_to(Pq, _Z), -restrict_to(Q, _Z)], [2, 2], r, _Z, rng)
    prov["N"] = N + n
    prov["M"] = M + m
    prov["H"] = matching_quartic(prov["P"] * prov["N"] - prov["Q"] * prov["M"], A * D - B * C)
    return prov


def parts_441b(R, P) -> dict:
    x0, x1, y0, y1 = (R.var(v) for v in ("x0", "x1", "y0", "y1"))
    A, B, C, D, Pq, Q, M, N, H = _need(P, "A", "B", "C", "D", "P", "Q", "M", "N", "H")
    return {
        "Q1": x0 * y0, "Q2": x0 * y1, "Q3": x1 * y0, "Q4": x1 * y1,
        "F1": x0 * A - x1 * B, "F2": x0 * C - x1 * D,
        "G1": y0 * Pq - y1 * Q, "G2": y0 * M - y1 * N, "H": H,
    }


def eq_441b(R, P):
    return list(parts_441b(R, P).values())


def structure_441b(R, P, gens):
    A, B, C, D, Pq, Q, M, N, H = _need(P, "A", "B", "C", "D", "P", "Q", "M", "N", "H")
    bad = []
    if not in_ideal_of_vars(H - (A * D - B * C), _Y01):
        bad.append("H does not agree with AD - BC modulo (y0, y1)")
    if not in_ideal_of_vars(H - (Pq * N - Q * M), _X01):
        bad.append("H does not agree with PN - QM modulo (x0, x1)")
    return bad


def draw_441bi(R, rng):
    return {k: _form(R, rng, 2) for k in ("A", "B", "C", "D")}


def draw_441bii(R, rng):
    prov = {k: _form(R, rng, 1) for k in ("a", "b", "c", "d")}
    prov.update({k: _form(R, rng, 2) for k in ("B", "D")})
    x0, y0, y1 = R.var("x0"), R.var("y0"), R.var("y1")
    prov["A"] = x0 * prov["a"] + y0 * prov["d"]
    prov["C"] = x0 * prov["c"] + y1 * prov["b"]
    return prov


def matrix_441bi(R, P, corner=0):
    A, B, C, D = _need(P, "A", "B", "C", "D")
    return [[R(corner), R.var("x0"), R.var("x1")],
            [R.var("y0"), D, C],
            [R.var("y1"), B, A]]


def eq_441bi(R, P, corner=0):
    from .matrices import minors
    return minors(matrix_441bi(R, P, corner), 2)


# -- degree 17 -----------------------------------------------------------------

V300 = _xs("x", 6)


def draw_300a(R, rng):
    prov = {f"M{i}{j}": _form(R, rng, 1) for i in range(1, 4) for j in range(1, 5)}
    prov.update({f"v{j}": _form(R, rng, 1) for j in range(1, 5)})
    prov["s"] = _form(R, rng, 2)
    return prov


def eq_300a(R, P):
    M = [[P[f"M{i}{j}"] for j in range(1, 5)] for i in range(1, 4)]
    v = [P[f"v{j}"] for j in range(1, 5)]
    return CramerFormat(M, v, P["s"]).equations()


V310 = _xs("x", 8) + ("y",)


def draw_310a(R, rng):
    prov = {}
    for s in "abcd":
        for i in (0, 1):
            prov[f"{s}{i}"] = _form(R, rng, 1)
    prov["L"] = _form(R, rng, 1)
    prov["E"] = _form(R, rng, 2)
    return prov


def cubic_310(R, P, lower=None) -> Polynomial:
    """The extra cubic H built from the 2x2 determinants of the coefficient forms.

    Each determinant is paired with the lower-block entry in the complementary
    rows, so x4 (rows A, D) carries the (b, c) determinant and x5 the (a, d) one.
    ``lower`` replaces the lower-block entries (x2, ..., x7).
    """
    a0, a1, b0, b1, c0, c1, d0, d1 = _need(P, "a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1")
    x = lower or [R.var(f"x{i}") for i in range(2, 8)]
    return ((c0 * d1 - c1 * d0) * x[0] - (b0 * d1 - b1 * d0) * x[1] + (b0 * c1 - b1 * c0) * x[2]
            + (a0 * d1 - a1 * d0) * x[3] - (a0 * c1 - a1 * c0) * x[4] + (a0 * b1 - a1 * b0) * x[5])


def matrix_310a(R, P, X=None, lower=None) -> SkewMatrix:
    """First row a_0 X_0 + a_1 X_1, ...; X defaults to (x0, x1), ``lower`` to (x2, ..., x7)."""
    X0, X1 = X or (R.var("x0"), R.var("x1"))
    x = lower or [R.var(f"x{i}") for i in range(2, 8)]
    first = [P[f"{s}0"] * X0 + P[f"{s}1"] * X1 for s in "abcd"]
    return SkewMatrix.from_upper(R, [first, [x[0], x[1], x[2]], [x[3], x[4]], [x[5]]])


def parts_310a(R, P, X=None, lower=None, y=None) -> dict:
    """Generators of the [310]a format; X, lower and y relocate it inside a larger ring."""
    X0, X1 = X or (R.var("x0"), R.var("x1"))
    y = R.var("y") if y is None else y
    pf = maximal_pfaffians(matrix_310a(R, P, (X0, X1), lower))
    return {
        "Q0": X0 * y, "Q1": X1 * y, "Q2": pf[0] + y * P["L"],
        "Pf2": pf[1], "Pf3": pf[2], "Pf4": pf[3], "Pf5": pf[4],
        "H": cubic_310(R, P, lower) + y * P["E"],
    }


def eq_310a(R, P):
    return list(parts_310a(R, P).values())


V331 = _xs("x", 13) + ("y",)


def draw_331a(R, rng):
    return {"a0": _scalar(R, rng), "b1": _scalar(R, rng), "F": _form(R, rng, 3)}


def draw_331ai(R, rng):
    return {"a0": _scalar(R, rng), "b1": _scalar(R, rng), "F": R.zero()}


def matrix_331(R, P, m47=None) -> SkewMatrix:
    """The 7x7 matrix; ``m47`` replaces the x0 entry in row 4, column 7."""
    x = {i: R.var(f"x{i}") for i in range(13)}
    a0, b1 = _need(P, "a0", "b1")
    z = R.zero()
    return SkewMatrix.from_upper(R, [
        [x[3], x[4], x[6], x[9], a0 * x[0], z],
        [x[5], x[7], x[10], b1 * x[1], z],
        [x[8], x[11], z, z],
        [x[12], z, x[0] if m47 is None else R(m47)],
        [z, x[1]],
        [x[2]],
    ])


def parts_331a(R, P, m47=None, H=None) -> dict:
    M = matrix_331(R, P, m47)
    pf = maximal_pfaffians(M)
    y = R.var("y")
    out = {f"Pf{i + 1}": f for i, f in enumerate(pf)}
    for i in range(3):
        out[f"Q{i}"] = R.var(f"x{i}") * y
    if H is None:
        s = lambda *ix: sub_pfaffian(M, ix)
        q = P["a0"] * s(1, 2, 3, 4) * s(2, 3, 4, 5) - P["b1"] * s(1, 3, 4, 5) * s(1, 2, 3, 5)
        H = q + y * P["F"]
    out["H"] = H
    out["_M"] = M
    return out


def eq_331a(R, P):
    d = parts_331a(R, P)
    return [d[k] for k in ("Q0", "Q1", "Q2")] + [d[f"Pf{i}"] for i in range(1, 8)] + [d["H"]]


def eq_331aii(R, P):
    M = matrix_331(R, P, m47=0)
    s = lambda *ix: sub_pfaffian(M, ix)
    d = parts_331a(R, P, m47=0, H=s(1, 2, 3, 4) * s(2, 3, 4, 5))
    return [d[k] for k in ("Q0", "Q1", "Q2")] + [d[f"Pf{i}"] for i in range(1, 8)] + [d["H"]]


def structure_331(R, P, gens, m47=None):
    M = matrix_331(R, P, m47)
    return [f"Pf_{i + 1} is not in (x0, x1, x2)" for i, f in enumerate(maximal_pfaffians(M))
            if not in_ideal_of_vars(f, ("x0", "x1", "x2"))]


def parts_310ai(R, P, t=1) -> dict:
    """Generators of the general fibre of the [331]aii smoothing, at parameter t."""
    M = matrix_331(R, P, m47=0)
    pf = maximal_pfaffians(M)
    s1234 = sub_pfaffian(M, (1, 2, 3, 4))
    y = R.var("y")
    out = {"Q0": R.var("x0") * y + R(t) * s1234, "Q1": R.var("x1") * y, "Q2": R.var("x2") * y}
    for i in range(4):
        out[f"Pf{i + 1}"] = pf[i]
    out["Pf7"] = pf[6]
    return out


def eq_310ai(R, P):
    return list(parts_310ai(R, P).values())


def structure_331aii(R, P, gens):
    return structure_331(R, P, gens, m47=0)


# -- degree 18 -----------------------------------------------------------------

V210 = _xs("x", 6) + ("y0", "y1", "z0", "z1", "z2", "w")


def draw_210a(R, rng):
    return {"a": _scalar(R, rng), "b": _scalar(R, rng), "G": _form(R, rng, 2)}


def draw_210ai(R, rng):
    return {"a": _scalar(R, rng), "b": _scalar(R, rng), "G": R.zero()}


def matrix_210(R, P) -> SkewMatrix:
    g = {v: R.var(v) for v in V210}
    a, b = _need(P, "a", "b")
    z = R.zero()
    return SkewMatrix.from_upper(R, [
        [g["x0"], g["x1"], g["x2"], g["y0"], g["y1"], z],
        [g["x3"], g["x4"], g["y1"], a * g["y0"], z],
        [g["x5"], z, b * g["y1"], g["y0"]],
        [z, g["y0"], g["y1"]],
        [g["z0"], g["z1"]],
        [g["z2"]],
    ])


def cubic_210(R, P) -> Polynomial:
    """The residual cubic F0 of the seven Pfaffians, as displayed."""
    a, b = _need(P, "a", "b")
    x = {i: R.var(f"x{i}") for i in range(6)}
    y0, y1, z0, z1, z2 = (R.var(v) for v in ("y0", "y1", "z0", "z1", "z2"))
    return (a * b * (y0 * y1 * z1 - x[2] * z1 ** 2)
            + a * (y0 ** 2 * z0 - x[1] * z0 * z1 + x[5] * z1 ** 2)
            + b * (y1 ** 2 * z2 + x[0] * z1 ** 2 - x[4] * z1 * z2)
            - x[0] * z0 ** 2 + x[4] * z0 * z1 + x[3] * z1 ** 2 + x[2] * z0 * z2
            - x[3] * z0 * z2 + x[1] * z1 * z2 - x[5] * z2 ** 2
            - y0 ** 2 * z2 - y0 * y1 * z1 - y1 ** 2 * z0)


def parts_210a(R, P) -> dict:
    pf = maximal_pfaffians(matrix_210(R, P))
    x = {i: R.var(f"x{i}") for i in range(6)}
    w = R.var("w")
    Q2 = x[0] * x[5] - x[1] * x[4] + x[2] * x[3]
    out = {"Q0": R.var("y0") * w, "Q1": R.var("y1") * w}
    out.update({f"Pf{i + 1}": f for i, f in enumerate(pf)})
    out["F1"] = cubic_210(R, P) + w * P["G"]
    out["F2"] = w * Q2
    out["_Q2"] = Q2
    return out


def eq_210a(R, P):
    return [v for k, v in parts_210a(R, P).items() if not k.startswith("_")]


def structure_210(R, P, gens):
    pf = maximal_pfaffians(matrix_210(R, P))
    # deleting one of the first four rows leaves three x-rows, so every term uses a y entry
    return [f"Pf_{i + 1} is not in (y0, y1)" for i in range(4)
            if not in_ideal_of_vars(pf[i], ("y0", "y1"))]


V200 = _xs("x", 6)


def random_element(I: Ideal, degree: int, rng: SplitMix64) -> Polynomial:
    """Uniform random element of I_d, as a combination of generator multiples."""
    R = I.ring
    out = R.zero()
    for g in I.generators:
        e = degree - g.degree()
        if e >= 0:
            out = out + g * _form(R, rng, e)
    return out


def link(ci: Ideal, I: Ideal) -> Ideal:
    """Linked ideal (ci : I)."""
    return colon(ci, I)


def is_complete_intersection(gens, codim: int | None = None) -> bool:
    from ..groebner import codimension
    R = gens[0].ring
    return codimension(Ideal(R, gens)) == (len(gens) if codim is None else codim)


def draw_200(R, rng):
    """Elliptic normal sextic and the choices for an ascending biliaison to degree 18.

    E is cut out by the 2x2 minors of a 3x3 matrix of linear forms.  S is a
    (2,2,3) complete intersection surface containing E; linking E by S + (g)
    with g a quadric in I_E and the residual by S + (f) with f a cubic gives a
    curve linearly equivalent to E + H on S.
    """
    prov = {f"e{i}{j}": _form(R, rng, 1) for i in range(3) for j in range(3)}
    IE = elliptic_sextic(R, prov)
    S = [random_element(IE, 2, rng), random_element(IE, 2, rng), random_element(IE, 3, rng)]
    prov.update({"S1": S[0], "S2": S[1], "S3": S[2]})
    prov["g"] = random_element(IE, 2, rng)
    R1 = link(Ideal(R, S + [prov["g"]]), IE)
    prov["f"] = random_element(R1, 3, rng)
    return prov


def elliptic_sextic(R, P) -> Ideal:
    from .matrices import minors
    E = [[P[f"e{i}{j}"] for j in range(3)] for i in range(3)]
    return Ideal(R, minors(E, 2))


def eq_200(R, P):
    IE = elliptic_sextic(R, P)
    S = [P["S1"], P["S2"], P["S3"]]
    R1 = link(Ideal(R, S + [P["g"]]), IE)
    C = link(Ideal(R, S + [P["f"]]), R1)
    return minimal_generators(C)


# -- registry --------------------------------------------------------------------

def _fam(name, betti, variables, summary, draw, equations, structure=None):
    return FamilyDef(name, betti, tuple(variables), summary, draw, equations, structure)


REGISTRY: dict[str, FamilyDef] = {f.name: f for f in (
    _fam("[550]a", "CGKK 2", V550, "five Pfaffians of a general linear 5x5 skew matrix and a general cubic",
         draw_550a, eq_550a),
    _fam("[551]a", "SSY 7", V551, "Cramer format with a zero first column and s = y",
         draw_551a, eq_551a),
    _fam("[562]a", "SSY 8", V562a, "two 5x5 skew matrices sharing two Pfaffians, plus y1*y2",
         draw_562a, eq_562a, structure_562a),
    _fam("[562]ai", "SSY 8", V562a, "[562]a with H12 = H34",
         draw_562ai, eq_562a, structure_562a),
    _fam("[562]aii", "SSY 8", V562a, "[562]a with H34 = 0",
         draw_562aii, eq_562a, structure_562a),
    _fam("[562]b", "SSY 8", V562b, "four reducible quadrics, two cubic pairs and a matching quartic",
         draw_562b, eq_562b, structure_562b),
    _fam("[562]bi", "SSY 8", V562b, "[562]b with cubics splitting into linear and quadric factors",
         draw_562bi, eq_562b, structure_562bi),
    _fam("[400]a", "CGKK 3", V400, "complete intersection of four general quadrics",
         draw_400a, eq_400a),
    _fam("[420]a", "SSY 4", V420, "Pfaffians of a 5x5 skew matrix with quadric column, plus a quadric",
         draw_420a, eq_420a),
    _fam("[420]ai", "SSY 4", V420, "[420]a with the x2 entry of the first row set to zero",
         draw_420a, eq_420ai),
    _fam("[430]a", "SSY 3", V430, "Cramer format with s = z",
         draw_430a, eq_430a),
    _fam("[441a]a", "SSY 6", V441a, "Jerry format: three quadrics, five cubic Pfaffians and a rolling-factors quartic",
         draw_441a, eq_441a, structure_441a),
    _fam("[441a]ai", "SSY 6", V441a, "[441a]a with P = y*A",
         draw_441ai, eq_441a, structure_441a),
    _fam("[441a]aii", "SSY 6", V441a, "degenerate Jerry matrix with P = 0",
         draw_441aii, eq_441aii),
    _fam("[441b]a", "SSY 6", V441b, "four reducible quadrics, four cubics and a matching quartic",
         draw_441b, eq_441b, structure_441b),
    _fam("[441b]ai", "SSY 6", V441b, "[441b]a with the (y, z) blocks taken from the 2x2 minors of a 3x3 matrix",
         draw_441bi, eq_441bi),
    _fam("[441b]aii", "SSY 6", V441b, "[441b]ai with split quadrics A = x0 a + y0 d, C = x0 c + y1 b",
         draw_441bii, eq_441bi),
    _fam("[300a]a", "CGKK 4", V300, "general Cramer format with linear M, v and quadric s",
         draw_300a, eq_300a),
    _fam("[310]a", "SSY 2", V310, "fourfold in P^8 cut to P^5: Pfaffians, three quadrics and the determinant cubic",
         draw_310a, eq_310a),
    _fam("[310]ai", "SSY 2", V331, "general fibre of the [331]aii smoothing, in P^13 cut to P^5",
         draw_331ai, eq_310ai),
    _fam("[331]a", "SSY 5", V331, "ninefold in P^13 cut to P^5: 7x7 Pfaffians, three quadrics and a quartic",
         draw_331a, eq_331a, structure_331),
    _fam("[331]ai", "SSY 5", V331, "[331]a with F = 0",
         draw_331ai, eq_331a, structure_331),
    _fam("[331]aii", "SSY 5", V331, "[331]ai with the x0 entry of row 4 removed",
         draw_331ai, eq_331aii, structure_331aii),
    _fam("[200]", "CGKK 7/8", V200, "ascending biliaison of the elliptic normal sextic on a (2,2,3) surface",
         draw_200, eq_200),
    _fam("[210]a", "SSY 1", V210, "P^11 format: 7x7 Pfaffians, two quadrics and two cubics, cut to P^5",
         draw_210a, eq_210a, structure_210),
    _fam("[210]ai", "SSY 1", V210, "[210]a with G = 0",
         draw_210ai, eq_210a, structure_210),
)}


def family_names() -> list[str]:
    return list(REGISTRY)


def get_family(name: str) -> FamilyDef:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(REGISTRY)}") from None


# -- sections and validation -----------------------------------------------------

class NonGeneralSection(ValueError):
    """A linear section that lost dimension or changed the Betti table."""


def section_map(R: PolyRing, target: PolyRing, rng: SplitMix64) -> dict:
    """Random linear forms of ``target`` for every graded variable of ``R``."""
    return {v: random_form(target, 1, rng) for v in R.graded}


def _section_vars(k: int) -> tuple:
    return CURVE_VARS if k == len(CURVE_VARS) else _xs("u", k)


def cut(I: Ideal, target_var_count: int, rng: SplitMix64, check: bool = True):
    """Section of I by substituting general linear forms; returns (ideal, map or None)."""
    R = I.ring
    n = len(R.graded)
    if target_var_count > n:
        raise ValueError(f"cannot cut {n} variables up to {target_var_count}")
    if target_var_count == n:
        return I, None
    for g in I.generators:
        if not g.is_homogeneous():
            raise ValueError("linear sections need a homogeneous ideal")
    S = PolyRing(_section_vars(target_var_count), R.p)
    sub = section_map(R, S, rng)
    J = Ideal(S, [g.substitute(sub, S) for g in I.generators])
    if check:
        before, after = hilbert_data(I).dimension, hilbert_data(J).dimension
        if before - after != n - target_var_count:
            raise NonGeneralSection(f"dimension went from {before} to {after}")
        if betti_table(I) != betti_table(J):
            raise NonGeneralSection("Betti table changed under the section")
    return J, sub


def linear_section(X: FamilyInstance, target_var_count: int, rng: SplitMix64 | None = None,
                   check: bool = True) -> Ideal:
    """Cut the ambient ideal of ``X`` down to ``target_var_count`` variables."""
    if rng is None:
        rng = SplitMix64(seed_for(X.seed, "section"))
    J, _ = cut(X.ambient_ideal, target_var_count, rng, check)
    return J


def expected_invariants(fam: FamilyDef, nvars: int) -> dict:
    pdim = nvars - 5
    return {
        "betti_name": fam.betti,
        "dimension": pdim,
        "degree": fam.degree,
        "genus": fam.genus if pdim == 1 else None,
        "codimension": 4,
    }


def check_instance(I: Ideal, expected: dict) -> tuple[list[str], BettiTable]:
    """Failures of I against the expected invariants, and its Betti table."""
    bad = []
    h = hilbert_data(I)
    if h.dimension - 1 != expected["dimension"]:
        bad.append(f"dimension {h.dimension - 1}, expected {expected['dimension']}")
    if h.degree != expected["degree"]:
        bad.append(f"degree {h.degree}, expected {expected['degree']}")
    if expected["genus"] is not None and h.genus != expected["genus"]:
        bad.append(f"genus {h.genus}, expected {expected['genus']}")
    B = betti_table(I)
    if B != named_table(expected["betti_name"]):
        bad.append(f"Betti table is not {expected['betti_name']}")
    return bad, B


def build_family(name: str, seed: int = 0, ambient_override: int | None = None,
                 char: int = DEFAULT_CHAR, check: bool = True) -> FamilyInstance:
    """Random member of a named family, validated against its invariants.

    Families defined in a larger projective space are cut to P^5 (or to
    ``ambient_override`` variables).  On a genericity failure the build is
    retried with derived seeds, at most RETRY_BUDGET times in total.
    """
    fam = get_family(name)
    A = fam.ambient_ring(char)
    n = len(A.graded)
    k = len(CURVE_VARS) if ambient_override is None else int(ambient_override)
    if not len(CURVE_VARS) <= k <= n:
        raise ValueError(f"{name}: ambient override must lie between {len(CURVE_VARS)} and {n}")
    expected = expected_invariants(fam, k)
    seeds, reasons = [], []
    for attempt in range(RETRY_BUDGET):
        s = derived_seed(seed, attempt)
        seeds.append(s)
        prov = fam.draw(A, SplitMix64(s))
        gens = [g for g in fam.equations(A, prov) if not g.is_zero()]
        amb = Ideal(A, gens)
        problems = fam.structure(A, prov, gens) if fam.structure else []
        if problems:
            reasons.append("; ".join(problems))
            continue
        try:
            I, sub = cut(amb, k, SplitMix64(seed_for(s, "section")), check)
        except NonGeneralSection as e:
            reasons.append(f"section: {e}")
            continue
        B = None
        if check:
            bad, B = check_instance(I, expected)
            if bad:
                reasons.append("; ".join(bad))
                continue
        return FamilyInstance(name, I.ring, I, seed, expected, prov, A, amb, sub,
                              attempts=seeds, betti=B)
    raise GenericityError(name, seeds, reasons)
