"""Flat families between curve families, and their verification.

A deformation is given symbolically: the source family's provenance is lifted
to the ambient ring extended by degree-0 parameters, and the builder returns the
deformed generators as polynomials in those parameters.  Fibres are obtained by
substituting field values and pushing through the instance's linear section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .constructions import families as F
from .constructions.matrices import CramerFormat, SkewMatrix, maximal_pfaffians, minors, sub_pfaffian
from .constructions.tables import named_table
from .groebner import Ideal, codimension, colon, ideal_equal, minimal_generators
from .homology import BettiTable, HilbertData, betti_table, hilbert_data
from .polyring import Polynomial, PolyRing, SplitMix64, random_form

DEFAULT_SAMPLES = 3


# -- data types ----------------------------------------------------------------

@dataclass
class Identity:
    """lhs = rhs, to hold exactly in the parameter ring.

    ``displayed`` marks relations transcribed as written in the construction;
    the others are corrected or auxiliary relations added alongside them.
    """

    label: str
    lhs: Polynomial
    rhs: Polynomial
    displayed: bool = True

    def residual(self) -> Polynomial:
        return self.lhs - self.rhs


@dataclass
class IdentityResult:
    label: str
    holds: bool
    residual: str | None = None
    displayed: bool = True

    def to_json(self) -> dict:
        return {"label": self.label, "displayed": self.displayed, "holds": self.holds,
                "residual": self.residual}


@dataclass
class IdentityReport:
    spec: str
    results: list = field(default_factory=list)
    central_fiber: bool | None = None
    target_format: bool | None = None

    @property
    def passed(self) -> bool:
        return (all(r.holds for r in self.results) and self.central_fiber is not False
                and self.target_format is not False)

    def to_json(self) -> dict:
        return {"spec": self.spec, "passed": self.passed, "central_fiber": self.central_fiber,
                "target_format": self.target_format,
                "identities": [r.to_json() for r in self.results]}


@dataclass
class FiberRecord:
    point: tuple
    hilbert: HilbertData
    betti: BettiTable
    expected_table: str | None
    label: str = ""

    @property
    def table_ok(self) -> bool:
        return self.expected_table is None or self.betti == named_table(self.expected_table)

    def to_json(self) -> dict:
        return {"point": list(self.point), "label": self.label,
                "hilbert_polynomial": self.hilbert.hp_string(),
                "degree": self.hilbert.degree, "dimension": self.hilbert.dimension - 1,
                "betti": self.betti.to_json(), "expected_table": self.expected_table,
                "table_ok": self.table_ok}


@dataclass
class FlatnessReport:
    spec: str
    fibers: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def hilbert_constant(self) -> bool:
        hps = {tuple(f.hilbert.hilbert_polynomial) for f in self.fibers}
        return len(hps) == 1

    @property
    def verdict(self) -> bool:
        return bool(self.fibers) and self.hilbert_constant and all(f.table_ok for f in self.fibers)

    def to_json(self) -> dict:
        return {"spec": self.spec, "verdict": "pass" if self.verdict else "fail",
                "hilbert_constant": self.hilbert_constant, "notes": self.notes,
                "fibers": [f.to_json() for f in self.fibers]}


@dataclass
class DeformationSpec:
    name: str
    source: str
    target: str
    kind: str                         # "smoothing" or "specialisation"
    summary: str
    # (S, P, params) -> {label: generator}; params are the aux variables of S
    build: Callable | None = None
    # (A, P, point) -> generators, for families only available fibrewise
    numeric: Callable | None = None
    identities: Callable | None = None    # (S, P, params, gens) -> [Identity]
    target_format: Callable | None = None  # (A, P, point) -> generators valid for general points
    extra: Callable | None = None         # (A, P, rng) -> further random forms
    params: tuple = ("t",)
    # rank of the parameter block -> family, for the multi-parameter family
    strata: dict | None = None
    variant_of: str | None = None

    @property
    def parameter_space(self) -> str:
        return f"A^{len(self.params)}"

    def edges(self) -> list[tuple[str, str]]:
        if self.strata:
            return [(self.source, t) for r, t in sorted(self.strata.items()) if t != self.source]
        return [(self.source, self.target)]


# -- lifting an instance ---------------------------------------------------------

_CACHE: dict = {}


def _context(spec: DeformationSpec, X: F.FamilyInstance):
    """(A, S, P_A, P_S, generators in S or None), cached per spec and instance."""
    key = (spec.name, id(X))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is X:
        return hit[1]
    if X.name != spec.source:
        raise ValueError(f"{spec.name} deforms {spec.source}, not {X.name}")
    A = X.ambient_ring
    P = dict(X.provenance)
    if spec.extra is not None:
        P.update(spec.extra(A, P, SplitMix64(F.seed_for(X.seed, spec.name))))
    S = A.extend(aux=spec.params)
    PS = {k: S.imbed(v) for k, v in P.items()}
    gens = None
    if spec.build is not None:
        ts = tuple(S.var(t) for t in spec.params)
        gens = spec.build(S, PS, ts if len(ts) > 1 else ts[0])
    out = (A, S, P, PS, gens)
    _CACHE.clear()
    _CACHE[key] = (X, out)
    return out


def _point(spec: DeformationSpec, point) -> tuple:
    pt = tuple(point) if isinstance(point, (tuple, list)) else (point,)
    if len(pt) != len(spec.params):
        raise ValueError(f"{spec.name} takes {len(spec.params)} parameters")
    return pt


def ambient_fiber(spec: DeformationSpec, X: F.FamilyInstance, point) -> list[Polynomial]:
    """Generators of the fibre over ``point`` in the ambient ring of X."""
    A, S, P, PS, gens = _context(spec, X)
    pt = _point(spec, point)
    if gens is None:
        return [g for g in spec.numeric(A, P, pt if len(pt) > 1 else pt[0]) if not g.is_zero()]
    sub = dict(zip(spec.params, pt))
    out = []
    for g in gens.values():
        h = g.substitute(sub, A)
        if not h.is_zero():
            out.append(h)
    return out


def fiber(spec: DeformationSpec, X: F.FamilyInstance, point) -> Ideal:
    """Fibre over ``point``, in the ring of the instance (after its linear section)."""
    gens = ambient_fiber(spec, X, point)
    if X.section is not None:
        gens = [g.substitute(X.section, X.ring) for g in gens]
    return Ideal(X.ring, gens)


def deformed_generators(spec: DeformationSpec, X: F.FamilyInstance) -> dict:
    gens = _context(spec, X)[4]
    if gens is None:
        raise ValueError(f"{spec.name} has no symbolic total family")
    return gens


# -- small helpers ---------------------------------------------------------------

def _v(R: PolyRing, *names: str):
    return [R.var(n) for n in names]


def _inv(R: PolyRing, a: int) -> int:
    return pow(a % R.p, -1, R.p)


def _ids(*triples, displayed=True) -> list[Identity]:
    return [Identity(lbl, l, r, displayed) for lbl, l, r in triples]


def _lin(A, rng, allowed=None):
    return random_form(A, 1, rng, allowed)


# -- degree 15 -------------------------------------------------------------------

def _b_551a_550a(S, P, t):
    return dict(enumerate(F.eq_551a(S, P, corner=t)))


def _b_562ai_550a(S, P, t, entry="13"):
    if entry == "13":
        q5 = S.var("y1") * S.var("y2") - t * t * (P["a14"] * P["a23"] - P["a13"] * P["a24"])
        d = F.parts_562a(S, P, t13=(t, t), q5=q5)
    else:
        q5 = S.var("y1") * S.var("y2") - t * t * (P["b14"] * P["b23"] - P["b13"] * P["b24"])
        d = F.parts_562a(S, P, t23=(t, t), q5=q5)
    return {k: v for k, v in d.items() if not k.startswith("_")}


def _i_562ai_550a(S, P, t, g):
    D = F.bilinear_cubics_562(S, P)
    x1, x2, y1, y2 = _v(S, "x1", "x2", "y1", "y2")
    return _ids(
        ("t*F1 = x2*Q3' - x1*Q4'", t * g["F1"], x2 * g["Q3"] - x1 * g["Q4"]),
        ("t*G12 = y1*F2' - d3F2*Q1' - d4F2*Q2'", t * g["G12"],
         y1 * g["F2"] - D["d3F2"] * g["Q1"] - D["d4F2"] * g["Q2"]),
        ("t*G34 = y2*F2' - d1F2*Q3' - d2F2*Q4'", t * g["G34"],
         y2 * g["F2"] - D["d1F2"] * g["Q3"] - D["d2F2"] * g["Q4"]),
        ("F2' = F2 + t*H", g["F2"], D["F2"] + t * P["H34"]),
    )


def _f_562ai_550a(A, P, t):
    x1, x2, x3, x4, y1, y2 = _v(A, "x1", "x2", "x3", "x4", "y1", "y2")
    D = F.bilinear_cubics_562(A, P)
    M = SkewMatrix.from_upper(A, [
        [y1, x2, P["a14"] * t, P["a13"] * t],
        [-x1, P["a24"] * t, P["a23"] * t],
        [-x3, x4],
        [y2],
    ])
    return maximal_pfaffians(M) + [D["F2"] + P["H34"] * t]


def _b_562ai_550a_23(S, P, t):
    return _b_562ai_550a(S, P, t, entry="23")


def _b_562aii_551a(S, P, t):
    d = F.parts_562a(S, P, t13=(t, 0))
    return {k: v for k, v in d.items() if not k.startswith("_")}


def _i_562aii_551a(S, P, t, g):
    D = F.bilinear_cubics_562(S, P)
    x1, x2, y2 = _v(S, "x1", "x2", "y2")
    return _ids(
        ("t*F1 = x2*Q3' - x1*Q4'", t * g["F1"], x2 * g["Q3"] - x1 * g["Q4"]),
        ("t*G34 = y2*F2 - d1F2*Q3' - d2F2*Q4'", t * g["G34"],
         y2 * g["F2"] - D["d1F2"] * g["Q3"] - D["d2F2"] * g["Q4"]),
    )


def _f_562aii_551a(A, P, t):
    x1, x2, x3, x4, y1, y2 = _v(A, "x1", "x2", "x3", "x4", "y1", "y2")
    D = F.bilinear_cubics_562(A, P)
    z = A.zero()
    M = [[z, P["a23"], P["a24"], x1],
         [z, P["a13"], P["a14"], -x2],
         [z, D["d3F2"], D["d4F2"], z]]
    return CramerFormat(M, [P["H12"], x3 * t, x4 * t, y2], y1).equations()


def _b_562bi_550a(S, P, t):
    x0, x1, y0, y1 = _v(S, "x0", "x1", "y0", "y1")
    L0, L1, L2 = P["L0"], P["L1"], P["L2"]
    d = F.parts_562b(S, P)
    d["Q1"] = x0 * y0 - t * L2 * x1
    d["Q2"] = x0 * y1 - t * L1 * x1
    d["Q3"] = x1 * y0 - t * L2 * L0
    d["Q4"] = x1 * y1 - t * L1 * L0
    return d


def _i_562bi_550a(S, P, t, g):
    x0, x1, y0, y1 = _v(S, "x0", "x1", "y0", "y1")
    A1, L2, L3 = P["A1"], P["L2"], P["L3"]
    return _ids(
        ("t*F2 = y1*Q3' - y0*Q4'", t * g["F2"], y1 * g["Q3"] - y0 * g["Q4"]),
        ("t*G2 = A1*Q2' + x0*F1 - L3*x1*Q1' + t*L2*L3*G1", t * g["G2"],
         A1 * g["Q2"] + x0 * g["F1"] - L3 * x1 * g["Q1"] + t * L2 * L3 * g["G1"]),
        ("t*H = A1*Q4' - L3*x1*Q3' + x1*F1", t * g["H"],
         A1 * g["Q4"] - L3 * x1 * g["Q3"] + x1 * g["F1"]),
    )


def _f_562bi_550a(A, P, t):
    x0, x1, y0, y1 = _v(A, "x0", "x1", "y0", "y1")
    L0, L1, L2 = P["L0"], P["L1"], P["L2"]
    z = A.zero()
    M = SkewMatrix.from_upper(A, [
        [x0, x1, L2, z],
        [z, L1 * t, x1 * t],
        [y1, L0 * t],
        [y0],
    ])
    return maximal_pfaffians(M) + [F.parts_562b(A, P)["F1"]]


# -- degree 16 -------------------------------------------------------------------

def _b_420a_400a(S, P, t):
    pf = maximal_pfaffians(F.matrix_420a(S, P, m15=t))
    d = {f"Pf{i + 1}": f for i, f in enumerate(pf)}
    d["Q"] = P["Q"]
    return d


def _i_420a_400a(S, P, t, g):
    x = _v(S, *F.V420)
    p1, p2, p3, p4, p5 = (g[f"Pf{i}"] for i in range(1, 6))
    shown = _ids(
        ("t*Pf1 = x0*Pf3' - x1*Pf2' + x2*Pf4'", t * p1, x[0] * p3 - x[1] * p2 + x[2] * p4),
        ("t*Pf5 = x3*Pf3' - x4*Pf2' + x5*Pf4'", t * p5, x[3] * p3 - x[4] * p2 + x[5] * p4),
    )
    # the same syzygies with the labels matched to the computed Pfaffians
    fixed = _ids(
        ("t*Pf5 = x0*Pf2' - x1*Pf3' + x2*Pf4'", t * p5, x[0] * p2 - x[1] * p3 + x[2] * p4),
        ("t*Pf1 = x3*Pf2' - x4*Pf3' + x5*Pf4'", t * p1, x[3] * p2 - x[4] * p3 + x[5] * p4),
        displayed=False,
    )
    return shown + fixed


def _f_420a_400a(A, P, t):
    pf = maximal_pfaffians(F.matrix_420a(A, P, m15=t))
    return pf[1:4] + [P["Q"]]


def _b_430a(S, P, ts):
    t1, t2, t3, t4 = ts
    eqs = F.eq_430a(S, P, N=((t1, t2), (t3, t4)))
    names = ("Mv1", "Mv2", "Mv3", "sv1", "sv2", "sv3", "sv4")
    return dict(zip(names, eqs))


def _rank1_430a(R, P, t1):
    A, B, C, D = (P[k] for k in "ABCD")
    x0, x1, x2, y1, y2, z = _v(R, *F.V430)
    k = x0 * x2 - x1 * x1
    return {
        "t1Q1": z * y1 - t1 * C * x1, "t1Q2": z * y2 - t1 * C * x2,
        "Q3": x0 * y2 - x1 * y1 - t1 * D, "Q4": x1 * y2 - x2 * y1,
        "F1": A * k - B * z + t1 * (P["Q"] * x2 + P["P"] * x1),
        "F2": C * k - D * z, "F3": A * D - B * C + P["P"] * y1 + P["Q"] * y2,
    }


def _i_430a(S, P, ts, g):
    t1 = ts[0]
    x0, x1, z = _v(S, "x0", "x1", "z")
    r = _rank1_430a(S, P, t1)
    shown = _ids(
        ("t1*F2 = z*Q3 + x1*(t1*Q1) - x0*(t1*Q2)  [rank 1]", t1 * r["F2"],
         z * r["Q3"] + x1 * r["t1Q1"] - x0 * r["t1Q2"]),
    )
    # the written rank-1 equations are the fibre generators over diag(t1, 0)
    on = {"t2": 0, "t3": 0, "t4": 0}
    match = (("Mv1", "F3", 1), ("Mv2", "Q3", -1), ("Mv3", "Q4", 1), ("sv1", "t1Q2", -1),
             ("sv2", "t1Q1", -1), ("sv3", "F2", 1), ("sv4", "F1", -1))
    gens = _ids(*((f"{k} = {'-' if e < 0 else ''}{name}  [rank 1]", g[k].substitute(on, S),
                   r[name] * e) for k, name, e in match), displayed=False)
    return shown + gens


def _f_430a(A, P, pt):
    t1, t2, t3, t4 = (int(c) % A.p for c in pt)
    A_, B, C, Pq, Q = (P[k] for k in ("A", "B", "C", "P", "Q"))
    x0, x1, x2, y1, y2, z = _v(A, *F.V430)
    if t1 and not (t2 or t3 or t4):
        M = SkewMatrix.from_upper(A, [
            [z, C * t1, -(Q * t1) - x0 * A_, Pq * t1 - x1 * A_],
            [A.zero(), x1, x2],
            [y1, y2],
            [-B],
        ])
        return maximal_pfaffians(M) + [_rank1_430a(A, P, t1)["Q3"]]
    if t1 and t4 and not (t2 or t3):
        t2 = t4
        return [
            z * y1 + Q * (t1 * t2) + A_ * x0 * t2 - C * x1 * t1,
            z * y2 - Pq * (t1 * t2) + A_ * x1 * t2 - C * x2 * t1,
            x0 * y2 - x1 * y1 - P["D"] * t1,
            x1 * y2 - x2 * y1 - B * t2,
        ]
    return None


def _b_441aai_400a(S, P, t):
    x0, x1, x2, x3, y = _v(S, "x0", "x1", "x2", "x3", "y")
    b, c, d, A = P["b"], P["c"], P["d"], P["A"]
    pf = maximal_pfaffians(F.matrix_441a(S, P))
    return {
        "Q0": x0 * y - b * t, "Q1": x1 * y - c * t, "Q2": x2 * y - d * t,
        "Q3": pf[0] + t * t * A,
        "Pf2": pf[1], "Pf3": pf[2], "Pf4": pf[3],
        "F": b * x0 - x1 * c + x3 * d + t * y * A,
        "q": F.rolling_factors_quartic(P),
    }


def _i_441aai_400a(S, P, t, g):
    x0, x1, x2, x3, y = _v(S, "x0", "x1", "x2", "x3", "y")
    b, c, d, d0, d1, d2 = (P[k] for k in ("b", "c", "d", "d0", "d1", "d2"))
    return _ids(
        ("t*(x2*b - x0*d) = x0*Q2' - x2*Q0'", t * (x2 * b - x0 * d), x0 * g["Q2"] - x2 * g["Q0"]),
        ("t*(x2*c - x1*d) = x1*Q2' - x2*Q1'", t * (x2 * c - x1 * d), x1 * g["Q2"] - x2 * g["Q1"]),
        ("t*(x0*c - x1*b) = x1*Q0' - x0*Q1'", t * (x0 * c - x1 * b), x1 * g["Q0"] - x0 * g["Q1"]),
        ("t*F' = x1*Q1' - x0*Q0' - x3*Q2' + y*Q3'", t * g["F"],
         x1 * g["Q1"] - x0 * g["Q0"] - x3 * g["Q2"] + y * g["Q3"]),
        ("t*q = (c - x3*d1)*Q1' - (b + x3*d0)*Q0' - x3*d2*Q2' + y*F'", t * g["q"],
         (c - x3 * d1) * g["Q1"] - (b + x3 * d0) * g["Q0"] - x3 * d2 * g["Q2"] + y * g["F"]),
    )


def _f_441aai_400a(A, P, t):
    x0, x1, x2, x3, y = _v(A, "x0", "x1", "x2", "x3", "y")
    b, c, d = P["b"], P["c"], P["d"]
    return [x0 * y - b * t, x1 * y - c * t, x2 * y - d * t,
            x0 * x0 - x1 * x1 + x2 * x3 + P["A"] * (t * t)]


def _b_441aaii_420ai(S, P, t):
    x0, x1, x2, x3, y = _v(S, "x0", "x1", "x2", "x3", "y")
    b, c, d = P["b"], P["c"], P["d"]
    pf = maximal_pfaffians(F.matrix_441aii(S, P))
    return {
        "Q0": x0 * y + t * c, "Q1": x1 * y, "Q2": x2 * y,
        "Pf1": pf[0], "Pf2": pf[1], "Pf3": pf[2], "Pf4": pf[3],
        "Pf5": x0 * b + x3 * d - t * y * c,
        "q": F.quartic_441aii(S, P),
    }


def _i_441aaii_420ai(S, P, t, g):
    x0, x1, x2, x3, y = _v(S, "x0", "x1", "x2", "x3", "y")
    b, d0, d1, d2 = (P[k] for k in ("b", "d0", "d1", "d2"))
    shown = _ids(
        ("t*q = (b + d0*x3)*Q0' - y*Pf5' + d1*x3*Q1 + d2*x3*Q2", t * g["q"],
         (b + d0 * x3) * g["Q0"] - y * g["Pf5"] + d1 * x3 * g["Q1"] + d2 * x3 * g["Q2"]),
    )
    aux = _ids(
        ("t*Pf2 = x2*Q0' - x0*Q2", t * g["Pf2"], x2 * g["Q0"] - x0 * g["Q2"]),
        ("t*Pf4 = x0*Q1 - x1*Q0'", t * g["Pf4"], x0 * g["Q1"] - x1 * g["Q0"]),
        displayed=False,
    )
    return shown + aux


def _f_441aaii_420ai(A, P, t):
    x0, x1, x2, x3, y = _v(A, "x0", "x1", "x2", "x3", "y")
    z = A.zero()
    M = SkewMatrix.from_upper(A, [
        [x2, x1, z, z],
        [P["c"] * t, P["d"], x0],
        [P["b"], -x3],
        [-y],
    ])
    return maximal_pfaffians(M) + [x0 * y + P["c"] * t]


def _b_441bai_400a(S, P, t):
    x0, x1, y0, y1 = _v(S, "x0", "x1", "y0", "y1")
    A, B, C, D = (P[k] for k in "ABCD")
    d = F.parts_441b(S, {**P, "P": A, "Q": C, "M": B, "N": D, "H": A * D - B * C})
    d["Q1"] = x0 * y0 + t * D
    d["Q2"] = x0 * y1 + t * B
    d["Q3"] = x1 * y0 + t * C
    d["Q4"] = x1 * y1 + t * A
    return d


def _i_441bai_400a(S, P, t, g):
    x0, x1, y0, y1 = _v(S, "x0", "x1", "y0", "y1")
    B, D = P["B"], P["D"]
    return _ids(
        ("t*F1 = x0*Q4' - x1*Q2'", t * g["F1"], x0 * g["Q4"] - x1 * g["Q2"]),
        ("t*F2 = x0*Q3' - x1*Q1'", t * g["F2"], x0 * g["Q3"] - x1 * g["Q1"]),
        ("t*G1 = y0*Q4' - y1*Q3'", t * g["G1"], y0 * g["Q4"] - y1 * g["Q3"]),
        ("t*G2 = y0*Q2' - y1*Q1'", t * g["G2"], y0 * g["Q2"] - y1 * g["Q1"]),
        ("t*H = D*Q4' - B*Q3' + x1*G2", t * g["H"], D * g["Q4"] - B * g["Q3"] + x1 * g["G2"]),
    )


def _f_441bai_400a(A, P, t):
    return minors(F.matrix_441bi(A, P, corner=-t), 2)


def _b_441baii_430a(S, P, t):
    x0, x1, y0, y1 = _v(S, "x0", "x1", "y0", "y1")
    a, b, c, d, B, D = (P[k] for k in ("a", "b", "c", "d", "B", "D"))
    k = x0 * x0 - t * t * b * d
    return {
        "Q1": x1 * y1, "Q2": x1 * y0,
        "Q3": x0 * y0 - t * b * y1, "Q4": x0 * y1 - t * d * y0,
        "F1": B * x1 - a * k, "F2": D * x1 - c * k,
        "F3": D * (y1 + t * a) - B * (y0 + t * c),
        "F4": y0 * y0 * d - y1 * y1 * b,
        "H": D * (x0 * a + y0 * d) - B * (x0 * c + y1 * b),
    }


def _i_441baii_430a(S, P, t, g):
    x0, y0, y1 = _v(S, "x0", "y0", "y1")
    B, D = P["B"], P["D"]
    shown = _ids(
        ("t*F4 = y1*Q3' - y0*Q4'", t * g["F4"], y1 * g["Q3"] - y0 * g["Q4"]),
        ("t*H = -x0*F3' - B*Q3' + D*Q4'", t * g["H"], -x0 * g["F3"] - B * g["Q3"] + D * g["Q4"]),
    )
    fixed = _ids(
        ("t*H = x0*F3' + B*Q3' - D*Q4'", t * g["H"], x0 * g["F3"] + B * g["Q3"] - D * g["Q4"]),
        displayed=False,
    )
    return shown + fixed


def _f_441baii_430a(A, P, t):
    x0, x1, y0, y1 = _v(A, "x0", "x1", "y0", "y1")
    a, b, c, d, B, D = (P[k] for k in ("a", "b", "c", "d", "B", "D"))
    u = _inv(A, t)
    z = A.zero()
    M = [[D * u, -(B * u), a, c],
         [-(b * t), x0, z, z],
         [x0, -(d * t), z, z]]
    return CramerFormat(M, [y1, y0, D, -B], x1).equations()


# -- degree 17 -------------------------------------------------------------------

def _k_310a(R, P):
    """Coefficients K0, K1 of x0, x1 in Pf5 = K0*x0 + K1*x1."""
    x2, x3, x5 = _v(R, "x2", "x3", "x5")
    return [x5 * P[f"a{i}"] - x3 * P[f"b{i}"] + x2 * P[f"c{i}"] for i in (0, 1)]


def _l_310a(R, P):
    """Determinants multiplying L in the written Pf2', Pf3', Pf4'."""
    a0, a1, b0, b1, c0, c1 = (P[k] for k in ("a0", "a1", "b0", "b1", "c0", "c1"))
    return [b1 * c0 - b0 * c1, a1 * c0 - a0 * c1, a1 * b0 - a0 * b1]


def _b_310a_300a(S, P, t):
    x0, x1, x2, x3, x5, y = _v(S, "x0", "x1", "x2", "x3", "x5", "y")
    K0, K1 = _k_310a(S, P)
    d = F.parts_310a(S, P)
    # the written Q1' carries +t*K0; only -t*K0 is compatible with Pf2'..Pf4'
    d["Q0"] = x0 * y + t * K1
    d["Q1"] = x1 * y - t * K0
    for name, xe, det in zip(("Pf2", "Pf3", "Pf4"), (x5, x3, x2), _l_310a(S, P)):
        d[name] = d[name] + t * (xe * P["E"] + det * P["L"])
    return d


def _i_310a_300a(S, P, t, g):
    x0, x1 = _v(S, "x0", "x1")
    return _ids(("t*Pf5 = x1*Q0' - x0*Q1'", t * g["Pf5"], x1 * g["Q0"] - x0 * g["Q1"]))


def _f_310a_300a(A, P, t):
    x = {i: A.var(f"x{i}") for i in range(8)}
    a0, a1, b0, b1, c0, c1 = (P[k] for k in ("a0", "a1", "b0", "b1", "c0", "c1"))
    # the written N, v, s with t -> -t in the L entry and in y/t, and s negated;
    # v carries y/t, fine for t a nonzero field constant
    N = [[x[1], a0, -b0, c0],
         [x[0], -a1, b1, -c1],
         [P["L"] * (-t), x[4], -x[6], x[7]]]
    s = P["d0"] * x[0] + P["d1"] * x[1] + P["E"] * t
    return CramerFormat(N, [A.var("y") * _inv(A, -t), x[5], x[3], x[2]], -s).equations()


def _s331(R, P, m47=None):
    M = F.matrix_331(R, P, m47)
    return lambda *ix: sub_pfaffian(M, ix)


def _b_331ai_300a(S, P, t):
    x0, x1, x2, y = _v(S, "x0", "x1", "x2", "y")
    s = _s331(S, P)
    d = {k: v for k, v in F.parts_331a(S, P).items() if not k.startswith("_")}
    d["Q0"] = x0 * y + t * s(1, 2, 3, 4)
    d["Q1"] = x1 * y + t * s(1, 2, 3, 5)
    # written as b1*x1*x4 - a0*x0*x5, the negative of the sub-Pfaffian on rows 1, 2, 3, 6
    d["Q2"] = x2 * y + t * s(1, 2, 3, 6)
    return d


def _i_331ai_300a(S, P, t, g):
    x0, x1, x2, y = _v(S, "x0", "x1", "x2", "y")
    s = _s331(S, P)
    return _ids(
        ("t*Pf6 = x1*Q0' - x0*Q1'", t * g["Pf6"], x1 * g["Q0"] - x0 * g["Q1"]),
        ("t*Pf5 = x2*Q0' - x0*Q2'", t * g["Pf5"], x2 * g["Q0"] - x0 * g["Q2"]),
        ("t*Pf4 = x2*Q1' - x1*Q2'", t * g["Pf4"], x2 * g["Q1"] - x1 * g["Q2"]),
        ("t*H = a0*Pf2345*Q0' - b1*Pf1345*Q1' - y*Pf7", t * g["H"],
         P["a0"] * s(2, 3, 4, 5) * g["Q0"] - P["b1"] * s(1, 3, 4, 5) * g["Q1"] - y * g["Pf7"]),
    )


def _f_331ai_300a(A, P, t):
    x = {i: A.var(f"x{i}") for i in range(13)}
    z = A.zero()
    N = [[x[0], x[8], -x[7], x[6]],
         [x[1], x[11], -x[10], x[9]],
         [x[2], z, -(P["b1"] * x[1]), P["a0"] * x[0]]]
    v = [A.var("y") * _inv(A, t), x[3], x[4], x[5]]
    # written with s = -x2*x12; under the sign rule used here that is s = x2*x12
    return CramerFormat(N, v, x[2] * x[12]).equations()


def _b_331aii_310ai(S, P, t):
    x0, y = _v(S, "x0", "y")
    d = {k: v for k, v in F.parts_331a(S, P, m47=0, H=_s331(S, P, 0)(1, 2, 3, 4)
                                       * _s331(S, P, 0)(2, 3, 4, 5)).items()
         if not k.startswith("_")}
    d["Q0"] = x0 * y + t * _s331(S, P, 0)(1, 2, 3, 4)
    return d


def _i_331aii_310ai(S, P, t, g):
    x0, x1, x2, y = _v(S, "x0", "x1", "x2", "y")
    s = _s331(S, P, 0)
    a0, b1 = P["a0"], P["b1"]
    shown = _ids(
        ("t*a0*H = a0*Pf2345*Q0' - b1*Pf1345*Q1 - y*Pf7", t * a0 * g["H"],
         a0 * s(2, 3, 4, 5) * g["Q0"] - b1 * s(1, 3, 4, 5) * g["Q1"] - y * g["Pf7"]),
    )
    aux = _ids(
        ("t*Pf5 = x2*Q0' - x0*Q2", t * g["Pf5"], x2 * g["Q0"] - x0 * g["Q2"]),
        ("t*Pf6 = x1*Q0' - x0*Q1", t * g["Pf6"], x1 * g["Q0"] - x0 * g["Q1"]),
        displayed=False,
    )
    return shown + aux


def _f_331aii_310ai(A, P, t):
    x = {i: A.var(f"x{i}") for i in range(13)}
    a0, b1 = P["a0"], P["b1"]
    N = SkewMatrix.from_upper(A, [
        [x[2] * x[9] - a0 * x[0] * x[1], x[2] * x[10] - b1 * x[1] * x[1], x[2] * x[11], x[2] * x[12]],
        [x[3], x[4], x[6]],
        [x[5], x[7]],
        [x[8]],
    ])
    d = F.parts_310ai(A, P, t)
    return maximal_pfaffians(N)[1:] + [d["Q0"], d["Q1"], d["Q2"], d["Pf7"]]


# -- degree 18 -------------------------------------------------------------------

def _ab_210(R, P):
    """A, B with Pf4 = A*y0 + B*y1."""
    a, b = P["a"], P["b"]
    x0, x1, x3, y0, y1, z0, z1, z2 = _v(R, "x0", "x1", "x3", "y0", "y1", "z0", "z1", "z2")
    A = -(a * y0 * y0) + a * x1 * z1 + x0 * z0 + x3 * z2
    B = -(b * x0 * z1) + y0 * y1 - x3 * z1 - x1 * z2
    return A, B


def _b_210ai_200(S, P, t):
    a, b = P["a"], P["b"]
    x = _v(S, *(f"x{i}" for i in range(6)))
    y0, y1, w = _v(S, "y0", "y1", "w")
    A, B = _ab_210(S, P)
    d = {k: v for k, v in F.parts_210a(S, P).items() if not k.startswith("_")}
    d["Q0"] = y0 * w + t * B
    d["Q1"] = y1 * w - t * A
    # extra term transcribed as written
    d["F2"] = d["F2"] - t * (a * x[1] * x[2] * y0 - a * x[1] * x[1] * y1 - b * x[0] * x[4] * y0
                             + b * x[0] * x[2] * y1 + b * x[0] * x[3] * y1 - x[0] * x[1] * y0
                             - x[3] * x[4] * y0 + x[3] * x[3] * y1 - x[0] * x[5] * y1)
    return d


def _i_210ai_200(S, P, t, g):
    a, b = P["a"], P["b"]
    x0, x1, x3, y0, y1 = _v(S, "x0", "x1", "x3", "y0", "y1")
    Q2 = F.parts_210a(S, P)["_Q2"]
    pf = {i: g[f"Pf{i}"] for i in range(1, 8)}
    shown = _ids(
        ("t*Pf4 = y0*Q1' - y1*Q0'", t * pf[4], y0 * g["Q1"] - y1 * g["Q0"]),
        ("y0*F2' = Q2*Q0' + t*((b*x0 + x3)*Pf6 + x1*Pf7)", y0 * g["F2"],
         Q2 * g["Q0"] + t * ((b * x0 + x3) * pf[6] + x1 * pf[7])),
        ("y1*F2' = Q2*Q1' + t*(a*x1*Pf6 + x0*Pf1 + x3*Pf7)", y1 * g["F2"],
         Q2 * g["Q1"] + t * (a * x1 * pf[6] + x0 * pf[1] + x3 * pf[7])),
    )
    # the same relations with the Pfaffians labelled by the deleted row
    fixed = _ids(
        ("t*Pf4 = y1*Q0' - y0*Q1'", t * pf[4], y1 * g["Q0"] - y0 * g["Q1"]),
        ("y0*F2' = Q2*Q0' + t*((b*x0 + x3)*Pf6 + x1*Pf5)", y0 * g["F2"],
         Q2 * g["Q0"] + t * ((b * x0 + x3) * pf[6] + x1 * pf[5])),
        ("y1*F2' = Q2*Q1' + t*(a*x1*Pf6 + x0*Pf7 + x3*Pf5)", y1 * g["F2"],
         Q2 * g["Q1"] + t * (a * x1 * pf[6] + x0 * pf[7] + x3 * pf[5])),
        displayed=False,
    )
    return shown + fixed


# -- specialisation pencils --------------------------------------------------------
#
# Each pencil joins a special family (t = 0) to a general member of the larger
# family it specialises from; the extra data are drawn per instance.

def _enumerated(fn):
    """Pencil builders return generator lists; the total family is keyed by position."""
    def wrapped(S, P, t):
        return dict(enumerate(fn(S, P, t)))
    wrapped.__name__ = fn.__name__
    return wrapped


def _in_ideal(A, rng, degree, names):
    """Random form of the given degree in the ideal generated by the named variables."""
    return sum((A.var(v) * random_form(A, degree - 1, rng) for v in names), A.zero())


def _x_562_cubic(A, P, rng):
    return {"K": random_form(A, 3, rng)}


@_enumerated
def _p_562ai_562a(S, P, t):
    return F.eq_562a(S, {**P, "H34": P["H34"] + t * P["K"]})


@_enumerated
def _p_562aii_562a(S, P, t):
    return F.eq_562a(S, {**P, "H34": t * P["K"]})


def _matched_pencil(S, P, t, sides, pert, quartic):
    """Move the forms in ``sides`` along t*pert (perturbations vanish on the z-line),
    keeping the quartic matched: H_t = H + matching(t) - matching(0)."""
    Q = dict(P)
    for k in sides:
        Q[k] = P[k] + t * P[pert + k]
    pq0, qq0 = quartic(P)
    pqt, qqt = quartic(Q)
    Q["H"] = P["H"] + F.matching_quartic(pqt, qqt) - F.matching_quartic(pq0, qq0)
    return Q


_X562B = ("A0", "A1", "B0", "B1", "l0", "l1", "D0", "D1")


def _x_562bi_562b(A, P, rng):
    return {"d" + k: _in_ideal(A, rng, P[k].degree(), ("x0", "x1", "y0", "y1")) for k in _X562B}


@_enumerated
def _p_562bi_562b(S, P, t):
    # [562]bi matches the G-side quartic with the opposite sign; negating l0, l1
    # (which only negates G1) puts it in the sign convention of [562]b
    Pn = {**P, "l0": -P["l0"], "l1": -P["l1"], "dl0": -P["dl0"], "dl1": -P["dl1"]}

    def quartic(Q):
        return (Q["A0"] * Q["B1"] - Q["B0"] * Q["A1"], Q["l0"] * Q["D1"] - Q["l1"] * Q["D0"])

    return F.eq_562b(S, _matched_pencil(S, Pn, t, _X562B, "d", quartic))


@_enumerated
def _p_420ai_420a(S, P, t):
    return F.eq_420a(S, P, m14=t * S.var("x2"))


def _x_441aai_441aa(A, P, rng):
    return {"P2": random_form(A, 3, rng, ("x3", "x4", "y"))}


@_enumerated
def _p_441aai_441aa(S, P, t):
    return F.eq_441a(S, {**P, "P": P["P"] + t * P["P2"]})


_X441B = ("A", "B", "C", "D", "P", "Q", "M", "N")


def _x_441bai_441ba(A, P, rng):
    out = {}
    for k in "ABCD":
        out["d" + k] = _in_ideal(A, rng, 2, ("x0", "x1"))
    for k in "PQMN":
        out["d" + k] = _in_ideal(A, rng, 2, ("y0", "y1"))
    return out


@_enumerated
def _p_441bai_441ba(S, P, t):
    A, B, C, D = (P[k] for k in "ABCD")
    base = {**P, "P": A, "Q": C, "M": B, "N": D, "H": A * D - B * C}

    def quartic(Q):
        return (Q["P"] * Q["N"] - Q["Q"] * Q["M"], Q["A"] * Q["D"] - Q["B"] * Q["C"])

    return F.eq_441b(S, _matched_pencil(S, base, t, _X441B, "d", quartic))


def _x_441baii_441bai(A, P, rng):
    return {"A2": random_form(A, 2, rng), "C2": random_form(A, 2, rng)}


@_enumerated
def _p_441baii_441bai(S, P, t):
    return F.eq_441bi(S, {**P, "A": P["A"] + t * P["A2"], "C": P["C"] + t * P["C2"]})


def _x_331ai_331a(A, P, rng):
    return {"F3": random_form(A, 3, rng)}


@_enumerated
def _p_331ai_331a(S, P, t):
    return F.eq_331a(S, {**P, "F": t * P["F3"]})


@_enumerated
def _p_331aii_331ai(S, P, t):
    x0 = S.var("x0")
    s = _s331(S, {**P}, t * x0)
    H = P["a0"] * s(1, 2, 3, 4) * s(2, 3, 4, 5) - t * P["b1"] * s(1, 3, 4, 5) * s(1, 2, 3, 5)
    d = F.parts_331a(S, P, m47=t * x0, H=H)
    return [d[k] for k in ("Q0", "Q1", "Q2")] + [d[f"Pf{i}"] for i in range(1, 8)] + [d["H"]]


def matrix_441a_pencil(R, P, s):
    """Skew matrix joining the [441a]aii matrix (s = 0) to the [441a]a shape (s = 1)."""
    x0, x1, x2, x3 = (R.var(f"x{i}") for i in range(4))
    return SkewMatrix.from_upper(R, [
        [P["b"], P["c"], P["d"], R.zero()],
        [x3, x1 * s, x1 * (1 - s) + x0 * s],
        [x0, x1 * s],
        [x2],
    ])


def _x_441aaii_441aai(A, P, rng):
    return {"A2": random_form(A, 2, rng, ("x3", "x4", "y"))}


def _p_441aaii_441aai(A, P, s):
    # fibrewise: the y-free quartic is the unique new degree-4 generator of
    # (Pfaffians) : (x0, x1, x2), normalised to be monic modulo the Pfaffians
    y = A.var("y")
    pf = maximal_pfaffians(matrix_441a_pencil(A, P, s))
    quads = [A.var(f"x{i}") * y for i in range(3)]
    if s % A.p == 0:
        return quads + pf + [F.quartic_441aii(A, P)]
    tail = y * y * (F.restrict_to(P["c"], ("x3", "x4")) + P["A2"] * s)
    I = Ideal(A, pf)
    new = [f for f in minimal_generators(colon(I, _v(A, "x0", "x1", "x2"))) if not I.contains(f)]
    if len(new) != 1 or new[0].degree() != 4:
        raise ArithmeticError("expected a single new quartic in the colon ideal")
    return quads + pf + [I.reduce(new[0]).monic() + tail]


# [310]ai written in the [310]a format inside P^13: rows x1, x2 play the roles
# of x0, x1, the old x0 becomes L, and the lower block is (x3, x4, x6, x5, x7, x8)
_LOW_310AI = ("x3", "x4", "x6", "x5", "x7", "x8")
_C310 = ("a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1")


def coefficients_310ai(R, P) -> dict:
    x = {i: R.var(f"x{i}") for i in (0, 1, 9, 10, 11, 12)}
    z = R.zero()
    return {"a0": -P["a0"] * x[0], "a1": x[9], "b0": -P["b1"] * x[1], "b1": x[10],
            "c0": z, "c1": x[11], "d0": z, "d1": x[12], "L": x[0], "E": z}


def _x_310ai_310a(A, P, rng):
    out = {"d" + k: _lin(A, rng) for k in _C310 + ("L",)}
    out["dE"] = random_form(A, 2, rng)
    return out


@_enumerated
def _p_310ai_310a(S, P, t):
    C = coefficients_310ai(S, P)
    C = {k: C[k] + t * P["d" + k] for k in C}
    d = F.parts_310a(S, C, X=(S.var("x1"), S.var("x2")), lower=_v(S, *_LOW_310AI))
    return list(d.values())


# -- registry ----------------------------------------------------------------------

def _stem(stem: str, kind: str = "smoothing") -> dict:
    g = lambda k: globals().get(f"_{k}_{stem}")
    if kind == "smoothing":
        return {"build": g("b"), "identities": g("i"), "target_format": g("f")}
    return {"build": g("p"), "extra": g("x")}


def _smoothing(name, source, target, stem, summary, **kw):
    return DeformationSpec(name, source, target, "smoothing", summary, **{**_stem(stem), **kw})


def _pencil(name, source, target, stem, summary, **kw):
    return DeformationSpec(name, source, target, "specialisation", summary,
                           **{**_stem(stem, "pencil"), **kw})


SPECS: dict[str, DeformationSpec] = {s.name: s for s in (
    # degree 15
    _smoothing("551a->550a", "[551]a", "[550]a", "551a_550a",
               "the zero corner entry of the Cramer matrix becomes t"),
    _smoothing("562ai->550a", "[562]ai", "[550]a", "562ai_550a",
               "t in the (1,3) entries of both skew matrices, Q5 corrected by t^2"),
    _smoothing("562ai->550a/23", "[562]ai", "[550]a", "562ai_550a",
               "the symmetric deformation with t in the (2,3) entries",
               build=_b_562ai_550a_23, identities=None, target_format=None,
               variant_of="562ai->550a"),
    _smoothing("562aii->551a", "[562]aii", "[551]a", "562aii_551a",
               "t in one shared entry of the two skew matrices"),
    _smoothing("562bi->550a", "[562]bi", "[550]a", "562bi_550a",
               "the four product quadrics acquire t times the split factors"),
    # degree 16
    _smoothing("420a->400a", "[420]a", "[400]a", "420a_400a",
               "the zero entry of the first row becomes t"),
    _smoothing("430a", "[430]a", "[400]a", "430a",
               "the 2x2 block N of the Cramer matrix varies over A^4; its rank decides the fibre",
               params=("t1", "t2", "t3", "t4"), strata={0: "[430]a", 1: "[420]a", 2: "[400]a"}),
    _smoothing("441a-ai->400a", "[441a]ai", "[400]a", "441aai_400a",
               "Jerry quadrics x_i y perturbed by t times the first row, Q3 by t^2 A"),
    _smoothing("441a-aii->420ai", "[441a]aii", "[420]ai", "441aaii_420ai",
               "x0 y perturbed by t c, with matching Pfaffian and quartic corrections"),
    _smoothing("441b-ai->400a", "[441b]ai", "[400]a", "441bai_400a",
               "the zero corner of the 3x3 matrix becomes -t"),
    _smoothing("441b-aii->430a", "[441b]aii", "[430]a", "441baii_430a",
               "split quadrics let the four product quadrics absorb t b, t d"),
    # degree 17
    _smoothing("310a->300a", "[310]a", "[300a]a", "310a_300a",
               "x0 y and x1 y perturbed by t times the K cubics, Pfaffians corrected"),
    _smoothing("331ai->300a", "[331]ai", "[300a]a", "331ai_300a",
               "x_i y perturbed by t times 4x4 Pfaffians of the 7x7 matrix"),
    _smoothing("331aii->310ai", "[331]aii", "[310]ai", "331aii_310ai",
               "x0 y perturbed by t Pf1234"),
    # degree 18
    _smoothing("210ai->200", "[210]ai", "[200]", "210ai_200",
               "y_i w perturbed by t B, -t A and the cubic F2 corrected"),
    # specialisation arrows
    _pencil("562ai->562a", "[562]ai", "[562]a", "562ai_562a",
            "H34 = H12 + t K", extra=_x_562_cubic),
    _pencil("562aii->562a", "[562]aii", "[562]a", "562aii_562a",
            "H34 = t K", extra=_x_562_cubic),
    _pencil("562bi->562b", "[562]bi", "[562]b", "562bi_562b",
            "factors moved by t times forms vanishing on the z-line, quartic kept matched"),
    _pencil("420ai->420a", "[420]ai", "[420]a", "420ai_420a",
            "first-row entry restored as t x2"),
    _pencil("441a-ai->441a-a", "[441a]ai", "[441a]a", "441aai_441aa",
            "P = y A + t P' with P' a general cubic in x3, x4, y"),
    DeformationSpec("441a-aii->441a-ai", "[441a]aii", "[441a]ai", "specialisation",
                    "the Jerry matrix moved linearly to the general shape; quartic recomputed per fibre",
                    numeric=_p_441aaii_441aai, extra=_x_441aaii_441aai),
    _pencil("441b-ai->441b-a", "[441b]ai", "[441b]a", "441bai_441ba",
            "determinantal blocks separated by t times forms, quartic kept matched"),
    _pencil("441b-aii->441b-ai", "[441b]aii", "[441b]ai", "441baii_441bai",
            "A and C moved by t times general quadrics"),
    _pencil("331ai->331a", "[331]ai", "[331]a", "331ai_331a",
            "F = t F' with F' a general cubic"),
    _pencil("331aii->331ai", "[331]aii", "[331]ai", "331aii_331ai",
            "entry (4,7) = t x0 and the quartic gains -t b1 Pf1345 Pf1235"),
    _pencil("310ai->310a", "[310]ai", "[310]a", "310ai_310a",
            "[310]ai written in the [310]a format, coefficient forms moved by t"),
)}


def spec_names(kind: str | None = None, variants: bool = True) -> list[str]:
    return [n for n, s in SPECS.items()
            if (kind is None or s.kind == kind) and (variants or s.variant_of is None)]


def report_specs() -> list[str]:
    """The smoothing arrows reported one row each (variants excluded)."""
    return spec_names("smoothing", variants=False)


def get_spec(name: str) -> DeformationSpec:
    key = name.replace("→", "->").strip()
    try:
        return SPECS[key]
    except KeyError:
        raise KeyError(f"unknown deformation {name!r}; known: {', '.join(SPECS)}") from None


# -- verification --------------------------------------------------------------------

def expected_table(family: str) -> str:
    return F.get_family(family).betti


def sample_points(spec: DeformationSpec, X: F.FamilyInstance, k: int = DEFAULT_SAMPLES) -> list[tuple]:
    """k nonzero points, reproducible from the instance seed; general (rank 2) for A^4."""
    rng = SplitMix64(F.seed_for(X.seed, spec.name + "/samples"))
    p = X.ambient_ring.p
    out = []
    while len(out) < k:
        pt = tuple(rng.nonzero(p) for _ in spec.params)
        if len(pt) == 4 and (pt[0] * pt[3] - pt[1] * pt[2]) % p == 0:
            continue
        if pt not in out:
            out.append(pt)
    return out


def stratum_points(spec: DeformationSpec, X: F.FamilyInstance) -> list[tuple[int, tuple, str]]:
    """(rank, point, label) for the 2x2 parameter block: each rank at its normal form and at a
    random point (rank 0 has only the origin)."""
    rng = SplitMix64(F.seed_for(X.seed, spec.name + "/strata"))
    p = X.ambient_ring.p
    a, b, c, d = (rng.nonzero(p) for _ in range(4))
    while (a * d - b * c) % p == 0:
        d = rng.nonzero(p)
    u, v, w = (rng.nonzero(p) for _ in range(3))
    return [
        (0, (0, 0, 0, 0), "rank 0"),
        (1, (u, 0, 0, 0), "rank 1, normal form"),
        (1, (u, v, w * u % p, w * v % p), "rank 1, random"),
        (2, (u, 0, 0, v), "rank 2, normal form"),
        (2, (a, b, c, d), "rank 2, random"),
    ]


def _format_points(spec, X, k):
    if spec.strata:
        return [pt for r, pt, label in stratum_points(spec, X) if r > 0 and label.endswith("normal form")]
    return sample_points(spec, X, k)[:1]


def verify_identities(spec: DeformationSpec, X: F.FamilyInstance,
                      samples: int = DEFAULT_SAMPLES) -> IdentityReport:
    """Exact identity checks, central-fibre agreement and, where a target format is written,
    equality of the general fibre with it."""
    A, S, P, PS, gens = _context(spec, X)
    rep = IdentityReport(spec.name)
    if spec.identities is not None and gens is not None:
        ts = tuple(S.var(t) for t in spec.params)
        for idt in spec.identities(S, PS, ts if len(ts) > 1 else ts[0], gens):
            r = idt.residual()
            rep.results.append(IdentityResult(idt.label, r.is_zero(),
                                              None if r.is_zero() else str(r), idt.displayed))
    zero = tuple(0 for _ in spec.params)
    rep.central_fiber = ideal_equal(fiber(spec, X, zero), X.ideal)
    if spec.target_format is not None:
        ok = []
        for pt in _format_points(spec, X, samples):
            tf = spec.target_format(A, P, pt if len(pt) > 1 else pt[0])
            if tf is not None:
                ok.append(ideal_equal(Ideal(A, ambient_fiber(spec, X, pt)), Ideal(A, tf)))
        rep.target_format = all(ok) if ok else None
    return rep


def _record(spec, X, pt, expected, label) -> FiberRecord:
    I = fiber(spec, X, pt)
    return FiberRecord(tuple(pt), hilbert_data(I), betti_table(I), expected, label)


def verify_flatness(spec: DeformationSpec, X: F.FamilyInstance,
                    samples: int = DEFAULT_SAMPLES) -> FlatnessReport:
    """Hilbert polynomial at the origin and at ``samples`` nonzero points, endpoint tables."""
    if samples < 1:
        raise ValueError("at least one sample point is needed")
    rep = FlatnessReport(spec.name)
    zero = tuple(0 for _ in spec.params)
    rep.fibers.append(_record(spec, X, zero, expected_table(spec.source), "central"))
    target = spec.strata[max(spec.strata)] if spec.strata else spec.target
    for pt in sample_points(spec, X, samples):
        rep.fibers.append(_record(spec, X, pt, expected_table(target), "general"))
    if spec.strata:
        for rank, pt, label in stratum_points(spec, X):
            if rank > 0:
                rep.fibers.append(_record(spec, X, pt, expected_table(spec.strata[rank]), label))
        rep.notes.append("the rank-0 stratum is the origin alone")
    general = [f.betti for f in rep.fibers if f.label == "general"]
    if any(b != general[0] for b in general):
        rep.notes.append("sampled general fibres disagree in Betti table")
    return rep


# -- bilinkage --------------------------------------------------------------------------

LINK_ATTEMPTS = 5


def _complete_intersection(I: Ideal, degrees, rng: SplitMix64, base=()) -> list[Polynomial]:
    base = list(base)
    for _ in range(LINK_ATTEMPTS):
        gens = base + [F.random_element(I, d, rng) for d in degrees]
        if all(not g.is_zero() for g in gens) and F.is_complete_intersection(gens):
            return gens
    raise ArithmeticError(f"no complete intersection of degrees {tuple(degrees)} found "
                          f"in {LINK_ATTEMPTS} attempts")


def bilink_check(I: Ideal, ci_degrees=(2, 2, 3), link_degree: int = 3, seed: int = 1) -> dict:
    """Two successive links of the curve I inside a surface S of type ``ci_degrees``.

    S is a complete intersection taken from I.  The first link uses S plus a
    random element of I of degree ``link_degree``; the second uses S plus an
    element of degree ``link_degree - 1`` from the residual.  Returns the
    surface, the intermediate residual and the final curve.
    """
    rng = SplitMix64(seed)
    S = _complete_intersection(I, ci_degrees, rng)
    ci1 = _complete_intersection(I, (link_degree,), rng, S)
    J1 = F.link(Ideal(I.ring, ci1), I)
    ci2 = _complete_intersection(J1, (link_degree - 1,), rng, S)
    J2 = F.link(Ideal(I.ring, ci2), J1)
    return {"surface": Ideal(I.ring, S), "intermediate": J1, "result": Ideal(I.ring, minimal_generators(J2))}


# -- incidence graph ----------------------------------------------------------------------

@dataclass
class IncidenceGraph:
    nodes: list
    edges: dict            # (source, target) -> [spec names]
    status: dict = field(default_factory=dict)   # spec name -> bool

    def is_acyclic(self) -> bool:
        from graphlib import CycleError, TopologicalSorter
        ts = TopologicalSorter({n: set() for n in self.nodes})
        for a, b in self.edges:
            ts.add(b, a)
        try:
            tuple(ts.static_order())
        except CycleError:
            return False
        return True

    def subgraph(self, degree: int) -> "IncidenceGraph":
        keep = [n for n in self.nodes if F.get_family(n).degree == degree]
        return IncidenceGraph(keep, {e: v for e, v in self.edges.items() if e[0] in keep and e[1] in keep},
                              self.status)

    def to_dot(self) -> str:
        lines = ["digraph strata {", "  rankdir=TB;"]
        for deg in sorted({F.get_family(n).degree for n in self.nodes}):
            lines.append(f"  subgraph cluster_{deg} {{")
            lines.append(f'    label="degree {deg}";')
            for n in self.nodes:
                if F.get_family(n).degree == deg:
                    lines.append(f'    "{n}" [label="{n}\\n{F.get_family(n).betti}"];')
            lines.append("  }")
        for (a, b), names in self.edges.items():
            attrs = [f'label="{", ".join(names)}"']
            if any(SPECS[n].kind == "specialisation" for n in names):
                attrs.append("style=dashed")
            st = [self.status[n] for n in names if n in self.status]
            if st:
                attrs.append(f'color="{"darkgreen" if all(st) else "red"}"')
            lines.append(f'  "{a}" -> "{b}" [{", ".join(attrs)}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def incidence_graph(status: dict | None = None) -> IncidenceGraph:
    """Families as nodes, one edge per (source, target) pair of the registered arrows."""
    edges: dict = {}
    for s in SPECS.values():
        if s.variant_of is not None:
            continue
        for e in s.edges():
            edges.setdefault(e, []).append(s.name)
    return IncidenceGraph(F.family_names(), edges, dict(status or {}))
