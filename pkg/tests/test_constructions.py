import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gor4.constructions import families as F
from gor4.constructions.matrices import (CramerFormat, SkewMatrix, cramer_ideal, determinant,
                                         maximal_pfaffians, pfaffian, sub_pfaffian)
from gor4.constructions.tables import DEGREE_TABLE, named_table
from gor4.groebner import Ideal, codimension
from gor4.homology import betti_table, hilbert_data
from gor4.polyring import PolyRing, SplitMix64, random_form

S = PolyRing(["a", "b", "c"])


def leibniz_det(rows):
    """Permutation expansion: sum over S_n of sign * product, independent of cofactor code."""
    n = len(rows)
    out = S.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = S.const(1)
        for i in range(n):
            term = term * rows[i][perm[i]]
        out = out - term if inv % 2 else out + term
    return out


coeffs = st.integers(min_value=0, max_value=S.p - 1)


def skew(size, data):
    upper = []
    for i in range(size - 1):
        row = []
        for _ in range(size - 1 - i):
            c = data.draw(st.lists(coeffs, min_size=4, max_size=4))
            row.append(S.const(c[0]) + c[1] * S.var("a") + c[2] * S.var("b") + c[3] * S.var("c"))
        upper.append(row)
    return SkewMatrix.from_upper(S, upper)


@pytest.mark.parametrize("size", [4, 6])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_pfaffian_squared_is_determinant(size, data):
    M = skew(size, data)
    pf = pfaffian(M)
    assert pf * pf == leibniz_det(M.entries)
    assert determinant(M.entries) == leibniz_det(M.entries)


def test_small_pfaffians():
    a, b, c = S.var("a"), S.var("b"), S.var("c")
    M = SkewMatrix.from_upper(S, [[a, b, c], [c, a], [b]])
    # Pf of a 4x4 = m12 m34 - m13 m24 + m14 m23
    assert pfaffian(M) == a * b - b * a + c * c
    assert sub_pfaffian(M, [1, 3]) == b
    with pytest.raises(ValueError):
        pfaffian(M, [0, 1, 2])
    with pytest.raises(ValueError):
        SkewMatrix(S, [[a, b], [b, S.zero()]])


def test_maximal_pfaffians_of_a_3x3():
    a, b, c = S.var("a"), S.var("b"), S.var("c")
    M = SkewMatrix.from_upper(S, [[a, b], [c]])
    assert maximal_pfaffians(M) == [c, b, a]
    assert maximal_pfaffians(M, signed=True) == [c, -b, a]
    # signed Pfaffians are a syzygy of the rows
    sp = maximal_pfaffians(M, signed=True)
    for i in range(3):
        assert sum((M[i, j] * sp[j] for j in range(3)), S.zero()).is_zero()


def test_printed_pfaffians_of_the_420a_matrix():
    R = PolyRing([f"x{i}" for i in range(6)])
    x = [R.var(f"x{i}") for i in range(6)]
    rng = SplitMix64(3)
    P = {k: random_form(R, 2, rng) for k in ("q1", "q2", "q3", "Q")}
    pf = maximal_pfaffians(F.matrix_420a(R, P))
    q1, q2, q3 = P["q1"], P["q2"], P["q3"]
    # the five Pfaffians as displayed alongside the matrix
    assert pf[0] == x[5] * q1 - x[4] * q2 + x[3] * q3
    assert pf[1] == x[1] * x[5] - x[2] * x[4]
    assert pf[2] == x[0] * x[5] - x[2] * x[3]
    assert pf[3] == x[0] * x[4] - x[1] * x[3]
    assert pf[4] == x[2] * q1 - x[1] * q2 + x[0] * q3


def test_cramer_minors_annihilated_by_the_matrix():
    R = PolyRing([f"x{i}" for i in range(6)])
    rng = SplitMix64(5)
    M = [[random_form(R, 1, rng) for _ in range(4)] for _ in range(3)]
    v = [random_form(R, 1, rng) for _ in range(4)]
    fmt = CramerFormat(M, v, random_form(R, 2, rng))
    assert fmt.laplace_check()
    # (-1)^i det M_hat_i, 1-based
    m = fmt.signed_minors()
    assert m[0] == -determinant([row[1:] for row in M])
    assert m[3] == determinant([row[:3] for row in M])
    I = cramer_ideal(fmt)
    assert len(I.generators) == 7
    # generic linear M, v and quadratic s: a curve with table CGKK 4
    assert betti_table(I) == named_table("CGKK 4")


def test_cramer_rejects_inhomogeneous():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    x = [R.var(v) for v in R.names]
    M = [[x[0], x[1], x[2], x[3]], [x[1], x[2], x[3], x[0]], [x[2], x[3], x[0], x[1]]]
    with pytest.raises(ValueError):
        cramer_ideal(CramerFormat(M, [x[0], x[1], x[2], x[3] * x[3]], x[0] * x[1]))


@pytest.mark.parametrize("name", F.family_names())
def test_family_invariants(build, name):
    X = build(name)
    fam = F.get_family(name)
    h = hilbert_data(X.ideal)
    assert h.dimension - 1 == 1
    assert codimension(X.ideal) == 4
    assert (h.degree, h.genus) == (fam.degree, fam.genus)
    assert DEGREE_TABLE[h.degree][0] == h.genus
    assert [float(c) for c in h.hilbert_polynomial] == [-h.degree, h.degree]
    B = betti_table(X.ideal)
    assert B == named_table(fam.betti)
    assert B.is_gorenstein_symmetric()


@pytest.mark.parametrize("name", [n for n in F.family_names() if F.get_family(n).structure])
def test_structure_holds_on_built_instances(build, name):
    X = build(name)
    fam = F.get_family(name)
    assert fam.structure(X.ambient_ring, X.provenance, X.ambient_ideal.generators) == []


def test_562b_matching_condition_detects_breakage(build):
    X = build("[562]b")
    P = dict(X.provenance)
    A = X.ambient_ring
    assert F.structure_562b(A, P, None) == []
    P["H"] = P["H"] + A.var("z0") ** 4 if "z0" in A.names else P["H"] + A.var(A.graded[-1]) ** 4
    assert F.structure_562b(A, P, None)


def test_562bi_uses_the_opposite_sign(build):
    X = build("[562]bi")
    assert F.structure_562bi(X.ambient_ring, X.provenance, None) == []
    assert F.structure_562b(X.ambient_ring, X.provenance, None)


def test_rolling_factors_example():
    R = PolyRing(["x0", "x1", "x2", "x3", "y"])
    x0, x1, x2, x3, y = (R.var(v) for v in R.names)
    zero = R.zero()
    prov = {"b": x1 * x1, "c": x2 * x2, "d": x0 * x0, "d0": x0, "d1": zero, "d2": zero, "P": x3 ** 3}
    # roll x0 -> b: d0 * b
    assert F.rolling_factors_quartic(prov) == x0 * x1 * x1 * x3 - x2 ** 4 + x1 ** 4 + x3 ** 3 * y
    prov["d"] = x1
    with pytest.raises(ValueError):
        F.rolling_factors_quartic(prov)


@pytest.mark.parametrize("name", ["[310]a", "[331]a", "[210]a"])
def test_linear_section_pushes_ambient_equations(build, name):
    X = build(name)
    assert X.section is not None and len(X.ambient_ring.graded) > 6
    for g in X.ambient_ideal.generators:
        assert X.ideal.contains(X.to_curve(g))
    # the section is given by linear forms
    assert all(f.is_homogeneous() and f.degree() == 1 for f in X.section.values())


def test_build_is_deterministic():
    a = F.build_family("[420]a", seed=7)
    b = F.build_family("[420]a", seed=7)
    assert a.to_json() == b.to_json()


def test_unknown_family():
    with pytest.raises(KeyError):
        F.get_family("[999]z")
