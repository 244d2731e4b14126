import pytest
from hypothesis import given, settings, strategies as st

from gor4.constructions import families as F
from gor4.constructions.matrices import maximal_pfaffians
from gor4.groebner import (Ideal, codimension, colon, ideal_equal, intersect, is_groebner, is_reduced,
                           minimal_generators, normal_form, reduced_groebner)
from gor4.monomial import poly_mul
from gor4.polyring import PolyRing, SplitMix64, random_form

R = PolyRing([f"x{i}" for i in range(6)])
x = {i: R.var(f"x{i}") for i in range(6)}


def random_ideal(seed, n=3, degrees=(2, 2, 3), ring=R):
    rng = SplitMix64(seed)
    return Ideal(ring, [random_form(ring, d, rng) for d in degrees[:n]])


def test_principal():
    assert reduced_groebner(Ideal(R, [x[0]])) == [x[0]]


def test_hand_computed_basis():
    # Buchberger by hand in grevlex(x > y): S(x^2 - y^2, xy) = -y^3 (up to sign); nothing else survives
    S = PolyRing(["x", "y"])
    X, Y = S.var("x"), S.var("y")
    G = reduced_groebner(Ideal(S, [X * Y, X * X - Y * Y]))
    assert sorted(G, key=lambda g: (g.degree(), str(g))) == sorted([X * X - Y * Y, X * Y, Y ** 3],
                                                                    key=lambda g: (g.degree(), str(g)))


def test_complete_intersection_numerator(build):
    X = build("[400]a")
    gens = [g for g in X.ambient_ideal.generators]
    I = Ideal(R, gens)
    expected = [1]
    for _ in range(4):
        expected = poly_mul(expected, [1, 0, -1])
    got = I.hilbert_numerator()
    assert got + [0] * (len(expected) - len(got)) == expected


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 10**6))
def test_buchberger_criterion_and_idempotence(seed):
    I = random_ideal(seed)
    G = reduced_groebner(I)
    assert is_groebner(G) and is_reduced(G)
    assert reduced_groebner(Ideal(R, G)) == G


def test_schedule_independence():
    I = random_ideal(11)
    J = Ideal(R, list(reversed(I.generators)))
    assert reduced_groebner(I) == reduced_groebner(J)


def test_normal_form_basics():
    I = random_ideal(3)
    assert normal_form(R.zero(), I).remainder.is_zero()
    for g in I.generators:
        assert normal_form(g, I).remainder.is_zero()


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 10**6))
def test_reduction_trace_reassembles(seed):
    I = random_ideal(seed % 50 + 1)
    f = random_form(R, 4, SplitMix64(seed))
    tr = normal_form(f, I)
    assert tr.reassemble() == f
    G = reduced_groebner(I)
    for k in tr.remainder.terms:
        assert not any(R.mdivides(g.lead(), k) for g in G)


def test_normal_form_witnesses_parameter_elimination():
    X = F.build_family("[310]a", seed=1)
    S = X.ambient_ring.extend(aux=["t"])
    P = {k: S.imbed(v) for k, v in X.provenance.items()}
    from gor4 import deformations as D
    g = D._b_310a_300a(S, P, S.var("t"))
    t = S.var("t")
    I = Ideal(S, [g["Q0"], g["Q1"]], check_homogeneous=False)
    assert normal_form(t * g["Pf5"], I).remainder.is_zero()


def test_colon_trivial_cases():
    I = random_ideal(4)
    assert ideal_equal(colon(I, Ideal(R, [R.const(1)])), I)
    C = colon(Ideal(R, [x[0] ** 2]), Ideal(R, [x[0]]))
    assert ideal_equal(C, Ideal(R, [x[0]]))
    with pytest.raises(ValueError):
        colon(I, [R.zero()])


def test_colon_of_jerry_pfaffians(build):
    X = build("[441a]a")
    A = X.ambient_ring
    pf = maximal_pfaffians(F.matrix_441a(A, X.provenance))
    G = Ideal(A, pf)
    C = colon(G, [A.var("x0"), A.var("x1"), A.var("x2")])
    mg = minimal_generators(C)
    assert len(mg) == 6
    assert sorted(g.degree() for g in mg) == sorted([f.degree() for f in pf] + [4])
    q = F.rolling_factors_quartic({k: X.provenance[k] for k in ("b", "c", "d", "d0", "d1", "d2")})
    assert ideal_equal(C, Ideal(A, pf + [q]))


@settings(max_examples=5, deadline=None)
@given(st.integers(1, 10**6))
def test_colon_duality_and_routes(seed):
    T = PolyRing(["a", "b", "c", "d"])
    rng = SplitMix64(seed)
    I = Ideal(T, [random_form(T, 2, rng) for _ in range(2)] + [random_form(T, 3, rng)])
    J = Ideal(T, [random_form(T, 1, rng), random_form(T, 2, rng)])
    C = colon(I, J)
    for c in C.generators:
        for j in J.generators:
            assert I.contains(c * j)
    assert ideal_equal(C, colon(I, J, method="elimination"))


def test_intersection_routes_agree():
    T = PolyRing(["a", "b", "c", "d"])
    rng = SplitMix64(2)
    I = Ideal(T, [random_form(T, 2, rng), random_form(T, 2, rng)])
    J = Ideal(T, [random_form(T, 1, rng), random_form(T, 3, rng)])
    K = intersect(I, J)
    assert ideal_equal(K, intersect(I, J, method="elimination"))
    assert all(I.contains(k) and J.contains(k) for k in K.generators)


def test_ideal_equal_examples():
    I = random_ideal(5)
    assert ideal_equal(I, Ideal(R, I.generators[::-1]))
    assert ideal_equal(Ideal(R, [x[0], x[1]]), Ideal(R, [x[0] + x[1], x[1]]))
    assert not ideal_equal(Ideal(R, [x[0]]), Ideal(R, [x[1]]))


def test_codimension_of_complete_intersection():
    assert codimension(random_ideal(8, 3)) == 3
