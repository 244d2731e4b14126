import dataclasses

import pytest

from gor4 import deformations as D
from gor4.constructions import families as F
from gor4.constructions.tables import named_table
from gor4.groebner import Ideal, ideal_equal, minimal_generators
from gor4.homology import betti_table, hilbert_data
from gor4.polyring import PolyRing, SplitMix64, random_form


def test_registry_names():
    assert len(D.report_specs()) == 14
    assert D.get_spec("551a→550a") is D.SPECS["551a->550a"]
    with pytest.raises(KeyError):
        D.get_spec("nonsense")
    assert all(D.SPECS[n].kind == "specialisation" for n in D.spec_names("specialisation"))


@pytest.mark.parametrize("name", D.spec_names())
def test_central_fibre_is_the_source(build, name):
    spec = D.SPECS[name]
    X = build(spec.source)
    zero = tuple(0 for _ in spec.params)
    assert ideal_equal(D.fiber(spec, X, zero), X.ideal)


def test_551a_general_fibre(build):
    spec = D.SPECS["551a->550a"]
    X = build("[551]a")
    I = D.fiber(spec, X, 1)
    # seven Cramer equations, one of them redundant once the corner is a unit
    assert len(I.generators) == 7
    assert len(minimal_generators(I)) == 6
    assert betti_table(I) == named_table("CGKK 2")


def test_430a_rank_one_normal_form(build):
    spec = D.SPECS["430a"]
    X = build("[430]a")
    I = D.fiber(spec, X, (5, 0, 0, 0))
    assert betti_table(I) == named_table("SSY 4")
    tf = spec.target_format(X.ambient_ring, X.provenance, (5, 0, 0, 0))
    assert ideal_equal(Ideal(X.ambient_ring, D.ambient_fiber(spec, X, (5, 0, 0, 0))),
                       Ideal(X.ambient_ring, tf))


@pytest.mark.parametrize("name", ["562ai->550a", "310a->300a", "331ai->300a", "441a-ai->400a"])
def test_identities_hold(build, name):
    spec = D.SPECS[name]
    rep = D.verify_identities(spec, build(spec.source))
    assert rep.passed and rep.results
    assert rep.central_fiber is True


def test_identity_check_catches_a_mutation(build):
    spec = D.SPECS["562ai->550a"]
    X = build(spec.source)

    def mutated(S, P, t, g):
        out = spec.identities(S, P, t, g)
        first = out[0]
        return [dataclasses.replace(first, rhs=first.rhs + t * S.var(S.graded[0]))] + out[1:]

    bad = dataclasses.replace(spec, identities=mutated)
    rep = D.verify_identities(bad, X)
    assert not rep.passed
    assert not rep.results[0].holds and rep.results[0].residual


@pytest.mark.parametrize("name", ["420a->400a", "441b-aii->430a", "210ai->200"])
def test_displayed_relations_with_known_misprints_fail_as_written(build, name):
    spec = D.SPECS[name]
    rep = D.verify_identities(spec, build(spec.source))
    shown = [r for r in rep.results if r.displayed]
    assert any(not r.holds for r in shown)
    # the corrected relations recorded next to them do hold
    assert all(r.holds for r in rep.results if not r.displayed)


@pytest.mark.parametrize("name,k", [("551a->550a", 3), ("210ai->200", 2), ("331aii->310ai", 2)])
def test_flatness(build, name, k):
    spec = D.SPECS[name]
    rep = D.verify_flatness(spec, build(spec.source), k)
    assert len(rep.fibers) == k + 1
    assert rep.hilbert_constant and rep.verdict


def test_flatness_needs_a_sample(build):
    with pytest.raises(ValueError):
        D.verify_flatness(D.SPECS["551a->550a"], build("[551]a"), 0)


def test_total_family_specialises_to_each_fibre(build):
    spec = D.SPECS["420a->400a"]
    X = build(spec.source)
    gens = D.deformed_generators(spec, X)
    for t in (3, 11):
        I = Ideal(X.ambient_ring, D.ambient_fiber(spec, X, t))
        for g in gens.values():
            assert I.contains(g.substitute({"t": t}, X.ambient_ring))
        h = hilbert_data(I)
        assert (h.degree, h.dimension - 1) == (16, 1)


def test_symmetric_562ai_variant(build):
    spec = D.SPECS["562ai->550a/23"]
    assert spec.variant_of == "562ai->550a"
    rep = D.verify_flatness(spec, build(spec.source), 1)
    assert rep.verdict


def test_sample_points_reproducible(build):
    X = build("[430]a")
    spec = D.SPECS["430a"]
    a, b = D.sample_points(spec, X, 4), D.sample_points(spec, X, 4)
    assert a == b and len(set(a)) == 4
    p = X.ambient_ring.p
    assert all((u * z - v * w) % p for u, v, w, z in a)


def elliptic_sextic(seed=77):
    R = PolyRing([f"x{i}" for i in range(6)])
    rng = SplitMix64(seed)
    e = [[random_form(R, 1, rng) for _ in range(3)] for _ in range(3)]
    return Ideal(R, [e[i][j] * e[k][l] - e[i][l] * e[k][j]
                     for i in range(3) for k in range(i + 1, 3) for j in range(3) for l in range(j + 1, 3)])


def curve_invariants(I):
    h = hilbert_data(I)
    return h.dimension - 1, h.degree, h.genus


def test_bilinkage_of_200(build):
    r = D.bilink_check(build("[200]").ideal)
    assert curve_invariants(r["intermediate"]) == (1, 18, 19)
    assert curve_invariants(r["result"]) == (1, 6, 1)
    # same Hilbert polynomial as an independently built elliptic normal sextic
    assert hilbert_data(r["result"]).hilbert_polynomial == hilbert_data(elliptic_sextic()).hilbert_polynomial


def test_linking_a_complete_intersection_to_itself():
    R = PolyRing([f"x{i}" for i in range(6)])
    rng = SplitMix64(2)
    ci = Ideal(R, [random_form(R, d, rng) for d in (2, 2, 2, 2)])
    assert F.link(ci, ci).is_unit()


def test_incidence_graph():
    G = D.incidence_graph()
    assert G.is_acyclic()
    assert len(G.nodes) == 26
    sizes = {d: (len(G.subgraph(d).nodes), len(G.subgraph(d).edges)) for d in (15, 16, 17, 18)}
    assert sizes == {15: (7, 7), 16: (10, 12), 17: (6, 6), 18: (3, 1)}
    assert ("[430]a", "[420]a") in G.edges and ("[430]a", "[400]a") in G.edges
    dot = G.to_dot()
    assert dot.startswith("digraph") and '"[430]a" -> "[420]a"' in dot
    assert "style=dashed" in dot


def test_incidence_graph_colours_by_status():
    dot = D.incidence_graph({"551a->550a": True, "420a->400a": False}).to_dot()
    assert 'color="darkgreen"' in dot and 'color="red"' in dot
