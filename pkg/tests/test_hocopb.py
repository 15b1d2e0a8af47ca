import random

import pytest

from fibsite.errors import InputError
from fibsite.fibred import constant_presheaf_of_categories
from fibsite.fincat import cyclic_groupoid, opposite, poset_chain
from fibsite.hocopb import (
    GroupoidDiagram,
    OverNerve,
    anchor_from_last,
    check_triangles,
    counit_epsilon,
    enriched_counit,
    enriched_hocolim,
    enriched_pb,
    enriched_unit,
    hocolim,
    pb,
    presheaf_hocolim_pb,
    section_diagram,
    transpose_counit,
    unit_eta,
    validate_diagram,
    validate_enriched_diagram,
    validate_enriched_over_nerve,
    validate_over_nerve,
)
from fibsite.sampling import (
    constant_diagram,
    constant_enriched_diagram_from,
    orbit_diagram,
    random_diagram,
    random_enriched_diagram,
    random_enriched_over_nerve,
    random_groupoid,
    random_over_nerve,
    random_poset_site,
)
from fibsite.sset import (
    homology,
    identity_simplicial_map,
    nerve,
    standard_simplex,
    validate_simplicial_map,
    we_evidence,
)


def one_point_diagram(g, d):
    return constant_diagram(g, standard_simplex(0, d))


class TestHocolim:
    def test_trivial_group_returns_value(self, z2):
        triv = cyclic_groupoid(1)
        k = standard_simplex(1, 3)
        h = hocolim(constant_diagram(triv, k), 3)
        assert validate_over_nerve(h) == []
        assert homology(h.total, 2).factors == homology(k, 2).factors

    def test_one_point_on_z2_is_its_nerve(self, z2):
        h = hocolim(one_point_diagram(z2, 4), 4)
        assert homology(h.total, 3).factors == ((0,), (2,), (), (2,))
        # structure map is an isomorphism degreewise
        for n in range(5):
            assert len(h.total.simplices[n]) == len(
                h.structure.codomain.simplices[n]
            )

    def test_free_orbit_contractible(self, z2):
        orbit = orbit_diagram(z2, "*", standard_simplex(0, 4))
        assert validate_diagram(orbit) == []
        h = hocolim(orbit, 4)
        assert homology(h.total, 2).factors == ((0,), (), ())

    def test_truncation_guard(self, z2):
        with pytest.raises(InputError):
            hocolim(one_point_diagram(z2, 2), 4)


class TestPb:
    def test_identity_gives_slices(self, z2):
        nz = nerve(z2, 4)
        x = OverNerve(base=z2, total=nz, structure=identity_simplicial_map(nz))
        p = pb(x)
        assert validate_diagram(p) == []
        assert [len(p.value["*"].simplices[n]) for n in range(5)] == [
            2 * 2**n for n in range(5)
        ]
        # slice of a group: contractible
        assert homology(p.value["*"], 2).factors == ((0,), (), ())

    def test_trivial_group_pb_is_x(self):
        triv = cyclic_groupoid(1)
        rng = random.Random(3)
        x = random_over_nerve(rng, triv, 3)
        p = pb(x)
        for n in range(4):
            assert len(p.value["*"].simplices[n]) == len(x.total.simplices[n])

    def test_anchor_normalization(self, z2):
        nz = nerve(z2, 3)
        sigma = ("r1", "r1")
        # anchor at the last vertex rewrites to the first by inverting arrows
        assert anchor_from_last(z2, sigma, "id_*") == "id_*"
        assert anchor_from_last(z2, sigma, "r1") == "r1"
        sigma1 = ("r1",)
        assert anchor_from_last(z2, sigma1, "id_*") == "r1"


class TestUnitCounit:
    def test_eta_simplicial_and_evidence(self, z2):
        nz = nerve(z2, 4)
        x = OverNerve(base=z2, total=nz, structure=identity_simplicial_map(nz))
        eta = unit_eta(x)
        assert validate_simplicial_map(eta) == []
        assert we_evidence(eta, 3).passed

    def test_eta_commutes_with_structure(self, z2):
        rng = random.Random(5)
        x = random_over_nerve(rng, z2, 3)
        eta = unit_eta(x)
        h = hocolim(pb(x), 3)
        for n in range(4):
            for t in x.total.simplices[n]:
                assert h.structure.apply(n, eta.apply(n, t)) == x.structure.apply(n, t)

    def test_epsilon_simplicial_and_evidence(self, z2):
        eps = counit_epsilon(one_point_diagram(z2, 4))
        for y, m in eps.items():
            assert validate_simplicial_map(m) == []
            assert we_evidence(m, 2).passed

    def test_epsilon_on_free_orbit(self, z2):
        orbit = orbit_diagram(z2, "*", standard_simplex(0, 4))
        eps = counit_epsilon(orbit)
        for y, m in eps.items():
            ev = we_evidence(m, 3)
            assert ev.pi0_bijective and ev.passed

    def test_epsilon_natural_in_y(self, z3):
        a = one_point_diagram(z3, 3)
        eps = counit_epsilon(a)
        p = pb(hocolim(a, 3))
        for m, (s, t) in z3.morphisms.items():
            for n in range(4):
                for tok in p.value[s].simplices[n]:
                    lhs = a.action[m].apply(n, eps[s].apply(n, tok))
                    rhs = eps[t].apply(n, p.action[m].apply(n, tok))
                    assert lhs == rhs


class TestTriangles:
    def test_trivial_group(self):
        triv = cyclic_groupoid(1)
        rng = random.Random(1)
        a = random_diagram(rng, triv, 3)
        x = random_over_nerve(rng, triv, 3)
        assert check_triangles(a=a, x=x).passed

    def test_z2_nerve_over_itself_at_4(self, z2):
        nz = nerve(z2, 4)
        x = OverNerve(base=z2, total=nz, structure=identity_simplicial_map(nz))
        assert check_triangles(x=x).passed

    def test_random_instances(self):
        rng = random.Random(42)
        for _ in range(8):
            g = random_groupoid(rng)
            a = random_diagram(rng, g, 3)
            x = random_over_nerve(rng, g, 3)
            assert check_triangles(a=a, x=x).passed

    def test_transpose_left_inverse_to_eta(self, z2):
        rng = random.Random(9)
        x = random_over_nerve(rng, z2, 3)
        eta = unit_eta(x)
        c = transpose_counit(x)
        assert validate_simplicial_map(c) == []
        for n in range(4):
            for t in x.total.simplices[n]:
                assert c.apply(n, eta.apply(n, t)) == t


class TestFunctorialityEvidence:
    def test_hocolim_preserves_evidence_passes(self, z2):
        # a map of diagrams that is a sectionwise equivalence-evidence pass
        # induces an evidence pass on homotopy colimits: free orbit to point
        orbit = orbit_diagram(z2, "*", standard_simplex(0, 4))
        one = one_point_diagram(z2, 4)
        from fibsite.sset import SimplicialMap

        comps_by_y = {}
        h_orbit = hocolim(orbit, 4)
        h_one = hocolim(one, 4)
        comps = []
        for n in range(5):
            cm = {}
            for (sigma, x) in h_orbit.total.simplices[n]:
                cm[(sigma, x)] = (sigma, (0,) * (n + 1))
            comps.append(cm)
        induced = SimplicialMap(domain=h_orbit.total, codomain=h_one.total, components=tuple(comps))
        assert validate_simplicial_map(induced) == []
        # the free orbit is contractible-total, the point diagram gives the
        # nerve; the induced map cannot pass H1 evidence
        assert not we_evidence(induced, 3).passed

    def test_pb_of_evidence_pass(self, z2):
        # eta is an evidence pass; pb(eta) is a per-object evidence pass
        nz = nerve(z2, 4)
        x = OverNerve(base=z2, total=nz, structure=identity_simplicial_map(nz))
        eta = unit_eta(x)
        hx = hocolim(pb(x), 4)
        px = pb(x)
        phx = pb(hx)
        from fibsite.sset import SimplicialMap

        for y in z2.objects:
            comps = []
            for n in range(5):
                cm = {}
                for (t, gamma) in px.value[y].simplices[n]:
                    cm[(t, gamma)] = (eta.apply(n, t), gamma)
                comps.append(cm)
            induced = SimplicialMap(
                domain=px.value[y], codomain=phx.value[y], components=tuple(comps)
            )
            assert validate_simplicial_map(induced) == []
            assert we_evidence(induced, 3).passed


class TestEnriched:
    def test_constant_enriched_run(self, chain2, z2):
        g = constant_presheaf_of_categories(chain2, z2)
        diag = one_point_diagram(opposite(z2), 3)
        X = constant_enriched_diagram_from(g, diag)
        assert validate_enriched_diagram(X) == []
        run = presheaf_hocolim_pb(X, 3)
        assert run.triangles.passed
        assert run.counit_natural
        assert validate_enriched_over_nerve(run.hocolim_object) == []
        assert validate_enriched_diagram(run.pb_object) == []
        for u in chain2.objects:
            h = homology(run.hocolim_object.sections[u].total, 2)
            assert h.factors == ((0,), (2,), ())

    def test_enriched_over_nerve_run(self, chain2):
        rng = random.Random(7)
        Y = random_enriched_over_nerve(rng, chain2, 3)
        assert validate_enriched_over_nerve(Y) == []
        run = presheaf_hocolim_pb(Y, 3)
        assert run.triangles.passed
        assert run.unit_natural

    def test_random_enriched_diagrams(self):
        rng = random.Random(17)
        for _ in range(4):
            site = random_poset_site(rng, 2)
            X = random_enriched_diagram(rng, site, 3)
            run = presheaf_hocolim_pb(X, 3)
            assert run.triangles.passed and run.counit_natural

    def test_sectionwise_evidence(self, chain2, z2):
        g = constant_presheaf_of_categories(chain2, z2)
        diag = one_point_diagram(opposite(z2), 4)
        X = constant_enriched_diagram_from(g, diag)
        run = presheaf_hocolim_pb(X, 4)
        eps = enriched_counit(X, 4)
        for (u, ob), m in eps.items():
            assert we_evidence(m, 2).passed
        eta = enriched_unit(run.hocolim_object)
        for u, m in eta.items():
            assert we_evidence(m, 2).passed
