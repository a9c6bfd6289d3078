#!/usr/bin/env python3
"""
Tests for quivers, finite categories, the category of pairs and the Nori diagram.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from freydlab.diagram import (
    Decoration,
    FinCat,
    Path,
    Quiver,
    enumerate_cubes,
    enumerate_triples,
    fincat_from_decoration,
    find_triple,
    nori_diagram,
    pairs_category,
    path_category,
)
from freydlab.errors import EmptyWindow, InvalidCategory, NonFinite, NotSubcategory, OutOfWindow


def loop_quiver():
    return Quiver(["v"], [("e", "v", "v")])


class TestPathCategory:
    """Tests for free path categories."""

    def test_point_quiver(self):
        """Test that a bare vertex gives the one point category."""
        cat = path_category(Quiver(["*"]))
        assert cat.hom("*", "*") == (Path("*", "*", ()),)
        assert cat.is_finite

    def test_loop_powers(self):
        """Test that the loop quiver has the homs e^0, e^1, e^2, ..."""
        cat = path_category(loop_quiver())
        paths = cat.hom("v", "v", max_length=3)
        assert [len(p) for p in paths] == [0, 1, 2, 3]
        assert str(paths[2]) == "e.e"
        assert not cat.is_finite

    def test_cyclic_hom_needs_bound(self):
        """Test that an unbounded hom of a cyclic quiver is refused."""
        with pytest.raises(ValueError):
            path_category(loop_quiver()).hom("v", "v")

    def test_single_arrow(self):
        """Test the two-vertex one-edge quiver has three morphisms."""
        cat = path_category(Quiver(["0", "1"], [("a", "0", "1")]))
        total = sum(len(cat.hom(x, y)) for x in cat.objects for y in cat.objects)
        assert total == 3

    def test_composition_is_concatenation(self):
        """Test g∘f concatenates f then g."""
        q = Quiver(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")])
        cat = path_category(q)
        gf = cat.compose(q.path("1", ["b"]), q.path("0", ["a"]))
        assert gf.edges == ("a", "b")


class TestFinCat:
    """Tests for finite categories and decorated quotients."""

    def test_loop_with_identity_relation(self):
        """Test e = id collapses the loop to the point category."""
        q = loop_quiver()
        dec = Decoration(((q.path("v", ["e"]), q.path("v", [])),))
        cat = fincat_from_decoration(q, dec)
        assert cat.morphisms == ("id_v",)
        assert cat.edge_morphism("e") == "id_v"

    def test_ordinal_two_from_quiver(self):
        """Test the ordinal 2 drawn as a quiver has three morphisms."""
        cat = fincat_from_decoration(Quiver(["0", "1"], [("a", "0", "1")]))
        assert len(cat) == 3
        assert cat.hom("0", "1") == ("a",)

    def test_idempotent_loop(self):
        """Test e² = e gives a two element monoid."""
        q = loop_quiver()
        dec = Decoration(((q.path("v", ["e", "e"]), q.path("v", ["e"])),))
        cat = fincat_from_decoration(q, dec)
        assert cat.morphisms == ("id_v", "e")
        assert cat.compose("e", "e") == "e"

    def test_free_loop_is_not_finite(self):
        """Test the rewrite bound reports the growing paths."""
        with pytest.raises(NonFinite) as info:
            fincat_from_decoration(loop_quiver(), bound=10)
        assert info.value.growing
        assert info.value.growing[0].startswith("e.e")

    def test_cyclic_group_from_relation(self):
        """Test e³ = id closes into a three element group."""
        q = loop_quiver()
        dec = Decoration(((q.path("v", ["e", "e", "e"]), q.path("v", [])),))
        cat = fincat_from_decoration(q, dec)
        assert cat.morphisms == ("id_v", "e", "e.e")
        assert cat.compose("e.e", "e") == "id_v"
        assert cat.inverse("e") == "e.e"

    def test_non_parallel_relation_rejected(self):
        """Test relations must be between parallel paths."""
        q = Quiver(["0", "1"], [("a", "0", "1")])
        with pytest.raises(ValueError):
            Decoration(((q.path("0", ["a"]), q.path("0", [])),))

    def test_ordinal_queries(self):
        """Test initial, final and monomorphism queries on the 3-chain."""
        cat = FinCat.ordinal(3)
        assert cat.initial_objects() == ["0"]
        assert cat.final_objects() == ["2"]
        assert cat.strictly_initial_objects() == ["0"]
        assert len(cat.monomorphisms()) == 6

    def test_invalid_table_rejected(self):
        """Test a table breaking the unit law is refused."""
        with pytest.raises(InvalidCategory):
            FinCat.from_monoid(["1", "a"], {"1": {"1": "1", "a": "a"}, "a": {"1": "1", "a": "a"}}, "1")

    def test_cyclic_group(self):
        """Test the cyclic group constructor."""
        c2 = FinCat.cyclic_group(2)
        assert c2.morphisms == ("1", "g")
        assert c2.compose("g", "g") == "1"
        assert c2.is_iso("g")

    def test_dual_involution(self):
        """Test dual reverses arrows and is involutive."""
        two = FinCat.ordinal(2)
        op = two.dual()
        assert op.source("0->1") == "1"
        assert op.target("0->1") == "0"
        assert op.dual() == two
        q = loop_quiver()
        assert q.dual() == q
        assert q.dual().dual() == q

    def test_graded_copies(self):
        """Test the product with a degree window."""
        graded = FinCat.ordinal(2).graded((0, 1))
        assert graded.objects == ("0@0", "1@0", "0@1", "1@1")
        assert graded.hom("0@1", "1@1") == ("0->1@1",)
        assert graded.hom("0@0", "1@1") == ()

    def test_poset_closure(self):
        """Test a poset contains the transitive closure of its covers."""
        P = FinCat.poset(["0", "a", "s"], [("0", "a"), ("a", "s")])
        assert P.hom("0", "s") == ("0->s",)
        assert P.compose("a->s", "0->a") == "0->s"
        assert P.initial_objects() == ["0"]
        assert P.final_objects() == ["s"]

    def test_poset_rejects_cycles(self):
        """Test covers with a cycle are rejected."""
        with pytest.raises(InvalidCategory):
            FinCat.poset(["a", "b"], [("a", "b"), ("b", "a")])
        with pytest.raises(InvalidCategory):
            FinCat.poset(["a"], [("a", "z")])


class TestPairs:
    """Tests for the category of pairs and its triples."""

    def test_two_all_distinguished(self):
        """Test 2 with every arrow distinguished has pairs (1,0), (0,0), (1,1)."""
        pairs = pairs_category(FinCat.ordinal(2))
        assert sorted(p.label for p in pairs.pairs) == ["(0,0)", "(1,0)", "(1,1)"]
        non_identity = [pm for pm in pairs.morphisms if not pairs.is_identity(pm.name)]
        assert sorted(pm.name for pm in non_identity) == ["(0->1,0->1)", "(0->1,id_0)", "(id_1,0->1)"]

    def test_point(self):
        """Test the point category has one pair."""
        assert len(pairs_category(FinCat.point()).pairs) == 1

    def test_three_chain_monos(self):
        """Test the 3-chain with monos distinguished has six pairs."""
        assert len(pairs_category(FinCat.ordinal(3), "monos").pairs) == 6

    def test_not_closed(self):
        """Test a distinguished set missing a composite is rejected."""
        with pytest.raises(NotSubcategory) as info:
            pairs_category(FinCat.ordinal(3), ["id_0", "id_1", "id_2", "0->1", "1->2"])
        assert info.value.missing == ["0->2"]

    def test_square_count_matches_brute_force(self):
        """Test every commuting square is a morphism of pairs."""
        base = FinCat.ordinal(3)
        pairs = pairs_category(base)
        expected = 0
        for f in base.morphisms:
            for g in base.morphisms:
                for h in base.hom(base.target(f), base.target(g)):
                    for k in base.hom(base.source(f), base.source(g)):
                        if base.compose(h, f) == base.compose(g, k):
                            expected += 1
        assert len(pairs.morphisms) == expected

    def test_triples_of_two(self):
        """Test 2 has two triples not given by identities only."""
        pairs = pairs_category(FinCat.ordinal(2))
        triples = enumerate_triples(pairs)
        assert len(triples) == 4
        mixed = [t for t in triples if not (t.f.startswith("id") and t.g.startswith("id"))]
        assert sorted(t.name for t in mixed) == ["<0->1,id_1>", "<id_0,0->1>"]

    def test_triple_structure(self):
        """Test α and β of a triple run lower → middle → upper."""
        pairs = pairs_category(FinCat.ordinal(3))
        t = find_triple(enumerate_triples(pairs), "0->1", "1->2")
        assert t is not None
        assert t.gf == "0->2"
        alpha, beta = pairs.morphism(t.alpha), pairs.morphism(t.beta)
        assert (alpha.source, alpha.target) == ("0->1", "0->2")
        assert (beta.source, beta.target) == ("0->2", "1->2")
        assert pairs.morphism(t.beta_alpha).h == "1->2"
        assert pairs.morphism(t.beta_alpha).k == "0->1"

    def test_point_triple(self):
        """Test the point has only the identity triple."""
        pairs = pairs_category(FinCat.point())
        assert [t.name for t in enumerate_triples(pairs)] == ["<id_*,id_*>"]

    def test_cubes_commute(self):
        """Test every enumerated cube satisfies the square condition."""
        pairs = pairs_category(FinCat.ordinal(2))
        triples = {t.name: t for t in enumerate_triples(pairs)}
        cubes = enumerate_cubes(pairs, list(triples.values()))
        assert cubes
        for cube in cubes:
            t, u = triples[cube.source], triples[cube.target]
            assert pairs.compose(cube.delta, t.beta_alpha) == pairs.compose(u.beta_alpha, cube.gamma)


class TestNoriDiagram:
    """Tests for the Nori diagram over a window."""

    def test_single_degree(self):
        """Test a one-degree window has only γ-edges."""
        nori = nori_diagram(pairs_category(FinCat.ordinal(2)), (0, 0))
        assert len(nori.vertices) == 3
        assert all(e.label.startswith("γ") for e in nori.quiver.edges)
        assert len(nori.quiver.edges) == 3

    def test_three_degrees(self):
        """Test window [-1, 1] on 2 gives nine vertices and ∂-edges at degrees 1 and 0."""
        nori = nori_diagram(pairs_category(FinCat.ordinal(2)), (-1, 1))
        assert len(nori.vertices) == 9
        boundaries = [e for e in nori.quiver.edges if e.label.startswith("∂")]
        assert len(boundaries) == 8
        for e in boundaries:
            assert int(e.source.rsplit("@", 1)[1]) - 1 == int(e.target.rsplit("@", 1)[1])

    def test_point_window(self):
        """Test the point gives one vertex per degree and identity-triple boundaries."""
        nori = nori_diagram(pairs_category(FinCat.point()), (-1, 1))
        assert nori.vertices == ["id_*@-1", "id_*@0", "id_*@1"]
        assert [e.label for e in nori.quiver.edges] == ["∂<id_*,id_*>@0", "∂<id_*,id_*>@1"]

    def test_empty_window(self):
        """Test a reversed window is rejected."""
        with pytest.raises(EmptyWindow):
            nori_diagram(pairs_category(FinCat.point()), (1, 0))

    def test_naturality_identifies_boundary_paths(self):
        """Test the cube relation leaves one morphism (1,0)@1 → (1,0)@0."""
        nori = nori_diagram(pairs_category(FinCat.ordinal(2)), (0, 1))
        cat = nori.category()
        assert len(cat.hom("0->1@1", "0->1@0")) == 1
        assert len(cat.hom("id_1@1", "0->1@0")) == 1

    def test_gamma_and_boundary_lookup(self):
        """Test morphism lookup by square and by triple."""
        nori = nori_diagram(pairs_category(FinCat.ordinal(2)), (0, 1))
        cat = nori.category()
        m = nori.gamma_morphism("(0->1,id_0)", 1)
        assert (cat.source(m), cat.target(m)) == ("id_0@1", "0->1@1")
        assert cat.is_identity(nori.gamma_morphism("id(1,0)", 0))
        d = nori.boundary_morphism("<0->1,id_1>", 1)
        assert (cat.source(d), cat.target(d)) == ("id_1@1", "0->1@0")
        with pytest.raises(OutOfWindow):
            nori.boundary_morphism("<0->1,id_1>", 0)
