#!/usr/bin/env python3
"""
Tests for the universal homology categories, relative homology data and their quotients.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from freydlab.coeff import FPModule, Mat, ModuleMap, Ring
from freydlab.config import Bounds
from freydlab.diagram import FinCat, nori_diagram, pairs_category
from freydlab.errors import (
    AxiomFailure,
    CertificateError,
    NoFinalObject,
    NoInitial,
    NotACoproduct,
    OutOfWindow,
    RelationViolation,
    ShapeMismatch,
)
from freydlab.freyd import universal_object
from freydlab.homology import (
    CoproductRow,
    GradedObject,
    RelHomologyData,
    additive_quotient,
    almost_trivial,
    check_axioms,
    coproduct_row,
    graded_additive_quotient,
    k_projection,
    monoid_universal,
    pair_sequence,
    point_quotient,
    purity_certificate,
    realize_homology,
    restricted_homology,
    universal_cohomology,
    universal_from,
    universal_homology,
    universal_relative,
    verify_coproduct,
)
from freydlab.quotient import NO, UNKNOWN, realize, verify_certificate

Z = Ring.integers()
R = FPModule.free(Z, 1)


def scalar(c):
    return ModuleMap(R, R, Mat(Z, 1, 1, [[c]]))


def diamond():
    """0 < a, b < s with s = a ∐ b."""
    return FinCat.poset(["0", "a", "b", "s"], [("0", "a"), ("0", "b"), ("a", "s"), ("b", "s")])


def groupoid():
    """Two objects joined by inverse isomorphisms m and n."""
    arrows = {"id_x": ("x", "x"), "id_y": ("y", "y"), "m": ("x", "y"), "n": ("y", "x")}
    table = {
        ("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
        ("m", "id_x"): "m", ("id_y", "m"): "m", ("n", "id_y"): "n", ("id_x", "n"): "n",
        ("n", "m"): "id_x", ("m", "n"): "id_y",
    }
    return FinCat(["x", "y"], arrows, {"x": "id_x", "y": "id_y"}, table, name="iso")


@pytest.fixture(scope="module")
def two():
    return universal_relative(FinCat.ordinal(2), "all", Z, (0, 1))


@pytest.fixture(scope="module")
def chain3():
    return pairs_category(FinCat.ordinal(3), "all")


class TestGradedUniversal:
    """Tests for A(C) as a graded free abelian category."""

    def test_point_components(self):
        """Test H_i(*) is |R| in degree i and different degrees are orthogonal."""
        G = universal_homology(FinCat.point(), Z, (-1, 1))
        H0, H1 = G.H("*", 0), G.H("*", 1)
        assert H0.degree == 0 and H1.degree == 1
        assert G.hom(H0, H0).describe() == "Z"
        assert G.hom(H0, H1).describe() == "0"
        assert G.hom(H0, H1).is_zero()

    def test_arrow_gives_one_generator(self):
        """Test Hom(H_0(0), H_0(1)) ≅ R over the arrow 0 → 1."""
        G = universal_homology(FinCat.ordinal(2), Z, (0, 0))
        assert G.hom(G.H("0", 0), G.H("1", 0)).describe() == "Z"
        assert G.hom(G.H("1", 0), G.H("0", 0)).describe() == "0"

    def test_out_of_window(self):
        """Test degrees outside the window are rejected."""
        G = universal_homology(FinCat.point(), Z, (0, 1))
        with pytest.raises(OutOfWindow):
            G.H("*", 2)

    def test_realization_factors(self):
        """Test r_K(H) agrees with K on objects and morphisms."""
        G = universal_homology(FinCat.ordinal(2), Z, (0, 1))
        F = G.realize({0: {"0": R, "1": R}}, {0: {"0->1": scalar(2)}}, name="K")
        assert F.agrees()
        assert F.obj(G.H("1", 0)).summary().describe() == "Z"
        assert F.obj(G.H("0", 1)).is_zero()
        assert F.mor(G.H_morphism("0->1", 0)).equals(scalar(2))

    def test_degreewise_structure(self):
        """Test kernels stay in their degree and mixed sums are rejected."""
        G = universal_homology(FinCat.ordinal(2), Z, (0, 1))
        f = G.H_morphism("0->1", 1)
        K, k = G.kernel(f)
        assert K.degree == 1 and k.dst == f.src
        with pytest.raises(ShapeMismatch):
            G.direct_sum([G.H("0", 0), G.H("0", 1)])


class TestPointQuotient:
    """Tests for the quotient imposing the point axiom."""

    def test_point_category(self):
        """Test A^point(1) kills every nonzero degree and keeps End(H_0) ≅ R."""
        G = universal_homology(FinCat.point(), Z, (-1, 1))
        Q = point_quotient(G, ["*"])
        answer = Q.is_zero(G.H("*", 1))
        assert answer.yes
        assert answer.certificate.kind == "gen"
        assert Q.is_zero(G.H("*", -1)).yes
        assert not Q.is_zero(G.H("*", 0)).yes
        assert Q.hom(G.H("*", 0), G.H("*", 0)).describe() == "Z"

    def test_needs_a_point(self):
        """Test an empty point set is rejected."""
        G = universal_homology(FinCat.point(), Z, (0, 0))
        with pytest.raises(ValueError):
            point_quotient(G, [])

    def test_non_point_objects_stay_open(self):
        """Test H_1(0) is neither certified nor refuted until a separator is registered."""
        G = universal_homology(FinCat.ordinal(2), Z, (0, 1))
        Q = point_quotient(G, ["1"], bounds=Bounds(cert=1))
        assert Q.is_zero(G.H("1", 1)).yes
        assert Q.is_zero(G.H("0", 1)).status == UNKNOWN

        zero = FPModule.zero(Z)
        F = realize(G.component, {"0": R, "1": zero}, morphisms={"0->1": R.zero_map(zero)}, name="M")
        Q.at(1).register_realization(F)
        answer = Q.is_zero(G.H("0", 1))
        assert answer.status == NO
        assert answer.evidence["separator"] == "M"


class TestKProjection:
    """Tests for π_k and its section ι_k."""

    def test_graded_projection(self):
        """Test π_0 identifies H_0(0) with |R| along 0 → 1 and kills other degrees."""
        G = universal_homology(FinCat.ordinal(2), Z, (0, 1))
        P = k_projection(G, 0)
        assert P.check_section()
        image = P.project(G.H("0", 0))
        assert P.point.iso_search(universal_object(P.point), image) is not None
        assert P.point.is_iso(P.project(G.H_morphism("0->1", 0)))
        assert P.is_zero(G.H("0", 1)).yes
        assert P.is_zero(G.H("1", 0)).no

    def test_graded_projection_over_f2(self):
        """Test π_0 over F_2 lands in F_2-vector spaces, where twice a map vanishes."""
        F2 = Ring.prime_field(2)
        G = universal_homology(FinCat.ordinal(2), F2, (0, 1))
        P = k_projection(G, 0)
        assert P.check_section()
        assert P.point.ring == F2
        image = P.project(G.H("0", 0))
        assert P.point.iso_search(universal_object(P.point), image) is not None
        f = P.project(G.H_morphism("0->1", 0))
        assert P.point.is_iso(f)
        assert P.point.is_zero_morphism(P.point.scale(f, 2))
        assert not P.point.is_zero_morphism(P.point.scale(f, 3))
        assert P.is_zero(G.H("0", 1)).yes
        assert P.is_zero(G.H("1", 0)).no

    def test_relative_projection_over_f2(self):
        """Test π_0 on A_∂(2) over F_2 keeps H_0(1,0) and kills H_0(1,1)."""
        RU = universal_relative(FinCat.ordinal(2), "all", Ring.prime_field(2), (0, 1))
        P = k_projection(RU, 0)
        assert P.check_section()
        assert P.quotient.is_zero(RU.H("0->1", 0)).no
        assert P.quotient.is_zero(RU.H("0->1", 1)).yes
        assert P.quotient.is_zero(RU.H("id_1", 0)).yes

    def test_needs_final_object(self):
        """Test a base without final object is rejected."""
        G = universal_homology(FinCat.discrete(["a", "b"]), Z, (0, 0))
        with pytest.raises(NoFinalObject):
            k_projection(G, 0)

    def test_relative_projection(self, two):
        """Test π_0 on A_∂(2) keeps H_0(1,0) and kills H_1(1,0) and H_0(1,1)."""
        P = k_projection(two, 0)
        assert P.check_section()
        assert P.quotient.is_zero(two.H("0->1", 0)).no
        assert P.quotient.is_zero(two.H("0->1", 1)).yes
        assert P.quotient.is_zero(two.H("id_1", 0)).yes


class TestCoproducts:
    """Tests for coproduct tables and the additivity quotients."""

    def test_row_lookup(self):
        """Test injections are found when unique."""
        C = FinCat.poset(["a", "b", "s"], [("a", "s"), ("b", "s")])
        row = coproduct_row(C, "s", ["a", "b"])
        assert row.injections == ("a->s", "b->s")

    def test_initial_object_is_the_empty_coproduct(self):
        """Test an empty row holds exactly for initial objects."""
        C = diamond()
        verify_coproduct(C, CoproductRow("0"))
        with pytest.raises(NotACoproduct):
            verify_coproduct(C, CoproductRow("a"))

    def test_not_a_coproduct(self):
        """Test a row failing the universal property is rejected."""
        C = diamond()
        with pytest.raises(NotACoproduct):
            verify_coproduct(C, CoproductRow("a", ("0",), ("0->a",)))
        with pytest.raises(NotACoproduct):
            coproduct_row(C, "a", ["b"])

    def test_graded_cokernel_generator(self):
        """Test the cokernel of H(a) ⊕ H(b) → H(s) becomes zero."""
        C = FinCat.poset(["a", "b", "s"], [("a", "s"), ("b", "s")])
        G = universal_homology(C, Z, (0, 0))
        Q = graded_additive_quotient(G, [coproduct_row(C, "s", ["a", "b"])])
        gens = Q.at(0).gens
        assert gens.names() == ["ker a+b->s@0", "coker a+b->s@0"]
        coker = gens[1].obj
        assert not G.component.is_zero(coker)
        assert Q.is_zero(GradedObject(coker, 0)).yes

    def test_relative_additivity(self):
        """Test the almost-trivial homology is not additive but the zero homology is."""
        RU = universal_relative(diamond(), "all", Z, (0, 0))
        Q = additive_quotient(RU, [coproduct_row(RU.pairs.base, "s", ["a", "b"])])
        assert "ker a+b->s@0" in Q.gens.names()

        K = RelHomologyData.almost_trivial(RU.nori, Z, 0)
        assert check_axioms(K).ok
        with pytest.raises(CertificateError):
            Q.register_realization(realize_homology(RU, K))
        Q.register_realization(realize_homology(RU, RelHomologyData(RU.nori, Z)))


class TestRelativeUniversal:
    """Tests for A_∂(C) and its generators."""

    def test_generator_families(self, two):
        """Test every generator family is present."""
        kinds = {g.kind for g in two.gens}
        assert kinds == {"functoriality", "naturality", "chain", "exactness"}
        assert "chain βα <0->1,id_1>@0" in two.gens.names()
        assert "exactness <0->1,id_1> middle@1" in two.gens.names()
        assert all(g.trivially_zero for g in two.generators_of("functoriality"))

    def test_identity_triple_generator(self, two):
        """Test the identity triple's chain generator is H_i(X,X) itself."""
        assert two.generator("chain βα <id_1,id_1>@0").obj == two.H("id_1", 0)
        assert two.generator("chain βα <id_0,id_0>@1").obj == two.H("(0,0)", 1)

    def test_point_is_pure(self):
        """Test every H_i(*,*) is certified zero."""
        RU = universal_relative(FinCat.point(), "all", Z, (-1, 1))
        for i in (-1, 0, 1):
            answer = RU.quotient.is_zero(RU.H("id_*", i))
            assert answer.yes
            assert answer.certificate.kind == "gen"

    def test_purity_certificates(self, two):
        """Test purity certificates verify for both identity pairs in both degrees."""
        gens = two.gens.objects()
        for pair in ("id_0", "id_1"):
            for i in (0, 1):
                cert = purity_certificate(two, pair, i)
                assert cert.kind == "gen"
                assert verify_certificate(two.base, cert, gens)
        with pytest.raises(OutOfWindow):
            purity_certificate(two, "id_1", 2)
        with pytest.raises(ValueError):
            purity_certificate(two, "0->1", 0)

    def test_purity_on_the_three_chain(self):
        """Test every H_i(X,X) of 0 → 1 → 2 is certified zero in degrees -2 to 2."""
        RU = universal_relative(FinCat.ordinal(3), "all", Z, (-2, 2))
        gens = RU.gens.objects()
        for x in ("0", "1", "2"):
            for i in range(-2, 3):
                cert = purity_certificate(RU, f"id_{x}", i)
                assert cert.obj == RU.H(f"id_{x}", i)
                assert verify_certificate(RU.base, cert, gens)

    def test_purity_along_an_isomorphism(self):
        """Test H_0 of a pair along an isomorphism is certified through an iso node."""
        RU = universal_relative(groupoid(), "all", Z, (0, 0))
        cert = purity_certificate(RU, "m", 0)
        assert cert.kind == "iso"
        assert cert.children[0].kind == "gen"
        assert verify_certificate(RU.base, cert, RU.gens.objects())

    def test_cohomology_matches_homology(self, two):
        """Test the dual of H_0(1,0) has the same endomorphisms."""
        RC = universal_cohomology(two)
        X = two.H("0->1", 0)
        assert RC.category.hom(RC.H("0->1", 0), RC.H("0->1", 0)).describe() == two.base.hom(X, X).describe()
        square = two.pairs.square("id_0", "0->1", "0->1", "id_0")
        assert RC.gamma(square, 0).src == RC.H("0->1", 0)


class TestRestrictedHomology:
    """Tests for H_i(X) ↦ H_i(X, 0)."""

    def test_restriction(self, two):
        """Test r_∂(H_0(1)) = H_0(1,0) and r_∂(H_i(0)) is certified zero."""
        r = restricted_homology(two)
        assert r.obj("1", 0) == two.H("(1,0)", 0)
        for i in (0, 1):
            assert verify_certificate(two.base, r.zero_certificate(i), two.gens.objects())

    def test_pair_sequence_of_an_initial_pair(self, two):
        """Test the pair sequence of 0 → 1 relative to 0 has β an isomorphism."""
        low = pair_sequence(two, "0->1", 0)
        assert low.boundary is None
        assert two.base.is_iso(low.beta)
        high = pair_sequence(two, "0->1", 1)
        assert high.boundary is not None

    def test_needs_initial_object(self):
        """Test a base without strictly initial object is rejected."""
        RU = universal_relative(FinCat.discrete(["a", "b"]), "all", Z, (0, 0))
        with pytest.raises(NoInitial):
            restricted_homology(RU)


def _gamma(square, c):
    return lambda K: K.with_gamma(square, 0, [[c]])


def _torsion_source(c):
    return lambda K: K.with_value("0->1", 0, FPModule.cyclic(Z, 2)).with_gamma("(1->2,id_0)", 0, [[c]])


# (name, corruption of almost-trivial data on the 3-chain, axiom it breaks, whether that axiom is the only one)
MUTATIONS = [
    *[(f"(1->2,id_0) acts by {c}", _gamma("(1->2,id_0)", c), "exactness", True) for c in (0, 2, 3, 4, 5, 6, -2, -3)],
    ("id(1,0) acts by 0", _gamma("id(1,0)", 0), "identity", False),
    ("id(1,0) acts by 3", _gamma("id(1,0)", 3), "identity", False),
    ("id(2,0) acts by 0", _gamma("id(2,0)", 0), "identity", False),
    ("id(2,0) acts by 2", _gamma("id(2,0)", 2), "identity", False),
    ("H_0(1,0) widened to R^2", lambda K: K.with_value("0->1", 0, FPModule.free(Z, 2)), "shape", True),
    ("H_0(2,0) widened to R^2", lambda K: K.with_value("0->2", 0, FPModule.free(Z, 2)), "shape", True),
    ("H_0(1,0) replaced by R/2", lambda K: K.with_value("0->1", 0, FPModule.cyclic(Z, 2)), "shape", True),
    ("R/2 sent to R by 1", _torsion_source(1), "well_defined", True),
    ("R/2 sent to R by 3", _torsion_source(3), "well_defined", True),
    ("H_0(0,0) = R", lambda K: K.with_value("id_0", 0, R), "chain", False),
    ("H_0(1,1) = R", lambda K: K.with_value("id_1", 0, R), "chain", False),
    ("H_0(2,2) = R", lambda K: K.with_value("id_2", 0, R), "chain", False),
]


class TestAxioms:
    """Tests for the relative homology axioms."""

    def test_almost_trivial_passes(self, chain3):
        """Test the almost-trivial homology on the 3-chain is a relative homology."""
        K = almost_trivial(chain3, Z, (-1, 1), 0)
        report = check_axioms(K)
        assert report.ok
        assert report.checked["exactness"] > 0

    @pytest.mark.parametrize("name, mutate, axiom, only", MUTATIONS, ids=[m[0] for m in MUTATIONS])
    def test_mutations_name_their_axiom(self, chain3, name, mutate, axiom, only):
        """Test each corruption of almost-trivial data is rejected with the axiom it breaks."""
        conditions = check_axioms(mutate(almost_trivial(chain3, Z, (-1, 1), 0))).conditions()
        assert axiom in conditions
        if only:
            assert conditions == {axiom}

    def test_mutation_table_size(self):
        """Test the corruption table covers twenty cases."""
        assert len(MUTATIONS) == 20
        assert len({m[0] for m in MUTATIONS}) == 20

    @pytest.mark.parametrize("c", [0, 2, 3, -2])
    def test_corrupted_map_breaks_exactness(self, chain3, c):
        """Test changing H_0(1,0) → H_0(2,0) breaks exactness only."""
        K = almost_trivial(chain3, Z, (-1, 1), 0).with_gamma("(1->2,id_0)", 0, [[c]])
        report = check_axioms(K)
        assert report.conditions() == {"exactness"}
        assert any(v.get("triple") == "<0->1,1->2>" for v in report.violations)

    @pytest.mark.parametrize("c", [0, 3])
    def test_identity_must_act_as_identity(self, chain3, c):
        """Test a non-identity value on an identity square is reported."""
        K = almost_trivial(chain3, Z, (-1, 1), 0).with_gamma("id(1,0)", 0, [[c]])
        assert "identity" in check_axioms(K).conditions()

    def test_cone_passes(self, chain3):
        """Test the cone with ∂: H_1(2,1) ≅ H_0(1,0) is a relative homology."""
        nori = nori_diagram(chain3, (0, 1))
        K = (RelHomologyData(nori, Z)
             .with_value("0->1", 0, R)
             .with_value("1->2", 1, R)
             .with_boundary("<0->1,1->2>", 1, [[1]]))
        assert check_axioms(K).ok

    @pytest.mark.parametrize("c", [0, 2, 3, -2, 5])
    def test_corrupted_boundary(self, chain3, c):
        """Test a boundary that is not an isomorphism breaks exactness and names the triple."""
        nori = nori_diagram(chain3, (0, 1))
        K = (RelHomologyData(nori, Z)
             .with_value("0->1", 0, R)
             .with_value("1->2", 1, R)
             .with_boundary("<0->1,1->2>", 1, [[c]]))
        report = check_axioms(K)
        assert report.conditions() == {"exactness"}
        assert {v["triple"] for v in report.violations} == {"<0->1,1->2>"}

    def test_impure_data_fails(self):
        """Test H_0(1,1) ≠ 0 contradicts the axioms."""
        pairs = pairs_category(FinCat.ordinal(2), "all")
        K = almost_trivial(pairs, Z, (0, 0), 0).with_value("id_1", 0, R)
        conditions = check_axioms(K).conditions()
        assert {"chain", "exactness"} <= conditions

    def test_report_is_serializable(self, chain3):
        """Test the report carries its violations and counters."""
        K = almost_trivial(chain3, Z, (-1, 1), 0).with_gamma("(1->2,id_0)", 0, [[2]])
        data = check_axioms(K).to_dict()
        assert data["ok"] is False
        assert data["violations"][0]["condition"] == "exactness"


class TestUniversalFromData:
    """Tests for A(K) in realization mode."""

    @pytest.fixture(scope="class")
    def almost(self):
        pairs = pairs_category(FinCat.ordinal(2), "all")
        return universal_from(almost_trivial(pairs, Z, (0, 0), 0))

    def test_endomorphisms_of_the_generator(self, almost):
        """Test End(H_0(1,0)) ≅ Z in A(K), reached at stage 0."""
        X = almost.H("0->1", 0)
        hom = almost.hom(X, X)
        assert hom.describe() == "Z"
        assert hom.stage == 0

    def test_pure_objects_vanish(self, almost):
        """Test H_0(1,1) and H_0(0,0) are zero in A(K)."""
        assert almost.is_zero(almost.H("id_1", 0)).yes
        assert almost.is_zero(almost.H("id_0", 0)).yes
        assert almost.is_zero(almost.H("0->1", 0)).no

    def test_comparison(self, almost):
        """Test F_K(H) is K on every vertex and edge."""
        assert almost.comparison_holds()

    def test_zero_homology(self):
        """Test A(0) is trivial."""
        nori = nori_diagram(pairs_category(FinCat.ordinal(2), "all"), (0, 1))
        A = universal_from(RelHomologyData(nori, Z))
        for p in ("id_0", "0->1", "id_1"):
            for i in (0, 1):
                assert A.is_zero(A.H(p, i)).yes

    def test_axiom_failure(self):
        """Test data violating the axioms is refused."""
        pairs = pairs_category(FinCat.ordinal(2), "all")
        K = almost_trivial(pairs, Z, (0, 0), 0).with_gamma("id(1,0)", 0, [[3]])
        with pytest.raises(AxiomFailure) as info:
            universal_from(K)
        assert any(v["condition"] == "identity" for v in info.value.violations)


class TestMonoid:
    """Tests for universal representations of finite monoids."""

    def test_trivial_monoid(self):
        """Test the trivial monoid gives End(H) ≅ R."""
        N = FinCat.from_monoid(["e"], {"e": {"e": "e"}}, "e")
        U = monoid_universal(N, Z)
        assert U.endomorphisms().describe() == "Z"
        assert U.check_relations()

    def test_cyclic_group_relations(self):
        """Test h(g)² = 1 in End(H) for C2."""
        U = monoid_universal(FinCat.cyclic_group(2), Z)
        ab = U.component
        assert ab.equal(ab.compose(U.h("g"), U.h("g")), ab.identity(U.H.obj))
        assert U.endomorphisms().describe() == "Z^2"
        assert U.check_relations()

    def test_sign_representation_factors(self):
        """Test the sign representation is r_ρ∘h."""
        U = monoid_universal(FinCat.cyclic_group(2), Z)
        assert U.factors(R, {"g": scalar(-1)})

    def test_non_action_rejected(self):
        """Test g ↦ 2 is not an action of C2."""
        U = monoid_universal(FinCat.cyclic_group(2), Z)
        with pytest.raises(RelationViolation):
            U.representation(R, {"g": scalar(2)})

    def test_needs_one_object(self):
        """Test a category with two objects is not a monoid."""
        with pytest.raises(ShapeMismatch):
            monoid_universal(FinCat.ordinal(2), Z)


if __name__ == "__main__":
    pytest.main([__file__])
