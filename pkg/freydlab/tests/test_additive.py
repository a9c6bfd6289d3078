#!/usr/bin/env python3
"""
Tests for the additive envelope, linear systems of envelope morphisms and additive functors.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from freydlab.additive import AdditiveFunctor, LinearSystem, envelope, factor_left, factor_right
from freydlab.coeff import Mat, Ring
from freydlab.config import get_config
from freydlab.diagram import FinCat, Quiver, path_category
from freydlab.errors import NonFinite, RelationViolation, ShapeMismatch, UnsupportedBase

Z = Ring.integers()
STAR = ("*",)


def group_ring_c2():
    return envelope(FinCat.cyclic_group(2), Z)


def point(ring=Z):
    return envelope(FinCat.point(), ring)


class TestEnvelope:
    """Tests for morphisms of R·C⁺."""

    def test_group_ring_zero_divisors(self):
        """Test (1+g)(1−g) = 0 in Z[C2]."""
        cat = group_ring_c2()
        plus = cat.morphism(STAR, STAR, [[{"1": 1, "g": 1}]])
        minus = cat.morphism(STAR, STAR, [[{"1": 1, "g": -1}]])
        assert (plus @ minus).is_zero()
        assert not (plus @ plus).is_zero()
        assert (plus @ plus) == plus.scale(2)

    def test_endomorphism_rank(self):
        """Test End((*)) in Z[C2] is free of rank 2."""
        cat = group_ring_c2()
        assert cat.hom_rank(STAR, STAR) == 2
        assert len(cat.hom_basis(STAR, STAR)) == 2

    def test_free_loop_composition(self):
        """Test e∘e is the path e.e in the free loop category."""
        q = Quiver(["v"], [("e", "v", "v")])
        cat = envelope(path_category(q), Z)
        e = cat.embed(q.path("v", ["e"]))
        ee = e @ e
        ((m, c),) = ee[0, 0].terms
        assert str(m) == "e.e"
        assert c == 1

    def test_cyclic_base_hom_is_refused(self):
        """Test hom bases of a cyclic path category are never truncated."""
        q = Quiver(["v"], [("e", "v", "v")])
        cat = envelope(path_category(q), Z)
        with pytest.raises(UnsupportedBase):
            cat.hom_rank(("v",), ("v",))
        with pytest.raises(UnsupportedBase):
            cat.hom_keys(("v",), ("v",))

    def test_biproduct_identities(self):
        """Test p_k∘i_k = id, p_k∘i_l = 0 and Σ i_k∘p_k = id."""
        cat = envelope(FinCat.ordinal(2), Z)
        parts = [("0",), ("1", "0")]
        total = cat.direct_sum(parts)
        for k in range(2):
            assert cat.projection(parts, k) @ cat.injection(parts, k) == cat.identity(parts[k])
        assert (cat.projection(parts, 0) @ cat.injection(parts, 1)).is_zero()
        resolved = cat.add(cat.injection(parts, 0) @ cat.projection(parts, 0),
                           cat.injection(parts, 1) @ cat.projection(parts, 1))
        assert resolved == cat.identity(total)

    def test_stacking(self):
        """Test hstack composed with vstack sums the products."""
        cat = envelope(FinCat.ordinal(2), Z)
        f = cat.embed("0->1")
        g = cat.morphism(("1",), ("1",), [[3]])
        row = cat.hstack(("1",), [f, g])
        col = cat.vstack(("0",), [cat.identity(("0",)), f])
        assert row @ col == f.scale(4)

    def test_scalar_matrices(self):
        """Test scalar matrices only sit between equal vertices."""
        cat = envelope(FinCat.ordinal(2), Z)
        m = cat.scalar(("0", "1"), ("0", "1"), Mat(Z, 2, 2, [[2, 0], [0, 5]]))
        assert cat.as_scalar(m) == Mat(Z, 2, 2, [[2, 0], [0, 5]])
        with pytest.raises(ShapeMismatch):
            cat.scalar(("0",), ("1",), Mat(Z, 1, 1, [[1]]))
        assert cat.as_scalar(cat.embed("0->1")) is None

    def test_entries_are_checked(self):
        """Test entries must run between the right vertices."""
        cat = envelope(FinCat.ordinal(2), Z)
        with pytest.raises(ShapeMismatch):
            cat.morphism(("1",), ("0",), [["0->1"]])
        with pytest.raises(ShapeMismatch):
            cat.morphism(("0",), ("1",), [["0->1", "0->1"]])

    def test_coefficients_reduce_mod_n(self):
        """Test coefficients are canonical in Z/4."""
        cat = point(Ring.integers_mod(4))
        m = cat.morphism(STAR, STAR, [[6]])
        assert m[0, 0].coefficient("id_*") == 2
        assert cat.morphism(STAR, STAR, [[4]]).is_zero()

    def test_opposite_transposes(self):
        """Test op reverses arrows and transposes matrices."""
        cat = envelope(FinCat.ordinal(2), Z)
        f = cat.hstack(("1",), [cat.embed("0->1"), cat.identity(("1",))])
        g = f.op()
        assert (g.src, g.dst) == (("1",), ("0", "1"))
        assert g.cat.base.source("0->1") == "1"
        assert g.op() == f

    def test_opposite_of_paths_reverses_words(self):
        """Test a path a.b reads b.a in the dual path category."""
        q = Quiver(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")])
        cat = envelope(path_category(q), Z)
        f = cat.embed(q.path("0", ["a", "b"]))
        ((m, _),) = f.op()[0, 0].terms
        assert m.edges == ("b", "a")
        assert (m.source, m.target) == ("2", "0")

    def test_parse_morphism(self):
        """Test reading base morphisms back from text."""
        q = Quiver(["0", "1"], [("a", "0", "1")])
        paths = envelope(path_category(q), Z)
        assert paths.parse_morphism("a", "0", "1") == q.path("0", ["a"])
        assert paths.parse_morphism("id_0", "0", "0").is_identity
        ordinal = envelope(FinCat.ordinal(2), Z)
        assert ordinal.parse_morphism("0->1", "0", "1") == "0->1"
        with pytest.raises(ShapeMismatch):
            ordinal.parse_morphism("0->1", "1", "0")


class TestLinearSystem:
    """Tests for linear systems over envelope morphisms."""

    def test_two_does_not_factor_through_four(self):
        """Test [2] does not factor through [4] but [4] factors through [2]."""
        cat = point()
        two = cat.morphism(STAR, STAR, [[2]])
        four = cat.morphism(STAR, STAR, [[4]])
        assert factor_right(two, four) is None
        h = factor_right(four, two)
        assert two @ h == four
        assert factor_left(four, two) == two

    def test_factor_through_arrow(self):
        """Test the arrow 0→1 factors through itself on either side."""
        cat = envelope(FinCat.ordinal(2), Z)
        a = cat.embed("0->1")
        h = factor_right(a, a)
        assert a @ h == a
        assert factor_left(cat.identity(("0",)), a) is None

    def test_group_ring_kernel(self):
        """Test the solutions of (1−g)x = 0 in Z[C2] are the multiples of 1+g."""
        cat = group_ring_c2()
        minus = cat.morphism(STAR, STAR, [[{"1": 1, "g": -1}]])
        system = LinearSystem(cat)
        x = system.unknown(STAR, STAR, "x")
        system.equation([(1, minus, x, None)])
        gens = system.kernel()
        assert gens.cols == 1
        sol = system.decode(gens.column(0))[x]
        plus = cat.morphism(STAR, STAR, [[{"1": 1, "g": 1}]])
        assert sol == plus or sol == plus.scale(-1)

    def test_two_unknowns(self):
        """Test a·x + y∘b = c is solved jointly."""
        cat = envelope(FinCat.ordinal(2), Z)
        arrow = cat.embed("0->1")
        system = LinearSystem(cat)
        x = system.unknown(("0",), ("0",), "x")
        y = system.unknown(("1",), ("1",), "y")
        system.equation([(1, arrow, x, None), (1, None, y, arrow)], arrow.scale(5))
        x_val, y_val = system.solve()
        assert arrow @ x_val + y_val @ arrow == arrow.scale(5)
        assert system.encode(x, x_val) == cat.coordinates(x_val, system.unknowns[x].keys)

    def test_inconsistent_system(self):
        """Test a target outside the reachable span has no solution."""
        cat = envelope(FinCat.ordinal(2), Z)
        system = LinearSystem(cat)
        x = system.unknown(("1",), ("1",), "x")
        system.equation([(2, None, x, None)], cat.identity(("1",)))
        assert system.solve() is None
        assert not system.is_solvable()

    def test_shape_checks(self):
        """Test mismatched terms are rejected."""
        cat = envelope(FinCat.ordinal(2), Z)
        system = LinearSystem(cat)
        x = system.unknown(("0",), ("0",), "x")
        with pytest.raises(ShapeMismatch):
            system.equation([(1, cat.identity(("1",)), x, None)])

    def test_empty_system_has_zero_solution(self):
        """Test an unknown with no equations solves to zero."""
        cat = envelope(FinCat.ordinal(2), Z)
        system = LinearSystem(cat)
        system.unknown(("0",), ("1",), "x")
        (x_val,) = system.solve()
        assert x_val.is_zero()
        assert system.kernel().cols == 1


class TestFreeBase:
    """Tests for linear systems over a path category with cycles."""

    def loop(self):
        q = Quiver(["v"], [("e", "v", "v")])
        cat = envelope(path_category(q), Z)
        return q, cat, lambda n: cat.embed(q.path("v", ["e"] * n))

    def test_long_factorization(self):
        """Test e^8 factors through e as e∘e^7."""
        _, cat, power = self.loop()
        h = factor_right(power(8), power(1))
        assert h == power(7)
        assert factor_left(power(8), power(3)) == power(5)

    def test_no_factorization_closes(self):
        """Test e does not factor through e∘e and the search stops by itself."""
        _, cat, power = self.loop()
        assert factor_right(power(1), power(2)) is None
        assert factor_right(cat.identity(("v",)), power(1)) is None

    def test_cancelling_terms(self):
        """Test y = (x + y)∘1 − x∘1 is found although x is not reached from y directly."""
        loop = Quiver(["w", "z"], [("x", "w", "z"), ("y", "w", "z"), ("e", "z", "z")])
        cat = envelope(path_category(loop), Z)
        x, y = cat.embed(loop.path("w", ["x"])), cat.embed(loop.path("w", ["y"]))
        g = cat.hstack(("z",), [x + y, x])
        h = factor_right(y, g)
        assert h is not None
        assert g @ h == y

    def test_growth_is_reported(self, monkeypatch):
        """Test (1 + e)∘h = e, which has no solution, fails loudly once the paths keep growing."""
        _, cat, power = self.loop()
        monkeypatch.setitem(get_config().to_dict()["search"], "free_keys", 12)
        with pytest.raises(NonFinite) as info:
            factor_right(power(1), cat.identity(("v",)) + power(1))
        assert info.value.growing

    def test_kernel_is_refused(self):
        """Test homogeneous solution sets over a cyclic base are not enumerated."""
        _, cat, power = self.loop()
        system = LinearSystem(cat)
        x = system.unknown(("v",), ("v",), "x")
        system.equation([(1, power(1), x, None)])
        with pytest.raises(UnsupportedBase):
            system.kernel()
        (x_val,) = system.solve()
        assert x_val.is_zero()


class TestAdditiveFunctor:
    """Tests for additive functors between envelopes."""

    def test_collapse_to_point(self):
        """Test sending the arrow of [2] to multiplication by 2 on the point."""
        source = envelope(FinCat.ordinal(2), Z)
        target = point()
        functor = AdditiveFunctor(
            source, target, {"0": STAR, "1": STAR},
            morphisms={"0->1": target.morphism(STAR, STAR, [[2]])},
        )
        f = source.morphism(("0", "1"), ("1",), [["0->1", 3]])
        value = functor(f)
        assert target.as_scalar(value) == Mat(Z, 1, 2, [[2, 3]])

    def test_relations_are_checked(self):
        """Test g ↦ [2] is refused because g∘g = 1 in C2."""
        source = group_ring_c2()
        target = point()
        with pytest.raises(RelationViolation):
            AdditiveFunctor(source, target, {"*": STAR}, morphisms={"g": target.morphism(STAR, STAR, [[2]])})

    def test_sign_representation(self):
        """Test g ↦ −1 is a functor on C2 and kills 1+g."""
        source = group_ring_c2()
        target = point()
        functor = AdditiveFunctor(source, target, {"*": STAR}, morphisms={"g": target.morphism(STAR, STAR, [[-1]])})
        assert functor(source.morphism(STAR, STAR, [[{"1": 1, "g": 1}]])).is_zero()

    def test_edges_of_path_category(self):
        """Test a functor on a free category is given on edges."""
        q = Quiver(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2")])
        source = envelope(path_category(q), Z)
        target = point()
        functor = AdditiveFunctor(
            source, target, {"0": STAR, "1": STAR, "2": STAR},
            edges={"a": target.morphism(STAR, STAR, [[2]]), "b": target.morphism(STAR, STAR, [[3]])},
        )
        ab = source.embed(q.path("0", ["a", "b"]))
        assert target.as_scalar(functor(ab)) == Mat(Z, 1, 1, [[6]])

    def test_missing_object(self):
        """Test every object needs a value."""
        with pytest.raises(ShapeMismatch):
            AdditiveFunctor(envelope(FinCat.ordinal(2), Z), point(), {"0": STAR})


if __name__ == "__main__":
    pytest.main([__file__])
