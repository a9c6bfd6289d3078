#!/usr/bin/env python3
"""
Tests for the coefficient layer: rings, normal forms, solving and kernels,
finitely presented modules.
"""

import itertools
import os
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from freydlab.coeff import (
    FPModule,
    Mat,
    ModuleMap,
    Ring,
    echelon_form,
    homology_module,
    howell_form,
    inverse,
    is_exact_at,
    kernel_gens,
    normal_form,
    smith_form,
    solve_right,
)
from freydlab.errors import InvalidRing, RingMismatch, ShapeMismatch

Z = Ring.integers()
Q = Ring.rationals()


def _elements(ring):
    return [ring.element(x) for x in range(ring.modulus)]


def _span(ring, mat):
    """All combinations of the columns of ``mat`` (finite rings only)."""
    vectors = set()
    for coeffs in itertools.product(_elements(ring), repeat=mat.cols):
        vec = tuple(
            ring.element(sum(coeffs[j] * mat[i, j] for j in range(mat.cols))) for i in range(mat.rows)
        )
        vectors.add(vec)
    if mat.cols == 0:
        vectors.add(tuple(ring.zero for _ in range(mat.rows)))
    return vectors


@st.composite
def finite_ring_matrices(draw, max_rows=2, max_cols=2):
    modulus = draw(st.sampled_from([2, 3, 4, 6]))
    ring = Ring.prime_field(modulus) if modulus in (2, 3) else Ring.integers_mod(modulus)
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.lists(st.integers(0, modulus - 1), min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return Mat(ring, rows, cols, entries)


class TestRing:
    """Tests for ring parsing and scalar arithmetic."""

    def test_parse_names(self):
        """Test the accepted ring spellings."""
        assert Ring.parse("Z") == Z
        assert Ring.parse("Q") == Q
        assert Ring.parse("Z/4") == Ring.integers_mod(4)
        assert Ring.parse("F_5") == Ring.prime_field(5)
        assert Ring.parse("GF(7)") == Ring.prime_field(7)

    def test_invalid_rings(self):
        """Test that bad moduli are rejected."""
        with pytest.raises(InvalidRing):
            Ring.integers_mod(1)
        with pytest.raises(InvalidRing):
            Ring.prime_field(4)
        with pytest.raises(InvalidRing):
            Ring.parse("R[x]")

    def test_canonical_formatting(self):
        """Test canonical element strings."""
        assert Q.format(Q.parse_element("2/4")) == "1/2"
        assert Q.format(Q.element(3)) == "3"
        assert Ring.integers_mod(4).format(Ring.integers_mod(4).element(-1)) == "3"

    def test_gcdex_transform_is_invertible(self):
        """Test that gcdex returns a unimodular transform clearing b."""
        ring = Ring.integers_mod(12)
        for a, b in [(4, 6), (3, 8), (0, 5), (6, 0), (9, 10)]:
            g, s, t, u, v = ring.gcdex(a, b)
            assert ring.add(ring.mul(s, a), ring.mul(t, b)) == g
            assert ring.add(ring.mul(u, a), ring.mul(v, b)) == 0
            det = ring.sub(ring.mul(s, v), ring.mul(t, u))
            assert ring.is_unit(det)

    def test_unit_normal_mod_n(self):
        """Test that associates over Z/n normalize to divisors of n."""
        ring = Ring.integers_mod(12)
        unit, canonical = ring.unit_normal(10)
        assert ring.is_unit(unit)
        assert canonical == 2
        assert ring.mul(unit, 10) == 2


class TestNormalForm:
    """Tests for normal forms and their change of basis."""

    def test_smith_over_integers(self):
        """Test diag(2,3) has Smith form diag(1,6)."""
        a = Mat(Z, 2, 2, [[2, 0], [0, 3]])
        nf = normal_form(a)
        assert nf.form == Mat(Z, 2, 2, [[1, 0], [0, 6]])
        assert nf.left @ a @ nf.right == nf.form

    def test_smith_four_by_four(self):
        """Test a classic 4x4 integer example."""
        a = Mat(Z, 4, 4, [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
        s = smith_form(a)
        assert s.diagonal == (1, 10, 30)
        assert s.left @ a @ s.right == s.form
        assert inverse(s.left) is not None
        assert inverse(s.right) is not None

    @pytest.mark.parametrize("ring", [Z, Q, Ring.integers_mod(6), Ring.prime_field(5)])
    def test_identity_is_fixed(self, ring):
        """Test the identity is its own normal form."""
        i3 = Mat.identity(ring, 3)
        assert normal_form(i3).form == i3

    def test_two_vanishes_over_f2(self):
        """Test [[2]] over F_2 is the zero matrix."""
        a = Mat(Ring.prime_field(2), 1, 1, [[2]])
        assert normal_form(a).form == Mat(Ring.prime_field(2), 1, 1, [[0]])

    def test_rref_over_rationals(self):
        """Test reduced row echelon form and U·A = R."""
        a = Mat(Q, 2, 3, [[2, 4, 6], [1, 1, 1]])
        nf = normal_form(a)
        assert nf.kind == "rref"
        assert nf.form == Mat(Q, 2, 3, [[1, 0, -1], [0, 1, 2]])
        assert nf.left @ a @ nf.right == nf.form

    def test_smith_mod_n_uses_divisors(self):
        """Test Smith entries over Z/12 are divisors of 12."""
        ring = Ring.integers_mod(12)
        a = Mat(ring, 2, 2, [[4, 6], [10, 0]])
        s = smith_form(a)
        assert all(12 % d == 0 for d in s.diagonal)
        assert s.left @ a @ s.right == s.form

    def test_howell_form_adds_annihilator_rows(self):
        """Test the Howell form of [[2, 1]] over Z/4 contains (0, 2)."""
        ring = Ring.integers_mod(4)
        h = howell_form(Mat(ring, 1, 2, [[2, 1]]))
        assert h == Mat(ring, 2, 2, [[2, 1], [0, 2]])

    def test_hermite_over_integers(self):
        """Test echelon form over Z reduces entries above pivots."""
        e = echelon_form(Mat(Z, 2, 2, [[2, 3], [0, 2]]))
        assert e == Mat(Z, 2, 2, [[2, 1], [0, 2]])

    @settings(max_examples=60, deadline=None)
    @given(finite_ring_matrices(3, 3))
    def test_transforms_are_invertible(self, a):
        """Test U·A·V = N with invertible U and V on random matrices."""
        nf = normal_form(a)
        assert nf.left @ a @ nf.right == nf.form
        assert inverse(nf.left) is not None
        assert inverse(nf.right) is not None


class TestSolveRight:
    """Tests for solving A·X = B."""

    def test_integer_solution(self):
        """Test 2x = 4 over Z."""
        assert solve_right(Mat(Z, 1, 1, [[2]]), Mat(Z, 1, 1, [[4]])) == Mat(Z, 1, 1, [[2]])

    def test_parity_obstruction(self):
        """Test 2x = 3 has no integer solution."""
        assert solve_right(Mat(Z, 1, 1, [[2]]), Mat(Z, 1, 1, [[3]])) is None

    def test_canonical_pick_mod_four(self):
        """Test 2x = 2 over Z/4 returns the smallest solution 1."""
        ring = Ring.integers_mod(4)
        x = solve_right(Mat(ring, 1, 1, [[2]]), Mat(ring, 1, 1, [[2]]))
        assert x == Mat(ring, 1, 1, [[1]])

    def test_shape_and_ring_errors(self):
        """Test dimension and ring mismatches raise."""
        with pytest.raises(ShapeMismatch):
            solve_right(Mat(Z, 2, 1, [[1], [1]]), Mat(Z, 1, 1, [[1]]))
        with pytest.raises(RingMismatch):
            solve_right(Mat(Z, 1, 1, [[1]]), Mat(Q, 1, 1, [[1]]))

    @settings(max_examples=80, deadline=None)
    @given(finite_ring_matrices(2, 2), st.data())
    def test_solvability_matches_enumeration(self, a, data):
        """Test solve_right finds a solution exactly when brute force does."""
        ring = a.ring
        b_entries = data.draw(st.lists(st.integers(0, ring.modulus - 1), min_size=a.rows, max_size=a.rows))
        b = Mat(ring, a.rows, 1, [[x] for x in b_entries])
        image = _span(ring, a)
        x = solve_right(a, b)
        expected = tuple(b.column(0)) in image
        assert (x is not None) == expected
        if x is not None:
            assert a @ x == b


class TestKernel:
    """Tests for kernel generators."""

    def test_rational_kernel(self):
        """Test the kernel of [1 1] over Q."""
        k = kernel_gens(Mat(Q, 1, 2, [[1, 1]]))
        assert k == Mat(Q, 2, 1, [[1], [-1]])

    def test_kernel_mod_four(self):
        """Test the kernel of [2] over Z/4 is generated by 2."""
        ring = Ring.integers_mod(4)
        assert kernel_gens(Mat(ring, 1, 1, [[2]])) == Mat(ring, 1, 1, [[2]])

    def test_empty_rows(self):
        """Test the kernel of a 0×n matrix is everything."""
        assert kernel_gens(Mat(Z, 0, 3)) == Mat.identity(Z, 3)

    def test_integer_lattice_basis(self):
        """Test the kernel of [2 4] over Z is spanned by one primitive vector."""
        k = kernel_gens(Mat(Z, 1, 2, [[2, 4]]))
        assert k.cols == 1
        assert abs(k[0, 0]) == 2 and abs(k[1, 0]) == 1

    @settings(max_examples=80, deadline=None)
    @given(finite_ring_matrices(2, 2))
    def test_kernel_matches_enumeration(self, a):
        """Test kernel columns span exactly the null vectors found by enumeration."""
        ring = a.ring
        k = kernel_gens(a)
        assert (a @ k).is_zero()
        null = {
            x for x in itertools.product(_elements(ring), repeat=a.cols)
            if all(ring.element(sum(a[i, j] * x[j] for j in range(a.cols))) == 0 for i in range(a.rows))
        }
        assert _span(ring, k) == null


class TestModules:
    """Tests for finitely presented modules and module maps."""

    def test_summaries(self):
        """Test invariant factor descriptions."""
        assert FPModule.free(Z, 1).summary().describe() == "Z"
        assert FPModule.cyclic(Z, 2).summary().describe() == "Z/2"
        assert FPModule.cyclic(Z, 1).summary().is_zero
        assert FPModule.free(Ring.integers_mod(4), 1).summary().describe() == "Z/4"
        assert FPModule.free(Ring.prime_field(5), 2).summary().describe() == "F_5^2"
        both = FPModule.direct_sum(Z, [FPModule.free(Z, 1), FPModule.cyclic(Z, 2)])
        assert both.summary().describe() == "Z + Z/2"
        assert both.summary().order is None
        assert FPModule.cyclic(Z, 6).summary().order == 6

    def test_kernel_of_doubling_on_z4(self):
        """Test multiplication by 2 on Z/4 has kernel Z/2."""
        m = FPModule.cyclic(Z, 4)
        double = ModuleMap(m, m, Mat(Z, 1, 1, [[2]]))
        assert double.is_well_defined()
        k, inc = double.kernel()
        assert k.summary().describe() == "Z/2"
        assert double.compose(inc).is_zero()

    def test_cokernel_and_image(self):
        """Test cokernel and image of multiplication by 3 on Z."""
        z = FPModule.free(Z, 1)
        triple = ModuleMap(z, z, Mat(Z, 1, 1, [[3]]))
        assert triple.cokernel()[0].summary().describe() == "Z/3"
        assert triple.image()[0].summary().describe() == "Z"
        assert triple.is_injective()
        assert not triple.is_surjective()

    def test_exactness_and_homology(self):
        """Test exactness of Z --2--> Z --> Z/2 and the homology of Z --2--> Z --0--> Z."""
        z = FPModule.free(Z, 1)
        z2 = FPModule.cyclic(Z, 2)
        double = ModuleMap(z, z, Mat(Z, 1, 1, [[2]]))
        proj = ModuleMap(z, z2, Mat(Z, 1, 1, [[1]]))
        assert is_exact_at(double, proj)
        zero = z.zero_map(z)
        assert not is_exact_at(double, zero)
        assert homology_module(double, zero).summary().describe() == "Z/2"
