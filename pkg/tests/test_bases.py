import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from polycond import (
    ArgumentError,
    BernsteinBasis,
    DegenerateInputError,
    LagrangeBasis,
    NodeSet,
    Scalar,
    barycentric_weights,
    bernstein_basis_value,
    chebyshev_nodes,
    equispaced_nodes,
    lagrange_basis_value,
    lagrange_values,
)

small_fractions = st.fractions(
    min_value=Fraction(-2), max_value=Fraction(2), max_denominator=1000
)


class TestEquispaced:
    def test_three_point(self):
        assert [s.value for s in equispaced_nodes(2, -1, 1)] == [-1, 0, 1]

    def test_degree_five_matches_formula(self):
        got = [s.value for s in equispaced_nodes(5, -1, 1)]
        assert got == [Fraction(v, 5) for v in (-5, -3, -1, 1, 3, 5)]

    def test_unit_interval_nodes(self):
        got = [s.value for s in equispaced_nodes(20, 0, 1)]
        assert got == [Fraction(k, 20) for k in range(21)]

    def test_strictly_increasing_exact_rationals(self):
        ns = equispaced_nodes(7, "-2/3", "5/8")
        vals = [s.value for s in ns]
        assert all(isinstance(v, Fraction) for v in vals)
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ArgumentError):
            equispaced_nodes(0, -1, 1)
        with pytest.raises(ArgumentError):
            equispaced_nodes(3, 1, -1)
        with pytest.raises(ArgumentError):
            equispaced_nodes(3, 1, 1)


class TestChebyshev:
    def test_n2_exact(self):
        assert [s.value for s in chebyshev_nodes(2)] == [1, 0, -1]

    def test_n4_closed_form(self):
        ns = chebyshev_nodes(4, 30)
        with mp.workdps(60):
            expected = mp.sqrt(2) / 2
            assert abs(ns[1].value - expected) < mp.mpf(10) ** -58
        assert ns[0].value == 1
        assert ns[2].value == 0
        assert ns[4].value == -1

    @pytest.mark.parametrize("n", [3, 4, 7, 12])
    def test_mirror_symmetry_is_exact(self, n):
        # compare as exact rationals: mpf negation at ambient precision rounds
        from polycond.scalars import mpf_to_fraction

        vals = [mpf_to_fraction(s.value) for s in chebyshev_nodes(n)]
        for k in range(n + 1):
            assert vals[k] == -vals[n - k]

    def test_decreasing(self):
        vals = [s.value for s in chebyshev_nodes(9)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_trig_identity_to_double_precision(self):
        d = 30
        ns = chebyshev_nodes(7, d)
        with mp.workdps(2 * d + 10):
            for k, s in enumerate(ns):
                err = abs(s.value**2 + mp.sin(mp.pi * k / 7) ** 2 - 1)
                assert err <= mp.mpf(10) ** (-2 * d + 2)

    def test_rejects_degree_zero(self):
        with pytest.raises(ArgumentError):
            chebyshev_nodes(0)


class TestNodeSet:
    def test_duplicate_rationals_rejected(self):
        with pytest.raises(DegenerateInputError):
            NodeSet([1, 2, 2])

    def test_near_duplicate_floats_rejected(self):
        with mp.workdps(60):
            a = mp.mpf(1)
            b = a + mp.mpf(10) ** -59
        with pytest.raises(DegenerateInputError):
            NodeSet([a, b], digits=60)

    def test_mixed_regimes_rejected(self):
        with pytest.raises(ArgumentError):
            NodeSet([Scalar.exact(1), Scalar.big(2, 30)])

    def test_provenance(self):
        assert equispaced_nodes(3).provenance == "equispaced"
        assert chebyshev_nodes(3).provenance == "chebyshev-extreme"
        assert NodeSet([1, 2]).provenance == "custom"


class TestLagrange:
    def test_cardinal_property_exact(self):
        ns = equispaced_nodes(4, -1, 1)
        for k in range(5):
            for j in range(5):
                v = lagrange_basis_value(ns, k, ns[j].value)
                assert v.value == (1 if j == k else 0)

    def test_example_value(self):
        ns = equispaced_nodes(2, -1, 1)
        assert lagrange_basis_value(ns, 1, Fraction(1, 2)).value == Fraction(3, 4)

    @given(small_fractions)
    def test_partition_of_unity_exact(self, x):
        ns = equispaced_nodes(6, -1, 1)
        assert sum(lagrange_values(ns, x)) == 1

    def test_index_out_of_range(self):
        ns = equispaced_nodes(3, -1, 1)
        with pytest.raises(IndexError):
            lagrange_basis_value(ns, 5, 0)

    def test_row_matches_direct_formula_exact(self):
        ns = equispaced_nodes(9, -1, 1)
        x = Fraction(3, 7)
        row = lagrange_values(ns, x)
        for k in range(10):
            assert row[k] == lagrange_basis_value(ns, k, x).value

    def test_direct_vs_barycentric_floats(self):
        # agreement to >= (digits - 5) significant digits at random points
        d = 40
        ns = chebyshev_nodes(12, d)
        rng = random.Random(0)
        with mp.workdps(2 * d):
            tol = mp.mpf(10) ** (-(2 * d) + 5)
            for _ in range(100):
                x = mp.mpf(rng.uniform(-1, 1))
                row = lagrange_values(ns, x)
                k = rng.randrange(13)
                direct = lagrange_basis_value(ns, k, x).value
                if direct != 0:
                    assert abs(row[k] - direct) <= abs(direct) * tol

    def test_collision_returns_unit_row(self):
        ns = chebyshev_nodes(5, 30)
        row = lagrange_values(ns, ns[2].value)
        assert row[2] == 1
        assert sum(abs(v) for v in row) == 1


class TestBarycentricWeights:
    def test_three_nodes(self):
        ws = [w.value for w in barycentric_weights(NodeSet([-1, 0, 1]))]
        assert ws == [Fraction(1, 2), Fraction(-1), Fraction(1, 2)]

    def test_single_node(self):
        assert [w.value for w in barycentric_weights(NodeSet([0]))] == [1]

    def test_equispaced_weights_alternate_in_sign(self):
        ws = barycentric_weights(equispaced_nodes(8, -1, 1))
        signs = [1 if w.value > 0 else -1 for w in ws]
        assert all(a == -b for a, b in zip(signs, signs[1:]))


class TestBernstein:
    def test_endpoint(self):
        for n in (1, 3, 6):
            assert bernstein_basis_value(n, 0, 0).value == 1

    @given(small_fractions)
    def test_partition_of_unity(self, x):
        vals = BernsteinBasis(5).values_at(x)
        assert sum(vals) == 1

    def test_midpoint_example(self):
        assert bernstein_basis_value(2, 1, Fraction(1, 2)).value == Fraction(1, 2)

    def test_interval_pullback(self):
        # basis on [2, 4] at x=3 equals basis on [0,1] at t=1/2
        v = bernstein_basis_value(3, 2, 3, interval=(2, 4))
        assert v.value == bernstein_basis_value(3, 2, Fraction(1, 2)).value

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            bernstein_basis_value(3, 4, 0)

    def test_values_at_matches_pointwise(self):
        basis = BernsteinBasis(6)
        x = Fraction(2, 7)
        row = basis.values_at(x)
        for k in range(7):
            assert row[k] == bernstein_basis_value(6, k, x).value


def test_lagrange_basis_size_matches_nodes():
    ns = equispaced_nodes(5, -1, 1)
    assert LagrangeBasis(ns).size == 6
