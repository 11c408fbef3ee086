import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobpde.errors import BasePointNotOnConic, ComplexCoefficients, NoSolution
from frobpde.expr_parser import parse_expr, to_series
from frobpde.frobenius import RegularSingularPDE
from frobpde.indicial import (
    ALL_SOLUTIONS,
    IndicialConic,
    classify,
    indicial_of,
    resonance_scan,
    solve_for_s,
)


def conic(cA, cB, cC, cD, cE, cF):
    return IndicialConic(*(complex(v) for v in (cA, cB, cC, cD, cE, cF)))


def pde_conic(A, B, C, a, b, c, params=None, order=6):
    series = [to_series(parse_expr(t), params or {}, order) for t in (a, b, c)]
    return indicial_of(RegularSingularPDE(A, B, C, *series))


class TestConstruction:
    def test_from_regular_singular(self):
        # Bessel I with nu = 2: P = (r+s)^2 - 4
        p = pde_conic(1, 2, 1, "1", "1", "x^2 - 4")
        assert p.coefficients() == (1, 2, 1, 0, 0, -4)
        assert p.evaluate(2, 0) == 0
        assert p.evaluate(1, 1) == 0

    def test_only_constant_terms_matter(self):
        p = pde_conic(1, 0, 0, "1 + 7*x - y^2", "-1 + x*y", "3*x")
        assert p.coefficients() == (1, 0, 0, 0, -1, 0)

    def test_from_euler(self):
        p = IndicialConic.from_euler(1, 0, 1, 3, 4, 5)
        assert p.coefficients() == (1, 0, 1, 2, 3, 5)

    def test_evaluate(self):
        p = conic(1, 0, 0, 0, -1, 0)  # r^2 - s (heat)
        assert p.evaluate(0.5, 0.25) == 0
        assert p.evaluate(2, 1) == 3

    def test_to_json_stable(self):
        assert conic(1, 2, 3, 4, 5, 6).to_json() == {
            "cA": [1.0, 0.0],
            "cB": [2.0, 0.0],
            "cC": [3.0, 0.0],
            "cD": [4.0, 0.0],
            "cE": [5.0, 0.0],
            "cF": [6.0, 0.0],
        }


class TestClassify:
    def test_ellipse(self):
        c = classify(conic(1, 0, 1, 0, 0, -1))
        assert c.discriminant_class == "elliptic"
        assert not c.degenerate
        assert c.degenerate_kind == "none"

    def test_hyperbola(self):
        assert classify(conic(1, 0, -1, 0, 0, -1)).discriminant_class == "hyperbolic"

    def test_parabola(self):
        c = classify(conic(1, 2, 1, 1, 0, 0))
        assert c.discriminant_class == "parabolic"

    def test_crossing_lines_degenerate(self):
        # rs = 0: hyperbolic, two crossing lines
        c = classify(conic(0, 1, 0, 0, 0, 0))
        assert c.discriminant_class == "hyperbolic"
        assert c.degenerate
        assert c.degenerate_kind == "two_crossing_lines"

    def test_repeated_line_degenerate(self):
        # (r+s)^2 = 0
        c = classify(conic(1, 2, 1, 0, 0, 0))
        assert c.degenerate
        assert c.degenerate_kind == "parallel_or_repeated_lines"

    def test_complex_refused(self):
        with pytest.raises(ComplexCoefficients):
            classify(conic(1j, 0, 1, 0, 0, 0))

    def test_all_zero_refused(self):
        with pytest.raises(ValueError):
            classify(conic(0, 0, 0, 0, 0, 0))

    @given(
        st.floats(0.1, 100, allow_nan=False),
        st.sampled_from(
            [(1, 0, 1, 0, 0, -1), (1, 0, -1, 0, 0, -1), (1, 2, 1, 1, 0, 0), (0, 1, 0, 0, 0, 0)]
        ),
    )
    @settings(max_examples=50, deadline=None)
    def test_scale_invariance(self, scale, coeffs):
        base = classify(conic(*coeffs))
        scaled = classify(conic(*(scale * v for v in coeffs)))
        assert scaled == base

    def test_swap_invariance(self):
        # swapping (r, s) maps (A,B,C,D,E,F) -> (C,B,A,E,D,F); class is unchanged
        c1 = classify(conic(2, 1, 3, -1, 4, 1))
        c2 = classify(conic(3, 1, 2, 4, -1, 1))
        assert c1 == c2


class TestSolveForS:
    def test_two_roots_sorted(self):
        roots = solve_for_s(conic(1, 0, 1, 0, 0, -25), 3)  # s^2 = 16
        assert roots == [(-4 + 0j), (4 + 0j)]

    def test_single_root_when_linear(self):
        roots = solve_for_s(conic(1, 0, 0, 0, -1, 0), 0.5)  # heat: s = r^2
        assert roots == [0.25 + 0j]

    def test_double_root_collapses(self):
        roots = solve_for_s(conic(0, 0, 1, 0, -2, 1), 7)  # (s-1)^2
        assert roots == [1 + 0j]

    def test_complex_roots(self):
        roots = solve_for_s(conic(1, 0, 1, 0, 0, 1), 0)  # s^2 = -1
        assert roots == [-1j, 1j]

    def test_no_solution(self):
        with pytest.raises(NoSolution):
            solve_for_s(conic(1, 0, 0, 0, 0, -4), 1)  # 1 - 4 = -3 != 0

    def test_all_solutions_sentinel(self):
        assert solve_for_s(conic(1, 0, 0, 0, 0, -4), 2) is ALL_SOLUTIONS


class TestResonanceScan:
    def test_off_conic_refused(self):
        with pytest.raises(BasePointNotOnConic):
            resonance_scan(conic(1, 0, 0, 0, -1, 0), 1, 2, 10)

    def test_clean_scan(self):
        # Bessel I nu=0 at (0,0): P(q1,q2) = (q1+q2)^2 > 0 for |Q| >= 1
        rep = resonance_scan(conic(1, 2, 1, 0, 0, 0), 0, 0, 25)
        assert rep.hits == ()
        assert rep.nonresonant_up_to == 25

    def test_heat_hits(self):
        # r^2 - s at (1/2, 1/4): hits where q2 = q1^2 + q1
        rep = resonance_scan(conic(1, 0, 0, 0, -1, 0), 0.5, 0.25, 12)
        assert rep.hit_indices() == [(1, 2), (2, 6)]
        assert rep.nonresonant_up_to == 2

    def test_sigma_zero_airy_hits(self):
        # (r+s)(r+s-1) at r+s=0 hits the unit layer
        rep = resonance_scan(conic(1, 2, 1, -1, -1, 0), 0, 0, 10)
        assert rep.hit_indices() == [(0, 1), (1, 0)]

    def test_canonical_hit_order(self):
        rep = resonance_scan(conic(1, 2, 1, -1, -1, 0), 0.5, -0.5, 10)
        assert rep.hit_indices() == sorted(rep.hit_indices(), key=lambda Q: (Q[0] + Q[1], Q[0]))

    def test_json_round(self):
        rep = resonance_scan(conic(1, 0, 0, 0, -1, 0), 0.5, 0.25, 6)
        data = rep.to_json()
        assert data["bound"] == 6
        assert data["hits"] == [[1, 2, 0.0]]
