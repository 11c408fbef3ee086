import math

import pytest

from frobpde.errors import OutsideEstimatedDomain
from frobpde.expr_parser import parse_expr, to_series
from frobpde.frobenius import RegularSingularPDE, solve
from frobpde.verify import (
    apply_operator,
    eval_solution,
    perturbation_degree,
    residual_max,
)


def make_pde(A, B, C, a, b, c, order=12):
    series = [to_series(parse_expr(t), {}, order) for t in (a, b, c)]
    return RegularSingularPDE(A, B, C, *series)


BESSEL = make_pde(1, 2, 1, "1", "1", "x^2", order=20)


class TestApplyOperator:
    def test_conic_on_monomial(self):
        # applying L to x^r y^s alone returns P(r+q1, s+q2) at each index
        pde = BESSEL
        conic = pde.conic()
        out = apply_operator(pde, 0.25, -0.25, {(0, 0): 1.0})
        # L[x^{1/4} y^{-1/4}] = P(1/4, -1/4) + the c-series perturbation at (2,0)
        assert out.get((0, 0), 0j) == pytest.approx(conic.evaluate(0.25, -0.25))

    def test_engine_solution_annihilated(self):
        sol = solve(BESSEL, 0, 0, 20)
        out = apply_operator(BESSEL, 0, 0, sol)
        checked = 20 - perturbation_degree(BESSEL)
        bad = [v for Q, v in out.items() if Q[0] + Q[1] <= checked and abs(v) > 1e-12]
        assert bad == []

    def test_wrong_table_not_annihilated(self):
        out = apply_operator(BESSEL, 0, 0, {(0, 0): 1.0, (2, 0): 1.0})
        assert abs(out[(2, 0)]) > 1.0

    def test_order_mismatch_refused(self):
        pde = make_pde(1, 2, 1, "1", "1", "x^2", order=3)
        with pytest.raises(ValueError):
            apply_operator(pde, 0, 0, {(5, 0): 1.0})


class TestResidualMax:
    def test_engine_output_verifies(self):
        sol = solve(BESSEL, 0, 0, 20)
        rep = residual_max(BESSEL, sol)
        assert rep.checked_up_to == 18
        assert rep.max_residual < 1e-10
        assert set(rep.per_layer) == set(range(19))

    def test_json(self):
        sol = solve(BESSEL, 0, 0, 12)
        data = residual_max(BESSEL, sol).to_json()
        assert data["checked_up_to"] == 10
        assert "max_residual" in data

    def test_perturbation_degree(self):
        assert perturbation_degree(BESSEL) == 2
        pde = make_pde(1, 0, 0, "1 - x*y", "-1", "0")
        assert perturbation_degree(pde) == 2


class TestEvalSolution:
    def test_matches_direct_sum(self):
        sol = solve(BESSEL, 0, 0, 40)
        x = 0.5
        direct = sum(
            (-1) ** n / (4.0 ** n * math.factorial(n) ** 2) * x ** (2 * n) for n in range(21)
        )
        assert eval_solution(sol, x, 0.9) == pytest.approx(direct, abs=1e-12)

    def test_prefactor(self):
        sol = solve(BESSEL, 1, -1, 12)
        x, y = 0.5, 2.0
        plain = sum(v * x ** q1 * y ** q2 for (q1, q2), v in sol.coeffs.items())
        assert eval_solution(sol, x, y) == pytest.approx(x / y * plain, rel=1e-12)

    def test_domain_warning(self):
        # geometric-type solution with finite radius: Laguerre-like with growth
        pde = make_pde(1, 0, 0, "1 - x*y", "-1", "0", order=30)
        sol = solve(pde, 0.5, 0.25, 30, resonance_policy="skip_removable")
        with pytest.warns(OutsideEstimatedDomain):
            eval_solution(sol, 9.0, 9.0)

    def test_no_warning_inside(self):
        import warnings

        sol = solve(BESSEL, 0, 0, 12)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            eval_solution(sol, 0.1, 0.1)

    def test_positive_quadrant_only(self):
        sol = solve(BESSEL, 0, 0, 12)
        with pytest.raises(ValueError):
            eval_solution(sol, -0.5, 0.5)
