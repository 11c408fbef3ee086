"""Independent residual checking and numeric evaluation of solutions.

apply_operator builds L[x^r0 y^s0 sum d_Q X^Q] / (x^r0 y^s0) by direct series
multiplication -- a code path deliberately separate from the engine's
incremental recurrence, so that agreement between the two is meaningful.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

from .errors import OutsideEstimatedDomain
from .multiseries import CSeries2, MultiIndex, cauchy_mul, index_key, norm


def _coeff_table(coeffs):
    """Accept a FrobeniusSolution, CSeries2, or plain dict."""
    if hasattr(coeffs, "coeffs"):
        return dict(coeffs.coeffs)
    return {MultiIndex(*Q): complex(v) for Q, v in coeffs.items()}


def apply_operator(pde, r0, s0, coeffs):
    """Coefficient table of L applied to x^r0 y^s0 sum d_Q X^Q.

    The output coefficient at Q equals P(r0+q1, s0+q2) d_Q + e_Q.  Computed
    here as T2 + a * Sx + b * Sy + c * S where T2 carries the pure
    second-order weights A(q1+r)(q1+r-1) + B(q1+r)(q2+s) + C(q2+s)(q2+s-1)
    and Sx, Sy, S are the shifted/unshifted coefficient series.
    """
    r0 = complex(r0)
    s0 = complex(s0)
    table = _coeff_table(coeffs)
    M = max((norm(Q) for Q in table), default=0)
    if pde.order < M:
        raise ValueError("pde series order must be >= coefficient table order")
    A, B, C = complex(pde.A), complex(pde.B), complex(pde.C)
    t2 = {}
    sx = {}
    sy = {}
    for (q1, q2), d in table.items():
        rr = q1 + r0
        ss = q2 + s0
        t2[(q1, q2)] = (A * rr * (rr - 1) + B * rr * ss + C * ss * (ss - 1)) * d
        sx[(q1, q2)] = rr * d
        sy[(q1, q2)] = ss * d
    T2 = CSeries2(M, t2)
    S = CSeries2(M, table)
    Sx = CSeries2(M, sx)
    Sy = CSeries2(M, sy)
    a = pde.a.truncate(M) if pde.a.order > M else pde.a
    b = pde.b.truncate(M) if pde.b.order > M else pde.b
    c = pde.c.truncate(M) if pde.c.order > M else pde.c
    out = T2 + cauchy_mul(a, Sx) + cauchy_mul(b, Sy) + cauchy_mul(c, S)
    return dict(out.coeffs)


def perturbation_degree(pde):
    """Highest total degree with a nonzero coefficient across a, b, c."""
    keys = list(pde.a.coeffs) + list(pde.b.coeffs) + list(pde.c.coeffs)
    return max((norm(Q) for Q in keys), default=0)


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    per_layer: dict  # layer norm -> max |residual coefficient|
    checked_up_to: int

    def to_json(self):
        return {
            "max_residual": self.max_residual,
            "per_layer": {str(n): v for n, v in sorted(self.per_layer.items())},
            "checked_up_to": self.checked_up_to,
        }


def residual_max(pde, solution):
    """Residual report for a solution coefficient table.

    The top `deg` layers of the truncation are excluded: their residual
    coefficients receive contributions from solution terms beyond the
    truncation order, so checking them would produce false failures.
    """
    deg = perturbation_degree(pde)
    order = solution.order if hasattr(solution, "order") else max(
        (norm(Q) for Q in _coeff_table(solution)), default=0
    )
    checked = max(0, order - deg)
    out = apply_operator(pde, solution.r0, solution.s0, solution) if hasattr(
        solution, "r0"
    ) else None
    if out is None:
        raise TypeError("residual_max expects a FrobeniusSolution")
    per_layer = {n: 0.0 for n in range(checked + 1)}
    for Q, v in out.items():
        n = norm(Q)
        if n <= checked:
            per_layer[n] = max(per_layer[n], abs(v))
    max_res = max(per_layer.values(), default=0.0)
    return ResidualReport(max_res, per_layer, checked)


def eval_solution(solution, x, y, check_domain=True):
    """Numeric value x^r0 y^s0 * partial sum at a point with x, y > 0.

    Complex exponents use the principal logarithm, exp(r0 ln x + s0 ln y).
    When the radius estimator produces a finite bidisc and (x, y) is not
    strictly inside it, an OutsideEstimatedDomain warning is emitted and the
    partial sum is evaluated anyway.
    """
    if not (x > 0 and y > 0):
        raise ValueError("eval_solution is defined for x > 0 and y > 0 only")
    if check_domain and solution.order >= 10:
        from .frobenius import radius_estimate

        rad = radius_estimate(solution)
        if math.isfinite(rad) and max(x, y) >= rad:
            warnings.warn(
                f"point ({x}, {y}) is outside the estimated bidisc of radius {rad:.3g}",
                OutsideEstimatedDomain,
                stacklevel=2,
            )
    total = 0j
    for (q1, q2), v in sorted(solution.coeffs.items(), key=lambda kv: index_key(kv[0])):
        total += v * (x ** q1) * (y ** q2)
    prefactor = cmath.exp(complex(solution.r0) * math.log(x) + complex(solution.s0) * math.log(y))
    return prefactor * total
