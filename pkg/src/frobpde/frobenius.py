"""Frobenius engine for regular-singular PDEs.

The PDE shape is A x^2 z_xx + B xy z_xy + C y^2 z_yy + x a(x,y) z_x
+ y b(x,y) z_y + c(x,y) z = 0 with constant A, B, C and analytic a, b, c.
Solutions are sought as x^r0 y^s0 (1 + sum_{|Q|>=1} D_Q x^q1 y^q2) with
(r0, s0) on the indicial conic; each layer of coefficients is obtained by
dividing the convolution term e_Q by P(r0+q1, s0+q2).
"""

import cmath
import math
from dataclasses import dataclass, field

from .errors import BasePointNotOnConic, MissingPriorCoefficient, ResonantPoint
from .indicial import DEFAULT_TOL, indicial_of, resonance_scan
from .multiseries import CSeries2, MultiIndex, analytic_transform, divide_by_x, index_key


@dataclass(frozen=True)
class RegularSingularPDE:
    A: complex
    B: complex
    C: complex
    a: CSeries2
    b: CSeries2
    c: CSeries2

    def __post_init__(self):
        if not (self.a.order == self.b.order == self.c.order):
            raise ValueError("a, b, c must share one truncation order")

    @property
    def order(self):
        return self.a.order

    def conic(self):
        return indicial_of(self)


@dataclass(frozen=True)
class ConvergenceReport:
    parabolic_real_type: bool
    elliptic_condition: bool
    hyperbolic_condition: bool
    general_sufficient: bool

    @property
    def any(self):
        return (
            self.parabolic_real_type
            or self.elliptic_condition
            or self.hyperbolic_condition
            or self.general_sufficient
        )

    def to_json(self):
        return {
            "parabolic_real_type": self.parabolic_real_type,
            "elliptic_condition": self.elliptic_condition,
            "hyperbolic_condition": self.hyperbolic_condition,
            "general_sufficient": self.general_sufficient,
            "any": self.any,
        }


def convergence_report(A, B, C, tol=DEFAULT_TOL):
    """Evaluate the four sufficient convergence hypotheses on (A, B, C).

    parabolic of real type: B = 2 sqrt(A) sqrt(C) with Re(sqrt(A) sqrt(C)) > 0.
    The square-root branch ambiguity does not affect the condition, so both
    sign choices are tried.  The remaining three conditions are the B = 0
    elliptic/hyperbolic hypotheses and the general sufficient condition
    ||B||^2/2 + Re(A conj C) > 0, Re(A conj B) > 0, Re(B conj C) > 0.
    """
    A, B, C = complex(A), complex(B), complex(C)
    scale = max(1.0, abs(A), abs(B), abs(C))
    w = cmath.sqrt(A) * cmath.sqrt(C)
    parabolic = False
    for signed in (w, -w):
        if abs(B - 2.0 * signed) <= tol * scale and signed.real > 0:
            parabolic = True
    b_zero = abs(B) <= tol * scale
    re_ac = (A * C.conjugate()).real
    elliptic = b_zero and re_ac > 0
    hyperbolic = b_zero and re_ac < 0
    general = (
        abs(B) ** 2 / 2.0 + re_ac > 0
        and (A * B.conjugate()).real > 0
        and (B * C.conjugate()).real > 0
    )
    return ConvergenceReport(parabolic, elliptic, hyperbolic, general)


@dataclass(frozen=True)
class FrobeniusSolution:
    r0: complex
    s0: complex
    order: int
    coeffs: dict  # MultiIndex -> complex, zeros pruned, D_{0,0} = 1
    resonance_certificate: object
    convergence: ConvergenceReport = field(default=None)

    def get(self, Q):
        return self.coeffs.get(MultiIndex(*Q), 0j)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: index_key(kv[0]))

    def series(self):
        return CSeries2(self.order, self.coeffs)

    def layer_sums(self):
        """d_n = sum of coefficient magnitudes on each lattice layer."""
        sums = [0.0] * (self.order + 1)
        for (q1, q2), v in self.coeffs.items():
            sums[q1 + q2] += abs(v)
        return sums

    def to_json(self):
        out = {
            "r0": [self.r0.real, self.r0.imag],
            "s0": [self.s0.real, self.s0.imag],
            "order": self.order,
            "coeffs": [[q1, q2, v.real, v.imag] for (q1, q2), v in self.items()],
            "resonance": self.resonance_certificate.to_json(),
        }
        if self.convergence is not None:
            out["convergence"] = self.convergence.to_json()
        return out

    def to_csv_rows(self):
        return [(q1, q2, v.real, v.imag) for (q1, q2), v in self.items()]


def recurrence_rhs(pde, r, s, Q, prior):
    """The convolution term e_Q of the layer recurrence.

    e_Q = sum over (i,j) < Q of [(i+r) a_{q1-i,q2-j} + (j+s) b_{q1-i,q2-j}
    + c_{q1-i,q2-j}] D_{i,j}, i.e. every contribution except the diagonal
    (0,0)-coefficient term P(q1+r, q2+s) D_Q.  `prior` must contain every
    D_{i,j} the sum touches (zeros included).
    """
    q1, q2 = Q
    if q1 + q2 < 1:
        raise ValueError("recurrence_rhs needs |Q| >= 1")
    support = set(pde.a.coeffs) | set(pde.b.coeffs) | set(pde.c.coeffs)
    support.discard((0, 0))
    e = 0j
    for m1, m2 in sorted(support, key=index_key):
        if m1 > q1 or m2 > q2:
            continue
        i, j = q1 - m1, q2 - m2
        try:
            d = prior[(i, j)]
        except KeyError:
            raise MissingPriorCoefficient(f"prior table lacks D_({i},{j}) needed for Q={tuple(Q)}") from None
        weight = (i + r) * pde.a.get((m1, m2)) + (j + s) * pde.b.get((m1, m2)) + pde.c.get((m1, m2))
        e += weight * d
    return e


def solve(pde, r0, s0, N, tol=DEFAULT_TOL, resonance_policy="strict"):
    """Run the Frobenius recurrence up to order N at a conic point (r0, s0).

    resonance_policy "strict" refuses whenever the resonance scan reports any
    hit.  Policy "skip_removable" proceeds through hits whose convolution term
    e_Q also vanishes (the division 0*D_Q = 0 is then solved by D_Q = 0, a
    valid formal-solution choice, as in the disturbed heat model) and still
    refuses when e_Q is substantially nonzero.  The scan result is attached to
    the solution as its resonance certificate either way.

    The engine is indifferent to the convergence conditions: it computes
    formal solutions even when no sufficient condition holds.
    """
    if N < 1:
        raise ValueError("order N must be >= 1")
    if resonance_policy not in ("strict", "skip_removable"):
        raise ValueError(f"unknown resonance policy {resonance_policy!r}")
    r0 = complex(r0)
    s0 = complex(s0)
    conic = indicial_of(pde)
    base = conic.evaluate(r0, s0)
    if abs(base) >= tol:
        raise BasePointNotOnConic(
            f"({r0}, {s0}) is not on the indicial conic: |P| = {abs(base):.3e}"
        )
    certificate = resonance_scan(conic, r0, s0, N, tol)
    hit_set = {tuple(Q) for Q in certificate.hit_indices()}
    if hit_set and resonance_policy == "strict":
        raise ResonantPoint(
            f"resonant point ({r0}, {s0}): P vanishes at shifts {sorted(hit_set)}",
            certificate.hits,
        )

    table = {(0, 0): 1.0 + 0j}
    scale = 1.0
    for n in range(1, N + 1):
        for q1 in range(n + 1):
            Q = (q1, n - q1)
            e = recurrence_rhs(pde, r0, s0, Q, table)
            if Q in hit_set:
                if abs(e) <= tol * scale:
                    table[Q] = 0j
                    continue
                raise ResonantPoint(
                    f"resonant shift Q={Q} at ({r0}, {s0}) with nonzero "
                    f"convolution term |e_Q| = {abs(e):.3e}: no Frobenius "
                    "solution with this exponent pair",
                    certificate.hits,
                )
            p = conic.evaluate(r0 + Q[0], s0 + Q[1])
            d = -e / p
            table[Q] = d
            if abs(d) > scale:
                scale = abs(d)

    coeffs = {MultiIndex(*Q): v for Q, v in table.items() if v != 0}
    report = convergence_report(pde.A, pde.B, pde.C)
    return FrobeniusSolution(r0, s0, N, coeffs, certificate, report)


def radius_estimate(sol, order=None):
    """Bidisc convergence-radius estimate from layer sums d_n = sum |D_Q|.

    The Cauchy-Hadamard quantity limsup d_n^{1/n} is estimated over the top
    half of the available layers: the nonzero layers there determine, by a
    least-squares fit of log d_n against n, the geometric growth rate e^beta
    of the layer sums; the estimate is e^{-beta}.  Windowing over the top
    half dampens transients from the low-order layers, and fitting the whole
    window tolerates interleaved zero layers from sparse solutions.  Returns
    the +inf sentinel when every top-half layer vanishes or the rate
    underflows.

    Accepts a FrobeniusSolution or a plain {(q1, q2): coefficient} table
    (with `order` supplied in the latter case).
    """
    if hasattr(sol, "layer_sums"):
        sums = sol.layer_sums()
        N = sol.order
    else:
        if order is None:
            order = max((q1 + q2 for q1, q2 in sol), default=0)
        N = order
        sums = [0.0] * (N + 1)
        for (q1, q2), v in sol.items():
            if q1 + q2 <= N:
                sums[q1 + q2] += abs(v)
    if N < 10:
        raise ValueError("radius_estimate needs order N >= 10")
    window = [(n, sums[n]) for n in range(N // 2, N + 1) if sums[n] > 0.0]
    if not window:
        return math.inf
    if len(window) == 1:
        n, d = window[0]
        rate = d ** (1.0 / n)
    else:
        # least-squares slope of log d_n over the window
        xs = [float(n) for n, _ in window]
        ys = [math.log(d) for _, d in window]
        mean_x = sum(xs) / len(xs)
        mean_y = sum(ys) / len(ys)
        sxx = sum((x - mean_x) ** 2 for x in xs)
        sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
        beta = sxy / sxx if sxx > 0 else 0.0
        try:
            rate = math.exp(beta)
        except OverflowError:
            return 0.0
    if rate <= 0.0 or not math.isfinite(rate) or rate < 1e-300:
        return math.inf
    return 1.0 / rate


def prepare_coordinates(A_of_x, C_of_y):
    """Preparation transform making variable leading coefficients constant.

    Given unit series A(x) and C(y), returns (f, g) with f(0) = g(0) = 1 such
    that the substitution xi = x f(x), eta = y g(y) replaces A(x), C(y) by
    their values at the origin:  A(x) x^2 (f + x f')^2 = A(0) (x f)^2 up to
    truncation, and the same for g.  Realized as f = exp(int (w(x)-1)/x dx)
    with w = sqrt(A(0)/A(x)), where w - 1 has zero constant term so the
    division by x is an exact exponent shift.
    """
    f = _prepare_one(A_of_x, axis="x")
    g = _prepare_one(C_of_y.transpose(), axis="y").transpose()
    return f, g


def _prepare_one(series, axis):
    for (q1, q2) in series.coeffs:
        if q2 != 0:
            raise ValueError(f"coefficient series for {axis} must be univariate")
    from .errors import ZeroConstantTerm
    from .multiseries import reciprocal

    a0 = series.constant_term()
    if a0 == 0:
        raise ZeroConstantTerm("leading coefficient vanishes at the origin")
    ratio = reciprocal(series).scale(a0)  # A(0)/A(x)
    # pin the constant term to exactly 1 (a0 * (1/a0) can be off by one ulp),
    # so that w - 1 divides by x exactly
    fixed = dict(ratio.coeffs)
    fixed[(0, 0)] = 1.0
    ratio = CSeries2(ratio.order, fixed)
    w = analytic_transform(ratio, "sqrt")
    shifted = divide_by_x(w - CSeries2.one(series.order))
    return analytic_transform(analytic_transform(shifted, "antiderivative_x"), "exp")
