"""Euler-type PDEs: monomial solutions, Euler coordinates, classical
boundary families, and the integral-point families of the Diophantine
theorem.

The operator is A x^2 z_xx + B xy z_xy + C y^2 z_yy + D x z_x + E y z_y + F z.
"""

import math
from dataclasses import dataclass

from .errors import ConstraintViolated
from .indicial import DEFAULT_TOL, IndicialConic, indicial_of


@dataclass(frozen=True)
class EulerPDE:
    A: complex
    B: complex
    C: complex
    D: complex
    E: complex
    F: complex

    def __post_init__(self):
        if all(complex(v) == 0 for v in self.coefficients()):
            raise ValueError("Euler PDE needs at least one nonzero coefficient")

    def coefficients(self):
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def conic(self):
        return indicial_of(self)


@dataclass(frozen=True)
class MonomialSolution:
    r: complex
    s: complex


def monomial_check(pde, r, s, tol=DEFAULT_TOL):
    """True iff x^r y^s formally solves the Euler PDE (conic membership)."""
    return abs(pde.conic().evaluate(r, s)) < tol


def real_monomial_pair(r, s, x, y):
    """The two real solutions built from a complex monomial exponent pair.

    With r = r1 + i r2, s = s1 + i s2 and x, y > 0:
        u1 = x^r1 y^s1 (cos(r2 ln x) cos(s2 ln y) - sin(r2 ln x) sin(s2 ln y))
        u2 = x^r1 y^s1 (cos(r2 ln x) sin(s2 ln y) + sin(r2 ln x) cos(s2 ln y))
    which are the real and imaginary parts of x^r y^s.
    """
    if not (x > 0 and y > 0):
        raise ValueError("real_monomial_pair is defined for x > 0 and y > 0 only")
    r = complex(r)
    s = complex(s)
    mag = x ** r.real * y ** s.real
    alpha = r.imag * math.log(x)
    beta = s.imag * math.log(y)
    u1 = mag * (math.cos(alpha) * math.cos(beta) - math.sin(alpha) * math.sin(beta))
    u2 = mag * (math.cos(alpha) * math.sin(beta) + math.sin(alpha) * math.cos(beta))
    return (u1, u2)


def euler_coords(pde, direction):
    """Coefficient map of the substitution x = e^u, y = e^v.

    direction "to_constant" maps an Euler six-tuple to the constant-coefficient
    operator it becomes in Euler coordinates: (A,B,C,D,E,F) -> (A,B,C,D-A,E-C,F).
    direction "to_euler" is the inverse.  Accepts an EulerPDE or a six-tuple and
    returns a six-tuple.
    """
    coeffs = pde.coefficients() if isinstance(pde, EulerPDE) else tuple(pde)
    if len(coeffs) != 6:
        raise ValueError("expected six coefficients")
    A, B, C, D, E, F = coeffs
    if direction == "to_constant":
        return (A, B, C, D - A, E - C, F)
    if direction == "to_euler":
        return (A, B, C, D + A, E + C, F)
    raise ValueError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# Integral points of the three Diophantine families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeLine:
    """Integer points base + t * direction, t in Z."""

    base: tuple
    direction: tuple

    def point(self, t):
        return (self.base[0] + t * self.direction[0], self.base[1] + t * self.direction[1])

    def to_json(self):
        return {"base": list(self.base), "direction": list(self.direction)}


@dataclass(frozen=True)
class IntegerPointFamily:
    family: str
    conic: tuple  # six integers (A', B', C', D', E', F') the points satisfy
    points: tuple  # isolated integer points
    lines: tuple  # LatticeLine instances

    def all_points(self, span=3):
        out = list(self.points)
        for line in self.lines:
            out.extend(line.point(t) for t in range(-span, span + 1))
        return out

    def to_json(self):
        return {
            "family": self.family,
            "conic": list(self.conic),
            "points": [list(p) for p in self.points],
            "lines": [line.to_json() for line in self.lines],
        }


def _ext_gcd(a, b):
    """(g, u, v) with a u + b v = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _require_int(name, value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConstraintViolated(f"{name} must be an integer, got {value!r}")
    return value


def integral_points(family, A=None, B=None, C=None):
    """Integer solutions of the three Diophantine conic families.

    elliptic(A, C), AC > 0: the conic (Ar + A)^2 + (Cs + C)^2 = (AC)^2 with
        the four points (-1 +- C, -1), (-1, -1 +- A).
    parabolic(A, B, C), B^2 = 4AC, A != 0: the double line (2Ar + Bs + 2A)^2 = 0,
        solved as the lattice line 2Ar + Bs = -2A via extended gcd.
    hyperbolic(A, B), B != 0: A r^2 + B rs + B s - A = 0, whose integer points
        are the line r = -1 (s free) plus the lattice line Ar + Bs = A.
    """
    if family == "elliptic":
        _require_int("A", A)
        _require_int("C", C)
        if A * C <= 0:
            raise ConstraintViolated(f"elliptic family needs AC > 0, got A={A}, C={C}")
        conic = (A * A, 0, C * C, 2 * A * A, 2 * C * C, A * A + C * C - A * A * C * C)
        points = ((-1 + C, -1), (-1 - C, -1), (-1, -1 + A), (-1, -1 - A))
        return IntegerPointFamily("elliptic", conic, points, ())
    if family == "parabolic":
        _require_int("A", A)
        _require_int("B", B)
        _require_int("C", C)
        if B * B != 4 * A * C:
            raise ConstraintViolated(f"parabolic family needs B^2 = 4AC, got {B}^2 != 4*{A}*{C}")
        if A == 0:
            raise ConstraintViolated("parabolic family needs A != 0")
        conic = (4 * A * A, 4 * A * B, B * B, 8 * A * A, 4 * A * B, 4 * A * A)
        g, u, v = _ext_gcd(2 * A, B)
        k = (-2 * A) // g  # g divides 2A, so this is exact
        line = LatticeLine((u * k, v * k), (B // g, (-2 * A) // g))
        return IntegerPointFamily("parabolic", conic, (), (line,))
    if family == "hyperbolic":
        _require_int("A", A)
        _require_int("B", B)
        if B == 0:
            raise ConstraintViolated("hyperbolic family needs B != 0")
        conic = (A, B, 0, 0, B, -A)
        vertical = LatticeLine((-1, 0), (0, 1))  # r = -1, s free
        g, u, v = _ext_gcd(A, B)
        k = A // g
        slanted = LatticeLine((u * k, v * k), (B // g, -A // g))
        return IntegerPointFamily("hyperbolic", conic, (), (vertical, slanted))
    raise ConstraintViolated(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Classical boundary-value families (heat / wave / Laplace)
# ---------------------------------------------------------------------------


class ClassicalSolution:
    """Closed-form product solution with hand-coded analytic derivatives.

    residual(x, y) substitutes the exact partials into the constant-coefficient
    PDE the family solves (heat: a^2 z_xx = z_y; wave: z_yy = a^2 z_xx;
    Laplace: z_xx + z_yy = 0).
    """

    def __init__(self, kind, n, L, a):
        self.kind = kind
        self.n = n
        self.L = L
        self.a = a
        self.k = n * math.pi / L

    def __call__(self, x, y):
        k, a = self.k, self.a
        if self.kind == "heat":
            return math.exp(-(a * k) ** 2 * y) * math.sin(k * x)
        if self.kind == "wave_sin_sin":
            return math.sin(k * x) * math.sin(a * k * y)
        if self.kind == "wave_sin_cos":
            return math.sin(k * x) * math.cos(a * k * y)
        if self.kind == "laplace_grow":
            return math.exp(k * y) * math.sin(k * x)
        return math.exp(-k * y) * math.sin(k * x)  # laplace_decay

    # analytic partial derivatives ----------------------------------------

    def fx(self, x, y):
        k, a = self.k, self.a
        if self.kind == "heat":
            return math.exp(-(a * k) ** 2 * y) * k * math.cos(k * x)
        if self.kind == "wave_sin_sin":
            return k * math.cos(k * x) * math.sin(a * k * y)
        if self.kind == "wave_sin_cos":
            return k * math.cos(k * x) * math.cos(a * k * y)
        if self.kind == "laplace_grow":
            return math.exp(k * y) * k * math.cos(k * x)
        return math.exp(-k * y) * k * math.cos(k * x)

    def fxx(self, x, y):
        return -self.k ** 2 * self(x, y)

    def fy(self, x, y):
        k, a = self.k, self.a
        if self.kind == "heat":
            return -((a * k) ** 2) * self(x, y)
        if self.kind == "wave_sin_sin":
            return math.sin(k * x) * a * k * math.cos(a * k * y)
        if self.kind == "wave_sin_cos":
            return -math.sin(k * x) * a * k * math.sin(a * k * y)
        if self.kind == "laplace_grow":
            return k * self(x, y)
        return -k * self(x, y)

    def fyy(self, x, y):
        k, a = self.k, self.a
        if self.kind == "heat":
            return ((a * k) ** 2) ** 2 * self(x, y)
        if self.kind in ("wave_sin_sin", "wave_sin_cos"):
            return -((a * k) ** 2) * self(x, y)
        return k ** 2 * self(x, y)  # both Laplace kinds

    def residual(self, x, y):
        if self.kind == "heat":
            return self.a ** 2 * self.fxx(x, y) - self.fy(x, y)
        if self.kind in ("wave_sin_sin", "wave_sin_cos"):
            return self.fyy(x, y) - self.a ** 2 * self.fxx(x, y)
        return self.fxx(x, y) + self.fyy(x, y)


_CLASSICAL_KINDS = ("heat", "wave_sin_sin", "wave_sin_cos", "laplace_grow", "laplace_decay")


def classical_solution(kind, n, L, a=1.0):
    """Closed-form boundary family member; vanishes at x = 0 and x = L."""
    if kind not in _CLASSICAL_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {_CLASSICAL_KINDS}")
    if not (n >= 1 and L > 0 and a > 0):
        raise ValueError("need n >= 1, L > 0, a > 0")
    return ClassicalSolution(kind, n, L, a)
