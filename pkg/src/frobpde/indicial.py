"""Indicial conics: construction, classification, point solving, resonance."""

from dataclasses import dataclass, field

from .errors import BasePointNotOnConic, ComplexCoefficients, NoSolution
from .multiseries import MultiIndex, index_key

#: resonance / on-conic tolerance (absolute)
DEFAULT_TOL = 1e-9

#: sentinel returned by solve_for_s when the equation degenerates to 0 = 0
ALL_SOLUTIONS = object()


@dataclass(frozen=True)
class IndicialConic:
    """P(r, s) = cA r^2 + cB rs + cC s^2 + cD r + cE s + cF."""

    cA: complex
    cB: complex
    cC: complex
    cD: complex
    cE: complex
    cF: complex

    def evaluate(self, r, s):
        return (
            self.cA * r * r
            + self.cB * r * s
            + self.cC * s * s
            + self.cD * r
            + self.cE * s
            + self.cF
        )

    def coefficients(self):
        return (self.cA, self.cB, self.cC, self.cD, self.cE, self.cF)

    @staticmethod
    def from_euler(A, B, C, D, E, F):
        """Conic of an Euler PDE: same quadratic part, D-A and E-C linear part."""
        return IndicialConic(
            complex(A), complex(B), complex(C),
            complex(D) - complex(A), complex(E) - complex(C), complex(F),
        )

    def to_json(self):
        return {
            name: [getattr(self, name).real, getattr(self, name).imag]
            for name in ("cA", "cB", "cC", "cD", "cE", "cF")
        }


def indicial_of(pde):
    """Indicial conic of a regular-singular or Euler PDE.

    For the Def. 6.1 shape the linear part is (a(0,0)-A, b(0,0)-C) and the
    constant is c(0,0); an Euler PDE (constant a=D, b=E, c=F) reduces to the
    classical (D-A) r + (E-C) s + F form.
    """
    if hasattr(pde, "D"):  # Euler PDE with scalar D, E, F
        return IndicialConic.from_euler(pde.A, pde.B, pde.C, pde.D, pde.E, pde.F)
    a0 = pde.a.constant_term()
    b0 = pde.b.constant_term()
    c0 = pde.c.constant_term()
    A, B, C = complex(pde.A), complex(pde.B), complex(pde.C)
    return IndicialConic(A, B, C, a0 - A, b0 - C, c0)


@dataclass(frozen=True)
class ConicClass:
    discriminant_class: str  # elliptic | parabolic | hyperbolic
    degenerate: bool
    degenerate_kind: str  # none | two_crossing_lines | parallel_or_repeated_lines

    def to_json(self):
        return {
            "discriminant_class": self.discriminant_class,
            "degenerate": self.degenerate,
            "degenerate_kind": self.degenerate_kind,
        }


def classify(conic, tol=DEFAULT_TOL):
    """Classification by the discriminant sign and the 3x3 determinant.

    Only real conics are classified; genuinely complex coefficients are
    refused.  The degeneracy test is relative to the maximum coefficient
    magnitude cubed, so it is invariant under scaling the conic.
    """
    coeffs = conic.coefficients()
    scale = max(abs(z) for z in coeffs)
    if scale == 0:
        raise ValueError("all conic coefficients are zero")
    if max(abs(z.imag) for z in coeffs) > tol * max(1.0, scale):
        raise ComplexCoefficients("classification requires real conic coefficients")
    A, B, C, D, E, F = (z.real for z in coeffs)

    disc = B * B - 4.0 * A * C
    quad_scale = max(abs(A), abs(B), abs(C))
    if abs(disc) <= tol * max(1.0, quad_scale) ** 2:
        discriminant_class = "parabolic"
        disc_zero = True
    else:
        discriminant_class = "elliptic" if disc < 0 else "hyperbolic"
        disc_zero = False

    det3 = (
        A * (C * F - E * E / 4.0)
        - (B / 2.0) * (B * F / 2.0 - E * D / 4.0)
        + (D / 2.0) * (B * E / 4.0 - C * D / 2.0)
    )
    degenerate = abs(det3) <= tol * scale ** 3
    if not degenerate:
        kind = "none"
    elif disc_zero:
        kind = "parallel_or_repeated_lines"
    else:
        kind = "two_crossing_lines"
    return ConicClass(discriminant_class, degenerate, kind)


def solve_for_s(conic, r):
    """Roots s of P(r, s) = 0 for fixed r.

    Returns a list of 0, 1 or 2 roots in a deterministic order, the
    ALL_SOLUTIONS sentinel when the equation degenerates to 0 = 0, and
    raises NoSolution when it degenerates to a nonzero constant.
    """
    import cmath

    r = complex(r)
    quad = conic.cC
    lin = conic.cB * r + conic.cE
    const = conic.cA * r * r + conic.cD * r + conic.cF
    if quad == 0:
        if lin == 0:
            if const == 0:
                return ALL_SOLUTIONS
            raise NoSolution(f"P({r}, s) = {const} has no root in s")
        return [-const / lin]
    disc = lin * lin - 4.0 * quad * const
    if disc == 0:
        return [-lin / (2.0 * quad)]
    root = cmath.sqrt(disc)
    roots = [(-lin + root) / (2.0 * quad), (-lin - root) / (2.0 * quad)]
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


@dataclass(frozen=True)
class ResonanceReport:
    r0: complex
    s0: complex
    bound: int
    hits: tuple  # ((q1, q2), |P(r0+q1, s0+q2)|) pairs in canonical order
    nonresonant_up_to: int = field(default=0)

    def hit_indices(self):
        return [Q for Q, _ in self.hits]

    def to_json(self):
        return {
            "r0": [self.r0.real, self.r0.imag],
            "s0": [self.s0.real, self.s0.imag],
            "bound": self.bound,
            "hits": [[q1, q2, mag] for (q1, q2), mag in self.hits],
            "nonresonant_up_to": self.nonresonant_up_to,
        }


def resonance_scan(conic, r0, s0, N, tol=DEFAULT_TOL):
    """Scan all shifts Q in N^2 \\ {0} with |Q| <= N for conic returns.

    A hit at Q means |P(r0+q1, s0+q2)| < tol, i.e. the Frobenius recurrence
    would divide by (numerically) zero there.
    """
    if N < 1:
        raise ValueError("scan bound N must be >= 1")
    r0 = complex(r0)
    s0 = complex(s0)
    base = conic.evaluate(r0, s0)
    if abs(base) >= tol:
        raise BasePointNotOnConic(
            f"({r0}, {s0}) is not on the conic: |P| = {abs(base):.3e} >= {tol:.3e}"
        )
    hits = []
    for n in range(1, N + 1):
        for q1 in range(n + 1):
            q2 = n - q1
            mag = abs(conic.evaluate(r0 + q1, s0 + q2))
            if mag < tol:
                hits.append((MultiIndex(q1, q2), mag))
    hits.sort(key=lambda h: index_key(h[0]))
    nonres = N if not hits else min(h[0][0] + h[0][1] for h in hits) - 1
    return ResonanceReport(r0, s0, N, tuple(hits), nonres)
