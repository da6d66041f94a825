"""Complete and incomplete elliptic integrals on the two-cut geometry.

The quartic ``p(z) = (z^2 - 1)(z - v1)(z - v2)`` has square-root branch
points at -1, v1, v2, 1.  Everything downstream is driven by the six
moment integrals

    I_j = int_{v2}^{1} x^j / sqrt(|p(x)|) dx      (A-cycle)
    J_j = int_{v1}^{v2} x^j / sqrt(|p(x)|) dx     (B-cycle)

for j = 0, 1, 2, together with the complete integrals K, E and the tail
integral over (-inf, -1).  The 1/sqrt endpoint singularities are removed
by trigonometric substitution before Gauss-Legendre quadrature, so plain
fixed-order rules converge spectrally; node counts are doubled until two
successive values agree to ~1e-13.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, IllConditionedGeometryError

# Endpoints closer than this are hopeless in double precision.
MIN_ENDPOINT_GAP = 1e-12

_DEFAULT_NODES = 200
_MAX_NODES = 6400
_QUAD_TOL = 1e-13


@dataclass(frozen=True)
class GapPair:
    """Two gap endpoints v1 < v2 inside (-1, 1).

    The eigenvalue-free set is A = (-1, v1) u (v2, 1); the complementary
    band (v1, v2) separates the two gaps.
    """

    v1: float
    v2: float

    def __post_init__(self):
        if not (math.isfinite(self.v1) and math.isfinite(self.v2)):
            raise DomainError("gap endpoints must be finite")
        if not (-1.0 < self.v1 < self.v2 < 1.0):
            raise DomainError(
                f"need -1 < v1 < v2 < 1, got v1={self.v1}, v2={self.v2}"
            )

    @property
    def nu(self) -> float:
        """Half-width of the band between the gaps."""
        return 0.5 * (self.v2 - self.v1)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.v1 + self.v2)

    def reflected(self) -> "GapPair":
        """The x -> -x image (-v2, -v1); the determinant is invariant."""
        return GapPair(-self.v2, -self.v1)


@dataclass(frozen=True)
class EllipticData:
    """A- and B-cycle moment integrals of 1/sqrt|p|.

    The even moments I0, I2, J0, J2 are strictly positive; the first
    moments carry the sign of the x-weight and go negative when their
    interval straddles 0.  Cauchy-Schwarz ties them: I0 I2 >= I1^2.
    """

    I0: float
    I1: float
    I2: float
    J0: float
    J1: float
    J2: float

    def __post_init__(self):
        for name in ("I0", "I2", "J0", "J2"):
            if getattr(self, name) <= 0.0:
                raise IllConditionedGeometryError(
                    f"{name} must be positive, got {getattr(self, name)}"
                )


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _refine(value_at: Callable[[int], float], start: int = _DEFAULT_NODES,
            tol: float = _QUAD_TOL, nmax: int = _MAX_NODES) -> float:
    """Double the node count until two successive values agree to tol."""
    n = start
    prev = value_at(n)
    while n < nmax:
        n *= 2
        cur = value_at(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


def integrate_both_sqrt(f, a: float, b: float, n: int) -> float:
    """int_a^b f(x)/sqrt((x-a)(b-x)) dx via x = a + (b-a) sin^2(theta).

    f must be smooth on [a, b]; the substitution absorbs both inverse
    square-root endpoint factors exactly (the Jacobian is 2 dtheta).
    """
    t, w = _leggauss(n)
    theta = (t + 1.0) * (math.pi / 4.0)
    x = a + (b - a) * np.sin(theta) ** 2
    return float(np.sum(w * (math.pi / 4.0) * 2.0 * f(x)))


def integrate_left_sqrt(f, a: float, b: float, n: int) -> float:
    """int_a^b f(x)/sqrt(b-x) dx via x = b - (b-a) u^2 (singular at b)."""
    t, w = _leggauss(n)
    u = (t + 1.0) / 2.0
    x = b - (b - a) * u * u
    return 2.0 * math.sqrt(b - a) * float(np.sum(w * 0.5 * f(x)))


def integrate_right_sqrt(f, a: float, b: float, n: int) -> float:
    """int_a^b f(x)/sqrt(x-a) dx via x = a + (b-a) u^2 (singular at a)."""
    t, w = _leggauss(n)
    u = (t + 1.0) / 2.0
    x = a + (b - a) * u * u
    return 2.0 * math.sqrt(b - a) * float(np.sum(w * 0.5 * f(x)))


def integrate_smooth(f, a: float, b: float, n: int) -> complex:
    """Plain Gauss-Legendre on [a, b] for smooth (possibly complex) f."""
    t, w = _leggauss(n)
    x = (t + 1.0) * (b - a) / 2.0 + a
    return complex(np.sum(w * (b - a) / 2.0 * f(x)))


def complete_elliptic(v: float) -> tuple[float, float]:
    """Complete elliptic integrals (K(v), E(v)) of modulus v in [0, 1).

    K by the arithmetic-geometric mean, E by the companion sum
    E/K = 1 - sum 2^(n-1) c_n^2 with c_0 = v.  Quadratic convergence
    terminates in at most ~8 iterations at double precision.
    """
    if not (0.0 <= v < 1.0):
        raise DomainError(f"complete_elliptic requires 0 <= v < 1, got {v}")
    a, b = 1.0, math.sqrt(1.0 - v * v)
    c = v
    csum = 0.5 * c * c  # 2^{n-1} c_n^2 starting at n = 0
    pow2 = 0.5
    for _ in range(40):
        if abs(a - b) < 1e-16 * a:
            break
        a, b, c = (a + b) / 2.0, math.sqrt(a * b), (a - b) / 2.0
        pow2 *= 2.0
        csum += pow2 * c * c
    K = math.pi / (2.0 * a)
    E = K * (1.0 - csum)
    return K, E


def elliptic_data(gap: GapPair, tol: float = _QUAD_TOL) -> EllipticData:
    """The six moment integrals I_j, J_j for a valid gap pair.

    On (v2, 1):  |p| = (x - v2)(1 - x) * (1 + x)(x - v1), and the first
    two factors are absorbed by the sin^2 substitution; likewise on
    (v1, v2) with the roles swapped.  Absolute accuracy ~1e-13.
    """
    v1, v2 = gap.v1, gap.v2
    if min(v1 + 1.0, v2 - v1, 1.0 - v2) < MIN_ENDPOINT_GAP:
        raise IllConditionedGeometryError(
            f"endpoints too close for reliable quadrature: {gap}"
        )

    def I_j(j: int) -> float:
        f = lambda x: x ** j / np.sqrt((1.0 + x) * (x - v1))
        return _refine(lambda n: integrate_both_sqrt(f, v2, 1.0, n), tol=tol)

    def J_j(j: int) -> float:
        f = lambda x: x ** j / np.sqrt((1.0 - x) * (1.0 + x))
        return _refine(lambda n: integrate_both_sqrt(f, v1, v2, n), tol=tol)

    return EllipticData(I0=I_j(0), I1=I_j(1), I2=I_j(2),
                        J0=J_j(0), J1=J_j(1), J2=J_j(2))


def elliptic_v2_derivatives(gap: GapPair) -> tuple[float, float, float, float]:
    """Closed-form (dI0, dI1, dI2, dJ0) with respect to the edge v2.

    dI0 = (-I2 + (v1+v2)/2 I1 + v2 (v2-v1)/2 I0) / ((1-v2^2)(v2-v1)),
    dI1 = I0/2 + v2 dI0,
    dI2 = v2^2 dI0 + I1/2 + v2 I0/2,
    and dJ0 takes the same rational form as dI0 with J's in place of I's.
    """
    v1, v2 = gap.v1, gap.v2
    e = elliptic_data(gap)
    denom = (1.0 - v2 * v2) * (v2 - v1)
    mid = 0.5 * (v1 + v2)
    dI0 = (-e.I2 + mid * e.I1 + 0.5 * v2 * (v2 - v1) * e.I0) / denom
    dI1 = 0.5 * e.I0 + v2 * dI0
    dI2 = v2 * v2 * dI0 + 0.5 * e.I1 + 0.5 * v2 * e.I0
    dJ0 = (-e.J2 + mid * e.J1 + 0.5 * v2 * (v2 - v1) * e.J0) / denom
    return dI0, dI1, dI2, dJ0


def tail_integral(gap: GapPair, tol: float = _QUAD_TOL) -> float:
    """int_{-inf}^{-1} dx / sqrt(p(x)), real and positive.

    The substitution x = -1/t maps onto t in (0, 1]:

        int_0^1 dt / sqrt((1 - t^2)(1 + v1 t)(1 + v2 t)),

    and t = sin^2(theta) then removes the t = 1 endpoint singularity.
    """
    v1, v2 = gap.v1, gap.v2

    def f(t):
        return 1.0 / np.sqrt((1.0 + t) * (1.0 + v1 * t) * (1.0 + v2 * t))

    return _refine(lambda n: integrate_left_sqrt(f, 0.0, 1.0, n), tol=tol)
