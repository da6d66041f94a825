"""Jacobi theta functions with purely imaginary modulus.

theta_3 is evaluated from its lattice series

    theta_3(z; tau) = sum_m exp(2 pi i z m + pi i tau m^2),

theta_1, theta_2, theta_4 from the half-period shift relations

    theta_1(z) = i exp(-pi i z + pi i tau/4) theta_3(z - (tau+1)/2),
    theta_2(z) =   exp(-pi i z + pi i tau/4) theta_3(z - tau/2),
    theta_4(z) = theta_3(z + 1/2).

All z-derivatives (orders 0..3) are obtained by term-wise analytic
differentiation, never by finite differences.  Two numerical regimes:

* nome |q| <= 0.5: the defining series, after reducing Re z mod 1 and
  Im z mod Im tau (tracking the quasi-period factor) so the exponentials
  stay O(1);
* nome |q| > 0.5 (small Im tau, the merging regime): the imaginary
  modular transform theta_3(z; tau) = (-i tau)^{-1/2} sum_k
  exp(-(i pi / tau)(k - z)^2), whose terms decay like a Gaussian in k.

Truncation stops once the next term falls below 1e-17 of the running
maximum; exceeding the term budget raises SeriesTruncationError.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, SeriesTruncationError

_TRUNC_REL = 1e-17
# direct series beyond this nome converges too slowly; switch to the
# modular transform (|q| = 0.5 at Im tau = log 2 / pi ~ 0.2206)
_NOME_SWITCH = 0.5

_BINOM = ((1,), (1, 1), (1, 2, 1), (1, 3, 3, 1))


@dataclass(frozen=True)
class ThetaContext:
    """Immutable modulus data: tau in the upper half-plane and its nome."""

    tau: complex
    nome: complex
    max_terms: int = 4000

    def __post_init__(self):
        if not self.tau.imag > 0.0:
            raise DomainError(f"Im tau must be positive, got tau={self.tau}")

    @classmethod
    def from_tau(cls, tau: complex, max_terms: int = 4000) -> "ThetaContext":
        tau = complex(tau)
        if not tau.imag > 0.0:
            raise DomainError(f"Im tau must be positive, got tau={tau}")
        return cls(tau=tau, nome=cmath.exp(1j * math.pi * tau), max_terms=max_terms)


@dataclass(frozen=True)
class ThetaConstants:
    """Values and z-derivatives at z = 0 (theta_1(0) = 0 is omitted)."""

    theta2: float
    theta3: float
    theta4: float
    theta1_prime: float
    theta1_ppp: float
    theta3_pp: float


def _reduce(z: complex, tau: complex) -> tuple[complex, int]:
    """Shift z by n*tau + m so that |Im z| <= Im tau / 2, |Re z| <= 1/2.

    Returns the reduced point and the tau-shift count n; the integer
    shift m needs no bookkeeping (period 1).
    """
    n = int(round(z.imag / tau.imag))
    z0 = z - n * tau
    z0 = z0 - round(z0.real)
    return z0, n


def _series_direct(z0: complex, ctx: ThetaContext, kmax: int) -> list[complex]:
    """theta_3 derivatives 0..kmax at a reduced point, defining series."""
    tau = ctx.tau
    vals = [1.0 + 0j] + [0j] * kmax
    running = 1.0
    m = 1
    while True:
        qm = cmath.exp(1j * math.pi * tau * m * m)
        ep = cmath.exp(2j * math.pi * z0 * m) * qm
        em = cmath.exp(-2j * math.pi * z0 * m) * qm
        for k in range(kmax + 1):
            c = (2j * math.pi * m) ** k
            vals[k] += c * ep + (-1) ** k * c * em
        running = max(running, abs(vals[0]))
        # envelope never cancels by phase, unlike the summed term (at
        # quarter periods the +-m pair can vanish while m+1 does not)
        size = (2.0 * math.pi * m) ** kmax * (abs(ep) + abs(em))
        if size < _TRUNC_REL * max(running, 1e-300):
            return vals
        m += 1
        if m > ctx.max_terms:
            raise SeriesTruncationError(
                f"theta series did not converge within {ctx.max_terms} terms "
                f"(last term ~ {size:.3e})", bound=size)


def _series_transform(z0: complex, ctx: ThetaContext, kmax: int) -> list[complex]:
    """theta_3 derivatives 0..kmax at a reduced point, modular transform.

    Valid for purely imaginary tau = i t; each term is a Gaussian
    exp(-(pi/t)(k - z)^2) whose z-derivatives are Hermite-type
    polynomials in u = k - z.
    """
    t = ctx.tau.imag
    a = math.pi / t
    pref = 1.0 / cmath.sqrt(-1j * ctx.tau)
    vals = [0j] * 4
    k0 = int(round(z0.real))
    k = 0
    running = 0.0
    while True:
        done_small = True
        for kk in ({k0} if k == 0 else {k0 - k, k0 + k}):
            u = kk - z0
            e = cmath.exp(-a * u * u)
            terms = (e,
                     2.0 * a * u * e,
                     (4.0 * a * a * u * u - 2.0 * a) * e,
                     (8.0 * a ** 3 * u ** 3 - 12.0 * a * a * u) * e)
            for j in range(4):
                vals[j] += terms[j]
            # extra 1e-5 margin covers the Hermite polynomial growth of
            # the derivative terms relative to the bare Gaussian
            if abs(e) >= 1e-5 * _TRUNC_REL * max(running, 1e-300):
                done_small = False
        running = max(running, abs(vals[0]))
        if k > 0 and done_small:
            break
        k += 1
        if k > ctx.max_terms:
            raise SeriesTruncationError(
                "transformed theta series did not converge", bound=abs(vals[0]))
    return [pref * v for v in vals[: kmax + 1]]


def _theta3_parts(z: complex, ctx: ThetaContext, kmax: int,
                  force_branch: str | None = None
                  ) -> tuple[complex, complex, list[complex]]:
    """(log_factor, rate, raw) with
    theta_3^{(k)}(z) = e^log_factor sum_j C(k,j) rate^{k-j} raw[j].

    The quasi-period factor from the argument reduction
    theta(z0 + n tau) = exp(-2 pi i n z0 - pi i n^2 tau) theta(z0)
    is kept in log form (rate = -2 pi i n is its z-derivative), so a
    caller can fold further exponential prefactors into one exp call.
    """
    z0, n = _reduce(complex(z), ctx.tau)
    use_transform = abs(ctx.nome) > _NOME_SWITCH and abs(ctx.tau.real) < 1e-12
    if force_branch == "direct":
        use_transform = False
    elif force_branch == "transform":
        use_transform = True
    raw = (_series_transform if use_transform else _series_direct)(z0, ctx, kmax)
    if n == 0:
        return 0j, 0j, raw
    logfac = -2j * math.pi * n * z0 - 1j * math.pi * n * n * ctx.tau
    return logfac, -2j * math.pi * n, raw


def _theta3_derivs(z: complex, ctx: ThetaContext, kmax: int,
                   force_branch: str | None = None) -> list[complex]:
    """theta_3^{(k)}(z) for k = 0..kmax, with argument reduction."""
    logfac, rate, raw = _theta3_parts(z, ctx, kmax, force_branch)
    if rate == 0:
        return raw[: kmax + 1]
    fac = cmath.exp(logfac)
    out = []
    for k in range(kmax + 1):
        acc = 0j
        for j in range(k + 1):
            acc += _BINOM[k][j] * rate ** (k - j) * raw[j]
        out.append(fac * acc)
    return out


def _shifted(z: complex, ctx: ThetaContext, order: int, shift: complex,
             pref_rate: complex, pref_const: complex) -> complex:
    """order-th derivative of pref_const*exp(pref_rate*z)*theta_3(z+shift).

    Both the explicit prefactor and the reduction factor are
    exponentials linear in z, so they combine into a single exp and a
    single binomial pass with the summed rate.
    """
    logfac, red_rate, raw = _theta3_parts(complex(z) + shift, ctx, order)
    rate = pref_rate + red_rate
    acc = 0j
    for j in range(order + 1):
        acc += _BINOM[order][j] * rate ** (order - j) * raw[j]
    return pref_const * cmath.exp(pref_rate * complex(z) + logfac) * acc


def theta_eval(j: int, z: complex, ctx: ThetaContext, order: int = 0) -> complex:
    """theta_j^{(order)}(z; tau) for j in 1..4 and order in 0..3."""
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {j}")
    if order not in (0, 1, 2, 3):
        raise DomainError(f"derivative order must be 0..3, got {order}")
    if j == 1 and order % 2 == 0 and complex(z) == 0.0:
        return 0j  # theta_1 is odd
    tau = ctx.tau
    if j == 3:
        return _theta3_derivs(z, ctx, order)[order]
    if j == 4:
        return _theta3_derivs(complex(z) + 0.5, ctx, order)[order]
    quarter = cmath.exp(1j * math.pi * tau / 4.0)
    if j == 1:
        return _shifted(z, ctx, order, shift=-(tau + 1.0) / 2.0,
                        pref_rate=-1j * math.pi, pref_const=1j * quarter)
    return _shifted(z, ctx, order, shift=-tau / 2.0,
                    pref_rate=-1j * math.pi, pref_const=quarter)


def theta_constants(ctx: ThetaContext) -> ThetaConstants:
    """Series values/derivatives at z = 0.

    For purely imaginary tau all six numbers are real; tiny imaginary
    round-off is discarded.
    """
    t2 = theta_eval(2, 0.0, ctx).real
    t3 = theta_eval(3, 0.0, ctx).real
    t4 = theta_eval(4, 0.0, ctx).real
    t1p = theta_eval(1, 0.0, ctx, order=1).real
    t1ppp = theta_eval(1, 0.0, ctx, order=3).real
    t3pp = theta_eval(3, 0.0, ctx, order=2).real
    return ThetaConstants(theta2=t2, theta3=t3, theta4=t4,
                          theta1_prime=t1p, theta1_ppp=t1ppp, theta3_pp=t3pp)


# quasi-period factors under z -> z + tau, as multiples of
# exp(-2 pi i z - pi i tau); theta_1 and theta_4 pick up an extra sign.
_QP_SIGN = {1: -1.0, 2: 1.0, 3: 1.0, 4: -1.0}


def theta_quasi_period_residual(j: int, z: complex, ctx: ThetaContext) -> float:
    """|theta_j(z + tau) - factor * theta_j(z)| / max(1, |theta_j(z)|)."""
    z = complex(z)
    base = theta_eval(j, z, ctx)
    shifted = theta_eval(j, z + ctx.tau, ctx)
    # exp(-2 pi i z) has exact period 1; dropping the integer part of
    # Re z avoids rounding a large phase
    zr = z - round(z.real)
    factor = _QP_SIGN[j] * cmath.exp(-2j * math.pi * zr - 1j * math.pi * ctx.tau)
    return abs(shifted - factor * base) / max(1.0, abs(base))


def theta3_modular_residual(z: complex, ctx: ThetaContext) -> float:
    """Disagreement between the defining series and the tau -> -1/tau form.

    Both sides are summed independently (no regime switching), so this
    measures the internal consistency of the two evaluation branches.
    """
    direct = _theta3_derivs(z, ctx, 0, force_branch="direct")[0]
    transf = _theta3_derivs(z, ctx, 0, force_branch="transform")[0]
    return abs(direct - transf)
