#!/usr/bin/env python3
"""Re-derive the frozen constants at high precision.

The package stores zeta'(-1) (and hence the one-gap constant
c0 = (1/12) log 2 + 3 zeta'(-1)) as double-precision literals, because
none of its own kernels can evaluate the zeta derivative.  This script
reproduces them from two independent routes at 50 digits:

  1. mpmath's zeta derivative directly;
  2. the Glaisher-Kinkelin constant A via zeta'(-1) = 1/12 - log A.

Run it whenever the literals in twingap.asymptotics need auditing.
"""

import mpmath

mpmath.mp.dps = 50

route1 = mpmath.zeta(-1, derivative=1)
route2 = mpmath.mpf(1) / 12 - mpmath.log(mpmath.glaisher)
assert abs(route1 - route2) < mpmath.mpf(10) ** -45

c0 = mpmath.log(2) / 12 + 3 * route1

print("zeta'(-1)            =", mpmath.nstr(route1, 30))
print("  via Glaisher        =", mpmath.nstr(route2, 30))
print("  float64             =", repr(float(route1)))
print("c0 (one-gap constant) =", mpmath.nstr(c0, 30))
print("  float64             =", repr(float(c0)))

from twingap.asymptotics import WIDOM_DYSON_C0, ZETA_PRIME_AT_MINUS_ONE  # noqa: E402

assert abs(ZETA_PRIME_AT_MINUS_ONE - float(route1)) < 1e-16
assert abs(WIDOM_DYSON_C0 - float(c0)) < 1e-15
print("frozen package constants match.")
