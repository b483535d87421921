#!/usr/bin/env python3
"""Tour of the q-shifted factorial machinery.

Finite products of either sign, the infinite product with its tracked
tail bound, and the splicing/inversion structure that everything else
in the package leans on.
"""

from qverify import INF, QContext, ipow, qfrac, qpoch, qpoch_inf

ctx = QContext(0.5)

print("=" * 64)
print("q-shifted factorials at q = 0.5")
print("=" * 64)

print("\n(0.5; q)_2  =", qpoch(0.5, 2, ctx), " (hand value 0.375)")
print("(0.25; q)_{-1} =", qpoch(0.25, -1, ctx), " (hand value 2)")
print("(x; q)_0    =", qpoch(123.0, 0, ctx), " for any x")

euler = qpoch_inf(ctx.q, ctx)
print("\nEuler product (q; q)_oo:")
print("  value      =", euler.value.real)
print("  tail bound =", euler.abs_error_estimate)
print("  factors    =", euler.terms_used)

print("\nSplicing (x;q)_{m+n} = (x;q)_m (x q^m;q)_n:")
x, m, n = 0.3 + 0.2j, 4, -2
lhs = qpoch(x, m + n, ctx)
rhs = qpoch(x, m, ctx) * qpoch(x * ipow(ctx.q, m), n, ctx)
print(f"  m = {m}, n = {n}: |lhs - rhs| = {abs(lhs - rhs):.2e}")

print("\nInfinite/finite consistency (x;q)_oo / (x q^n;q)_oo = (x;q)_n:")
ratio = qpoch_inf(x, ctx).value / qpoch_inf(x * ipow(ctx.q, 5), ctx).value
print(f"  n = 5: deviation = {abs(ratio - qpoch(x, 5, ctx)):.2e}")

print("\nExact termination: a base snapped onto q^{-n} kills the product:")
print("  (q^{-3}; q)_5 =", qpoch(ipow(ctx.q, -3), 5, ctx), " (exactly zero)")
print("  (1; q)_oo     =", qpoch_inf(1.0, ctx).value, " (exactly zero)")

print("\nProduct ratios, e.g. (0.1;q)_oo / (0.2;q)_oo:")
print("  qfrac =", qfrac([0.1], [0.2], INF, ctx))
