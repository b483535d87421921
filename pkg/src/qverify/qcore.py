"""q-shifted factorials and product combinators.

Everything downstream (series engines, multi-index sums, quadrature,
identity checks) is built on the four operations in this module:

* ``qpoch``       -- finite (x;q)_n for any integer n (both signs),
* ``qpoch_inf``   -- the infinite product (x;q)_oo with a tracked tail bound,
* ``qpoch_multi`` -- products (a,b,...,c;q)_n over several bases,
* ``qfrac``       -- ratios of such products.

Scalars are Python complex numbers (IEEE double, >= 15 significant digits).
Integer powers of q are always computed by binary exponentiation on the
integer exponent, never through log/exp, so complex q never touches a
branch cut.  A base that coincides with a power of q (to 1e-13 relative)
is *snapped*: the corresponding product factor is forced to exactly zero,
which is what makes terminating series terminate exactly downstream.

All functions are pure; a :class:`QContext` carries q together with every
numerical policy knob (tolerances, caps, pole guard).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf
"""Order marker for q-shifted factorials of infinite order."""

# Relative tolerance for snapping a base onto the q-power grid.
SNAP_RTOL = 1e-13


class QVerifyError(Exception):
    """Base class for numerical-policy failures."""


class PoleError(QVerifyError):
    """A reciprocal or denominator factor fell inside the pole guard."""


class CapExceeded(QVerifyError):
    """An infinite product hit max_product_factors before converging."""


class DivergentSeries(QVerifyError):
    """A series showed no empirical decay within max_terms."""


class NoConvergence(QVerifyError):
    """Quadrature refinement did not stabilize within the node budget."""


class ConstraintViolation(QVerifyError):
    """A derived-parameter constraint (such as u/v = q^N) does not hold."""


class DivisionByNearZero(QVerifyError):
    """A closed-form divisor fell inside the pole guard."""


class UnknownParam(QVerifyError):
    """A parameter name is not bound in the parameter map."""


class SamplingExhausted(QVerifyError):
    """Rejection sampling found no admissible point within the attempt cap."""


class IllConditioned(QVerifyError):
    """The value cancels so strongly that doubles cannot verify it to tolerance."""


@dataclass(frozen=True)
class QContext:
    """Base q plus the numerical policy used by every operation.

    q must satisfy |q| < 1 strictly; all tolerances are positive and all
    caps at least 1.
    """

    q: complex
    series_tol: float = 1e-12
    product_tol: float = 1e-14
    max_terms: int = 10000
    max_product_factors: int = 4000
    pole_guard: float = 1e-8
    identity_tol: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "q", complex(self.q))
        if not abs(self.q) < 1.0:
            raise ValueError(f"|q| < 1 required, got |q| = {abs(self.q):.6g}")
        for name in ("series_tol", "product_tol", "pole_guard", "identity_tol"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("max_terms", "max_product_factors"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class PochhammerSpec:
    """A single q-shifted factorial: base x and order n (integer or INF)."""

    base: complex
    order: float  # any integer, or INF

    def __post_init__(self):
        n = self.order
        if n != INF and (not isinstance(n, int) or isinstance(n, bool)):
            raise ValueError("order must be an integer or INF")


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated sum or product plus how it was obtained."""

    value: complex
    abs_error_estimate: float
    terms_used: int
    terminated: bool = False
    branch_terms: tuple[int, int] | None = None

    def __post_init__(self):
        if self.abs_error_estimate < 0.0:
            raise ValueError("abs_error_estimate must be >= 0")


def ipow(x: complex, n: int) -> complex:
    """x**n by binary exponentiation on the integer exponent.

    Exact integer exponent arithmetic; no logarithms, hence no branch-cut
    trouble for complex x.  Negative n inverts the positive power.
    """
    if n < 0:
        return 1.0 / ipow(x, -n)
    result = 1.0 + 0.0j
    base = complex(x)
    while n:
        if n & 1:
            result *= base
        base *= base
        n >>= 1
    return result


def q_power_index(x: complex, q: complex, lo: int, hi: int) -> int | None:
    """Integer m in [lo, hi] with x = q^m to SNAP_RTOL relative, else None.

    The candidate exponent comes from moduli; the full complex distance is
    then checked, so a complex q with the wrong phase never snaps.
    """
    ax = abs(x)
    if ax == 0.0:
        return None
    aq = abs(q)
    if aq == 0.0:
        return 0 if (lo <= 0 <= hi and abs(x - 1.0) <= SNAP_RTOL) else None
    est = math.log(ax) / math.log(aq)
    if not math.isfinite(est):
        return None
    m0 = round(est)
    for m in (m0, m0 - 1, m0 + 1):
        if lo <= m <= hi:
            ref = ipow(q, m)
            if abs(x - ref) <= SNAP_RTOL * abs(ref):
                return m
    return None


def terminating_order(x: complex, ctx: QContext) -> int | None:
    """n >= 0 such that x = q^{-n} (so (x;q)_k = 0 exactly for k > n), else None."""
    idx = q_power_index(x, ctx.q, -ctx.max_terms, 0)
    return None if idx is None else -idx


def qpoch(x: complex, n: int, ctx: QContext) -> complex:
    """(x;q)_n for any integer n.

    n > 0 is the plain product prod_{i=0}^{n-1} (1 - x q^i), n = 0 gives 1,
    and n < 0 is the reciprocal product over j = n..-1.  Finite arithmetic
    only; a base snapped onto q^{-m} with 0 <= m < n yields exactly 0.
    Raises PoleError when a reciprocal factor falls inside the pole guard.
    """
    if n == 0:
        return 1.0 + 0.0j
    x = complex(x)
    q = ctx.q
    if n > 0:
        zero_at = terminating_order(x, ctx)
        if zero_at is not None and zero_at < n:
            return 0.0 + 0.0j
        p = 1.0 + 0.0j
        qi = 1.0 + 0.0j
        for _ in range(n):
            p *= 1.0 - x * qi
            qi *= q
        return p
    # n < 0: reciprocal product over j = n .. -1
    p = 1.0 + 0.0j
    qj = ipow(q, n)
    for _ in range(-n):
        f = 1.0 - x * qj
        if abs(f) < ctx.pole_guard:
            raise PoleError(
                f"reciprocal factor |1 - x q^j| = {abs(f):.3g} below pole guard "
                f"for base {x!r}, order {n}"
            )
        p *= f
        qj *= q
    return 1.0 / p


def qpoch_inf(x: complex, ctx: QContext) -> SeriesResult:
    """(x;q)_oo as a truncated product with a geometric tail bound.

    Truncates once |x| |q|^K has fallen below product_tol * (1 - |q|) and at
    least 3 consecutive factor deviations |x q^k| were below product_tol.
    The reported bound is |P_K| * (e^T - 1) with T the geometric tail of the
    log-factors.  A base snapped onto q^{-m}, m >= 0 gives exactly zero.
    """
    x = complex(x)
    if x == 0.0:
        return SeriesResult(1.0 + 0.0j, 0.0, 1, True)
    q = ctx.q
    aq = abs(q)
    ax = abs(x)
    m = q_power_index(x, q, -ctx.max_product_factors, 0)
    if m is not None:
        # the factor at k = -m vanishes identically
        return SeriesResult(0.0 + 0.0j, 0.0, -m + 1, True)
    p = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    small = 0
    tail_gate = ctx.product_tol * (1.0 - aq)
    for k in range(ctx.max_product_factors):
        u = x * qk
        p *= 1.0 - u
        small = small + 1 if abs(u) < ctx.product_tol else 0
        qk *= q
        head = ax * abs(qk)  # |x q^{k+1}| bounds the next deviation
        if small >= 3 and head < tail_gate:
            t = head / (1.0 - aq)
            t /= max(1.0 - head, 0.5)
            return SeriesResult(p, abs(p) * math.expm1(t), k + 1, False)
    raise CapExceeded(
        f"(x;q)_oo did not converge within {ctx.max_product_factors} factors "
        f"(|x| = {ax:.3g}, |q| = {aq:.6g})"
    )


def qpoch_spec(spec: PochhammerSpec, ctx: QContext) -> complex:
    """Evaluate a PochhammerSpec (finite order exactly, infinite truncated)."""
    if spec.order == INF:
        return qpoch_inf(spec.base, ctx).value
    return qpoch(spec.base, int(spec.order), ctx)


def qpoch_multi(bases, n, ctx: QContext) -> complex:
    """(a,b,...,c;q)_n = product of per-base q-shifted factorials.

    n is an integer or INF.  Pole and cap failures are re-raised with the
    offending base identified.
    """
    p = 1.0 + 0.0j
    for b in bases:
        try:
            if n == INF:
                p *= qpoch_inf(b, ctx).value
            else:
                p *= qpoch(b, n, ctx)
        except (PoleError, CapExceeded) as exc:
            raise type(exc)(f"base {complex(b)!r}: {exc}") from exc
    return p


def qfrac(numer, denom, n, ctx: QContext) -> complex:
    """qpoch_multi(numer, n) / qpoch_multi(denom, n), pole-guarded."""
    den = qpoch_multi(denom, n, ctx)
    if abs(den) < ctx.pole_guard:
        raise PoleError(f"denominator product magnitude {abs(den):.3g} below pole guard")
    return qpoch_multi(numer, n, ctx) / den
