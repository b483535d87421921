"""h-function evaluation and Askey-Wilson-type quadrature.

The integrand family lives on [0, pi]:

    h(cos 2t; 1) / h(cos t; a, b, c, d) * prod_i h(cos t; u_i) / h(cos t; v_i)

where h(x; lam) = (lam e^{it}, lam e^{-it}; q)_oo with x = cos t.  As a
function of t this extends to an even, 2*pi-periodic analytic function,
so the composite trapezoidal rule with panel doubling converges
spectrally; nodes are reused across refinements and node values are
evaluated through a vectorized infinite product sharing qcore's
truncation policy.  Closed-form right-hand sides for the q-beta integral
and its multi-variable generalizations live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    INF,
    CapExceeded,
    ConstraintViolation,
    DivisionByNearZero,
    NoConvergence,
    PoleError,
    QContext,
    ipow,
    qfrac,
    qpoch,
    qpoch_inf,
)
from .multisum import check_qpow_ratio, omega
from .series import eval_kshifted_sum

__all__ = [
    "AWIntegrandSpec",
    "QuadratureResult",
    "hfun",
    "hfun_product",
    "hfun_multi",
    "integrate_aw",
    "aw_closed_form",
    "thm_e_rhs",
    "aw_residue_correction",
    "corl_e_rhs",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AWIntegrandSpec:
    """Denominator parameters a..d plus numerator/denominator h-pairs (u, v).

    |a|, |b|, |c|, |d| < 1 and every |v_i| < 1 keep the denominator
    h-functions zero-free on the integration range.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    u: tuple = ()
    v: tuple = ()

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "u", tuple(complex(x) for x in self.u))
        object.__setattr__(self, "v", tuple(complex(x) for x in self.v))
        if len(self.u) != len(self.v):
            raise ValueError("u and v must have equal lengths")
        for lam in (self.a, self.b, self.c, self.d) + self.v:
            if not abs(lam) < 1.0:
                raise ValueError(
                    f"denominator h-parameter |{lam!r}| must be < 1 "
                    "to keep the integrand pole-free"
                )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    panels_used: int

    def __post_init__(self):
        if self.abs_error_estimate < 0.0:
            raise ValueError("abs_error_estimate must be >= 0")


def hfun(x: float, lam: complex, ctx: QContext) -> complex:
    """h(x; lam) = (lam e^{it}, lam e^{-it}; q)_oo with x = cos t, x in [-1, 1]."""
    x = float(x)
    s = math.sqrt(max(0.0, 1.0 - x * x))
    e = complex(x, s)
    return qpoch_inf(lam * e, ctx).value * qpoch_inf(lam * e.conjugate(), ctx).value


def hfun_product(x: float, lam: complex, ctx: QContext) -> complex:
    """h(x; lam) via the real product prod_k (1 - 2 q^k lam x + q^{2k} lam^2).

    Independent evaluation path kept as a cross-check oracle for hfun.
    """
    lam = complex(lam)
    if lam == 0.0:
        return 1.0 + 0.0j
    q = ctx.q
    aq = abs(q)
    al = abs(lam)
    p = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    small = 0
    gate = 0.5 * ctx.product_tol * (1.0 - aq)
    for k in range(ctx.max_product_factors):
        w = qk * lam
        p *= 1.0 - 2.0 * w * x + w * w
        small = small + 1 if abs(w) * (2.0 + abs(w)) < ctx.product_tol else 0
        qk *= q
        if small >= 3 and al * abs(qk) < gate:
            return p
    raise CapExceeded("h-function product did not converge within the factor cap")


def hfun_multi(x: float, lambdas, ctx: QContext) -> complex:
    """h(x; alpha, beta, ..., gamma) = product of single-parameter h values."""
    p = 1.0 + 0.0j
    for lam in lambdas:
        p *= hfun(x, lam, ctx)
    return p


def _qpoch_inf_vec(xs: np.ndarray, ctx: QContext):
    """(x;q)_oo over an array of bases; returns (values, relative tail bound).

    Same truncation policy as qcore.qpoch_inf, applied with the worst-case
    modulus of the batch so every entry is at least as converged.
    """
    q = ctx.q
    aq = abs(q)
    amax = float(np.max(np.abs(xs))) if xs.size else 0.0
    p = np.ones(xs.shape, dtype=complex)
    if amax == 0.0:
        return p, 0.0
    gate = ctx.product_tol * (1.0 - aq)
    qk = 1.0 + 0.0j
    small = 0
    for k in range(ctx.max_product_factors):
        p *= 1.0 - xs * qk
        small = small + 1 if amax * abs(qk) < ctx.product_tol else 0
        qk *= q
        head = amax * abs(qk)
        if small >= 3 and head < gate:
            t = head / (1.0 - aq)
            return p, math.expm1(t / max(1.0 - head, 0.5))
    raise CapExceeded("vectorized (x;q)_oo hit the factor cap")


def _aw_integrand(spec: AWIntegrandSpec, ctx: QContext):
    """Vectorized integrand over theta arrays; returns (f, n_factors).

    n_factors counts the h-functions involved, which scales the product
    error floor of each node value.
    """
    lams_den = (spec.a, spec.b, spec.c, spec.d) + spec.v
    lams_num = spec.u

    def f(thetas: np.ndarray) -> np.ndarray:
        e = np.exp(1j * thetas)
        e2 = e * e
        num, _ = _qpoch_inf_vec(e2, ctx)
        val, _ = _qpoch_inf_vec(np.conj(e2), ctx)
        num = num * val
        for lam in lams_num:
            for base in (lam * e, lam * np.conj(e)):
                val, _ = _qpoch_inf_vec(base, ctx)
                num = num * val
        den = np.ones(thetas.shape, dtype=complex)
        for lam in lams_den:
            for base in (lam * e, lam * np.conj(e)):
                val, _ = _qpoch_inf_vec(base, ctx)
                den = den * val
        return num / den

    return f, 2 * (1 + len(lams_den) + len(lams_num))


def _trapezoid_doubling(f, ctx: QContext, n_factors: int, n0: int = 8, n_max: int = 2 ** 18):
    """Composite trapezoid on [0, pi] with panel doubling and node reuse.

    Stops when successive refinements agree within
    max(1e-12 * scale, 10 * product error floor); returns
    (complex value, |last delta|, panels, deltas) with the refinement
    history exposed for spectral-behaviour checks.
    """
    h = math.pi / n0
    nodes = np.linspace(0.0, math.pi, n0 + 1)
    vals = f(nodes)
    total = h * (0.5 * vals[0] + vals[1:-1].sum() + 0.5 * vals[-1])
    n = n0
    deltas = []
    floor_rel = 10.0 * n_factors * ctx.product_tol
    while n < n_max:
        mid = np.linspace(0.0, math.pi, 2 * n + 1)[1::2]
        total_new = 0.5 * total + 0.5 * h * f(mid).sum()
        h *= 0.5
        n *= 2
        delta = abs(total_new - total)
        deltas.append(delta)
        total = total_new
        scale = max(1.0, abs(total))
        if delta <= max(1e-12 * scale, floor_rel * scale):
            return total, delta, n, deltas
    raise NoConvergence(f"quadrature did not stabilize within {n_max} panels")


def integrate_aw(spec: AWIntegrandSpec, ctx: QContext) -> QuadratureResult:
    """The Askey-Wilson-type integral over [0, pi] by spectral trapezoid.

    The value is real up to roundoff for real or conjugate-closed parameter
    sets; the imaginary residue is folded into the error estimate.
    """
    f, n_factors = _aw_integrand(spec, ctx)
    total, delta, n, _ = _trapezoid_doubling(f, ctx, n_factors)
    floor = 10.0 * n_factors * ctx.product_tol * max(1.0, abs(total))
    err = delta + floor + abs(total.imag)
    return QuadratureResult(float(total.real), float(err), int(n))


def aw_closed_form(a, b, c, d, ctx: QContext) -> complex:
    """Closed form 2 pi (abcd;q)_oo / (q, ab, ac, ad, bc, bd, cd;q)_oo."""
    return TWO_PI * qfrac(
        [a * b * c * d],
        [ctx.q, a * b, a * c, a * d, b * c, b * d, c * d],
        INF,
        ctx,
    )


def _thm_e_products(a, b, c, d, u, v, ctx: QContext) -> complex:
    """(abcd/q;q)_oo/(q,ab,ac,ad,bc,bd,cd;q)_oo * prod (du,qu/d;q)_oo/(dv,qv/d;q)_oo."""
    q = ctx.q
    value = qfrac(
        [a * b * c * d / q],
        [q, a * b, a * c, a * d, b * c, b * d, c * d],
        INF,
        ctx,
    )
    for i in range(len(u)):
        value *= qfrac(
            [d * u[i], q * u[i] / d],
            [d * v[i], q * v[i] / d],
            INF,
            ctx,
        )
    return value


def thm_e_rhs(a, b, c, d, u, v, N, ctx: QContext) -> complex:
    """Stated closed form of the multi-variable q-beta integral.

    2 pi / (1 - abcd/q^{N+1}) * (abcd/q;q)_oo / (q, ab, ..., cd;q)_oo
    * prod_i (d u_i, q u_i/d;q)_oo / (d v_i, q v_i/d;q)_oo, divided by the
    terminating multi-sum.  Requires u_i / v_i = q^{N_i}.

    Exact for N_i = 0 throughout.  For N_i >= 1 the true integral differs by
    residue contributions: the constant-term derivation behind this formula
    silently assumes its generating function is pole-free, but the function
    has poles at z = v_i q^m, m < N_i, inside the unit circle -- see
    aw_residue_correction.
    """
    q = ctx.q
    for i in range(len(u)):
        check_qpow_ratio(u[i], v[i], int(N[i]), ctx, f"u_{i+1} / v_{i+1}")
    n_total = sum(int(x) for x in N)
    lead = 1.0 - a * b * c * d * ipow(q, -(n_total + 1))
    if abs(lead) < ctx.pole_guard:
        raise PoleError("1 - abcd/q^{N+1} is inside the pole guard")
    value = TWO_PI / lead * _thm_e_products(a, b, c, d, u, v, ctx)
    div = omega(a, b, c, d, u, v, N, ctx)
    if abs(div) < ctx.pole_guard:
        raise DivisionByNearZero(f"terminating multi-sum magnitude {abs(div):.3g}")
    return value / div


def _qpoch_skip(x, k, skip, ctx):
    """(x;q)_k with the single factor at index ``skip`` removed."""
    q = ctx.q
    p = 1.0 + 0.0j
    qi = 1.0 + 0.0j
    for i in range(k):
        if i != skip:
            p *= 1.0 - x * qi
        qi *= q
    return p


def aw_residue_correction(a, b, c, d, u, v, N, ctx: QContext) -> complex:
    """The residue sum that the stated multi-variable closed form misses.

    The contour derivation expands the integrand's generating function in
    two unilateral branches; the k-th positive-branch term

        T_k(z) = (1-z^2)(1-q^{2k+1} z^2)
                 prod_lam (qz/lam;q)_k / (lam z;q)_{k+1}
                 prod_i (z u_i;q)_{k+1} (qz/v_i;q)_k
                        / [(z v_i;q)_{k+1} (qz/u_i;q)_k]
                 * (abcd/q^{N+1})^k

    has simple poles inside the unit circle at z = v_i q^m, 0 <= m < N_i
    (from the (qz/u_i;q)_k factor at index j = N_i-1-m), with residue
    res(T_k(z)/z) = -T_k with that factor deleted.  Summing the residues
    over k and dividing out the product-side constants gives the defect:

        integral  =  thm_e_rhs  +  aw_residue_correction.

    Zero when every N_i = 0.  Assumes the poles v_i q^m are pairwise
    distinct (generic parameters).
    """
    q = ctx.q
    for i in range(len(u)):
        check_qpow_ratio(u[i], v[i], int(N[i]), ctx, f"u_{i+1} / v_{i+1}")
    n_total = sum(int(x) for x in N)
    w = a * b * c * d * ipow(q, -(n_total + 1))
    if not abs(w) < 1.0:
        raise ConstraintViolation("|abcd/q^{N+1}| >= 1: residue series diverges")
    lams = (a, b, c, d)
    res_total = 0.0 + 0.0j
    for i, n_i in enumerate(int(x) for x in N):
        for m in range(n_i):
            j_star = n_i - 1 - m
            p = v[i] * ipow(q, m)

            def t_hat(k, i=i, j_star=j_star, p=p):
                k = k + j_star + 1  # poles exist only for k > j_star
                t = (1.0 - p * p) * (1.0 - ipow(q, 2 * k + 1) * p * p) * ipow(w, k)
                for lam in lams:
                    den = qpoch(lam * p, k + 1, ctx)
                    if abs(den) < ctx.pole_guard:
                        raise PoleError("residue term denominator inside pole guard")
                    t *= qpoch(q * p / lam, k, ctx) / den
                for j in range(len(u)):
                    den = qpoch(p * v[j], k + 1, ctx)
                    if j == i:
                        den *= _qpoch_skip(q * p / u[j], k, j_star, ctx)
                    else:
                        den *= qpoch(q * p / u[j], k, ctx)
                    if abs(den) < ctx.pole_guard:
                        raise PoleError("residue term denominator inside pole guard")
                    t *= qpoch(p * u[j], k + 1, ctx) * qpoch(q * p / v[j], k, ctx) / den
                return t

            res_total += eval_kshifted_sum(t_hat, ctx).value
    if res_total == 0.0:
        return 0.0 + 0.0j
    om = omega(a, b, c, d, u, v, N, ctx)
    if abs(om) < ctx.pole_guard:
        raise DivisionByNearZero(f"terminating multi-sum magnitude {abs(om):.3g}")
    return -TWO_PI * res_total * _thm_e_products(a, b, c, d, u, v, ctx) / om


def corl_e_rhs(a, b, c, u, v, m, ctx: QContext) -> complex:
    """Closed form at d = q/a, where the multi-sum divisor collapses to 1.

    2 pi / (1 - q^{-m} bc) / (q, q, ab, ac, qb/a, qc/a;q)_oo
    * prod_i (a u_i, q u_i/a;q)_oo / (a v_i, q v_i/a;q)_oo
    with m = sum m_i and u_i / v_i = q^{m_i}.
    """
    q = ctx.q
    for i in range(len(u)):
        check_qpow_ratio(u[i], v[i], int(m[i]), ctx, f"u_{i+1} / v_{i+1}")
    m_total = sum(int(x) for x in m)
    lead = 1.0 - b * c * ipow(q, -m_total)
    if abs(lead) < ctx.pole_guard:
        raise PoleError("1 - q^{-m} bc is inside the pole guard")
    value = TWO_PI / lead
    value *= qfrac(
        [],
        [q, q, a * b, a * c, q * b / a, q * c / a],
        INF,
        ctx,
    )
    for i in range(len(u)):
        value *= qfrac(
            [a * u[i], q * u[i] / a],
            [a * v[i], q * v[i] / a],
            INF,
            ctx,
        )
    return value
