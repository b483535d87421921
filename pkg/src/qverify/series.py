"""Unilateral and bilateral basic hypergeometric series engines.

``eval_phi`` sums the unilateral series

    sum_{k>=0}  prod (a_i;q)_k / [(q;q)_k prod (b_j;q)_k]
                * [(-1)^k q^{k(k-1)/2}]^{s-r} * z^k

and ``eval_psi`` the bilateral one over all integers k, split into a
nonnegative branch and a negative branch computed through reciprocal
Pochhammers of negative order.  ``eval_bilateral_split`` exposes the
split itself: the k <= -1 sum re-indexed to a k >= 0 series with its
prefactor, so the algebraic step used by the reciprocity proofs is
directly testable.

Running products carry each Pochhammer factor across consecutive k
(same factors, same order as a from-scratch product; no divisions are
introduced, so exact zeros from snapped q^{-n} bases are preserved).
Truncation policy for every non-terminating sum: stop after 3
consecutive terms below series_tol * |partial sum|, and report the
geometric tail |t_last| * rho / (1 - rho) of the observed ratio rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qcore import (
    DivergentSeries,
    PoleError,
    QContext,
    SeriesResult,
    ipow,
    q_power_index,
    terminating_order,
)

__all__ = [
    "SeriesSpec",
    "SeriesResult",
    "eval_phi",
    "eval_psi",
    "eval_bilateral_split",
    "eval_kshifted_sum",
]


@dataclass(frozen=True)
class SeriesSpec:
    """Parameter lists, argument and kind of a basic hypergeometric series.

    For ``unilateral`` the upper row holds the 1+r numerator parameters
    (the engine inserts the implicit (q;q)_k itself); for ``bilateral``
    the two rows must have equal length.
    """

    upper: tuple
    lower: tuple
    argument: complex
    kind: str = "unilateral"

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(complex(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(complex(b) for b in self.lower))
        object.__setattr__(self, "argument", complex(self.argument))
        if self.kind not in ("unilateral", "bilateral"):
            raise ValueError(f"unknown series kind {self.kind!r}")
        if self.kind == "bilateral" and len(self.upper) != len(self.lower):
            raise ValueError("bilateral series requires equal parameter counts")


def _ascending_terms(upper, lower, z, ctx, extra=None, sign_exp=0):
    """Yield t_k = prod(u;q)_k / prod(l;q)_k * [(-1)^k q^C(k,2)]^{sign_exp} * z^k.

    ``extra`` is an optional per-index factor, called once per k in order.
    The stream ends (without yielding further terms) as soon as the running
    numerator is exactly zero, which happens precisely when some upper base
    snapped onto q^{-n} and k passed n: all later terms vanish identically.
    """
    q = ctx.q
    guard = ctx.pole_guard
    upper = [complex(u) for u in upper]
    lower = [complex(b) for b in lower]
    z = complex(z)
    zero_at = [terminating_order(u, ctx) for u in upper]
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    zk = 1.0 + 0.0j
    w = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    k = 0
    while True:
        t = num / den * zk
        if sign_exp:
            t *= w
        if extra is not None:
            t *= extra(k)
        yield t
        # advance every ladder from order k to k+1
        for i, u in enumerate(upper):
            num *= 0.0 if zero_at[i] == k else 1.0 - u * qk
        if num == 0.0:
            return
        for b in lower:
            f = 1.0 - b * qk
            if abs(f) < guard:
                raise PoleError(
                    f"lower-parameter factor |1 - b q^k| = {abs(f):.3g} below pole "
                    f"guard at k = {k} (base {b!r})"
                )
            den *= f
        if sign_exp:
            w *= ipow(-qk, sign_exp)
        zk *= z
        qk *= q
        k += 1


def _descending_terms(upper, lower, z, ctx):
    """Yield the k <= -1 terms t_{-1}, t_{-2}, ... of a bilateral series.

    Uses the running ratio t_{-j} / t_{-j+1} =
    prod_l (1 - l q^{-j}) / [prod_u (1 - u q^{-j}) * z], with each factor
    pair evaluated as (q^j - l) / (q^j - u) so nothing grows with j.  A
    lower base snapped onto q^{+m} forces the factor at j = m to exact
    zero, after which every remaining term vanishes and the stream ends.
    """
    q = ctx.q
    guard = ctx.pole_guard
    upper = [complex(u) for u in upper]
    lower = [complex(b) for b in lower]
    if len(upper) != len(lower):
        raise ValueError("descending branch requires equal parameter counts")
    z = complex(z)
    if z == 0.0:
        raise DivergentSeries("bilateral series needs a nonzero argument")
    zero_at = [q_power_index(b, q, 1, ctx.max_terms) for b in lower]
    t = 1.0 + 0.0j
    qj = 1.0 + 0.0j
    j = 1
    while True:
        qj *= q
        numf = 1.0 + 0.0j
        for i, b in enumerate(lower):
            numf *= 0.0 if zero_at[i] == j else qj - b
        if numf == 0.0:
            return
        denf = 1.0 + 0.0j
        for u in upper:
            f = qj - u
            if abs(f) < guard * abs(qj):
                raise PoleError(
                    f"upper-parameter factor |1 - a q^{{-j}}| below pole guard "
                    f"at k = {-j} (base {u!r})"
                )
            denf *= f
        t *= numf / (denf * z)
        yield t
        j += 1


# rounding-floor coefficient: every summed term carries a few ulps of error,
# so sum over terms of |t_k| * _ROUND_FLOOR bounds the accumulated roundoff
_ROUND_FLOOR = 3e-16


def _sum_stream(terms, ctx):
    """Sum a term stream under the 3-consecutive-small-terms policy.

    Returns (value, abs_error_estimate, terms_used, terminated, abs_sum);
    ``terminated`` means the stream itself ended (an exact cut).  The error
    estimate combines the geometric truncation tail with a roundoff floor
    proportional to the summed term magnitudes, so cancellation between
    large terms shows up in the reported bound.
    """
    total = 0.0 + 0.0j
    small = 0
    last = 0.0
    prev = 0.0
    abs_sum = 0.0
    n = 0
    it = iter(terms)
    for _ in range(ctx.max_terms):
        try:
            t = next(it)
        except StopIteration:
            return total, _ROUND_FLOOR * abs_sum, n, True, abs_sum
        total += t
        n += 1
        at = abs(t)
        if not math.isfinite(at):
            raise DivergentSeries(f"term magnitude not finite at k = {n - 1}")
        abs_sum += at
        if at != 0.0:
            prev, last = last, at
        if at <= ctx.series_tol * abs(total):
            small += 1
            if small >= 3:
                rho = min(last / prev, 0.99) if prev > 0.0 else 0.0
                err = last * rho / (1.0 - rho) + _ROUND_FLOOR * abs_sum
                return total, err, n, False, abs_sum
        else:
            small = 0
    raise DivergentSeries(
        f"no convergence within max_terms = {ctx.max_terms} "
        f"(last |term| = {last:.3g})"
    )


def eval_phi(spec: SeriesSpec, ctx: QContext) -> SeriesResult:
    """Evaluate a unilateral (1+r)phi(s) series.

    Terminating input (an upper base snapped onto q^{-n}) is summed exactly
    through k = n with terminated=True and terms_used = n + 1; otherwise the
    standard truncation policy applies.
    """
    if spec.kind != "unilateral":
        raise ValueError("eval_phi expects a unilateral SeriesSpec")
    r = len(spec.upper) - 1
    s = len(spec.lower)
    stream = _ascending_terms(
        spec.upper,
        list(spec.lower) + [ctx.q],
        spec.argument,
        ctx,
        sign_exp=s - r,
    )
    value, err, n, terminated, _ = _sum_stream(stream, ctx)
    return SeriesResult(value, err, n, terminated)


def eval_psi(spec: SeriesSpec, ctx: QContext) -> SeriesResult:
    """Evaluate a bilateral r-psi-r series as nonnegative + negative branch.

    Each branch is truncated independently; branch_terms records the term
    counts (k >= 0 first).  The caller is responsible for the identity-level
    convergence condition; the engine enforces empirical decay only.
    """
    if spec.kind != "bilateral":
        raise ValueError("eval_psi expects a bilateral SeriesSpec")
    pos_v, pos_e, pos_n, pos_t, pos_m = _sum_stream(
        _ascending_terms(spec.upper, spec.lower, spec.argument, ctx), ctx
    )
    neg_v, neg_e, neg_n, neg_t, neg_m = _sum_stream(
        _descending_terms(spec.upper, spec.lower, spec.argument, ctx), ctx
    )
    value = pos_v + neg_v
    err = pos_e + neg_e
    return SeriesResult(
        value,
        err,
        pos_n + neg_n,
        pos_t and neg_t,
        (pos_n, neg_n),
    )


def eval_bilateral_split(spec: SeriesSpec, ctx: QContext):
    """The two components of the bilateral sum as separate SeriesResults.

    First component: the k >= 0 branch as-is.  Second component: the
    k <= -1 branch rewritten as a k >= 0 series,

        w * prod(1 - q/l) / prod(1 - q/u)
          * sum_{k>=0} prod(q^2/l;q)_k / prod(q^2/u;q)_k * w^k,

    with w = prod(l) / (prod(u) * z) -- the reflected form used by the
    reciprocity proofs.  The components sum to eval_psi's value within the
    combined error estimates; a lower parameter equal to q makes the second
    component exactly zero.
    """
    if spec.kind != "bilateral":
        raise ValueError("eval_bilateral_split expects a bilateral SeriesSpec")
    q = ctx.q
    pos_v, pos_e, pos_n, pos_t, _ = _sum_stream(
        _ascending_terms(spec.upper, spec.lower, spec.argument, ctx), ctx
    )
    first = SeriesResult(pos_v, pos_e, pos_n, pos_t)
    pref = 1.0 + 0.0j
    for b in spec.lower:
        pref *= 0.0 if q_power_index(b, q, 1, 1) == 1 else 1.0 - q / b
    if pref == 0.0:
        return first, SeriesResult(0.0 + 0.0j, 0.0, 1, True)
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for u in spec.upper:
        f = 1.0 - q / u
        if abs(f) < ctx.pole_guard:
            raise PoleError(f"reflected prefactor factor below pole guard (base {u!r})")
        den *= f
        num *= u
    w = 1.0 + 0.0j
    for b in spec.lower:
        w *= b
    w /= num * spec.argument
    pref = pref / den * w
    ref_v, ref_e, ref_n, ref_t, _ = _sum_stream(
        _ascending_terms(
            [q * q / b for b in spec.lower],
            [q * q / u for u in spec.upper],
            w,
            ctx,
        ),
        ctx,
    )
    second = SeriesResult(pref * ref_v, abs(pref) * ref_e, ref_n, ref_t)
    return first, second


def eval_kshifted_sum(termfn, ctx: QContext) -> SeriesResult:
    """Sum termfn(k) over k >= 0 under the standard truncation policy.

    For sums whose Pochhammer bases depend on k; termfn must be total and
    is called with k = 0, 1, 2, ... strictly in order (so it may keep
    incremental state of its own).
    """

    def stream():
        k = 0
        while True:
            yield termfn(k)
            k += 1

    value, err, n, terminated, _ = _sum_stream(stream(), ctx)
    return SeriesResult(value, err, n, terminated)
