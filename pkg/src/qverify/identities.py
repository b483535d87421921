"""Registry of reciprocity-type and q-beta-integral identities as checkable objects.

Every identity is an :class:`IdentityCase`: named free parameters with
sampling annuli, integer parameters with ranges, derived-parameter rules,
a convergence-domain predicate, and a left/right evaluator pair.
``check`` runs one case at one parameter point and produces a
:class:`VerificationReport`; ``sample`` draws admissible points
deterministically from a seed.

Numerical notes that shape the evaluators:

* Reciprocity left-hand sides are differences F(a,b) - F(b,a) whose value
  is often orders of magnitude below each half.  They are summed as a
  single termwise-differenced stream, so the truncation rule acts on the
  difference itself and the a = b diagonal cancels to an exact zero.
* The q-power weights (q^{k(k+1)/2}, q^{k(5k+3)/2}, ...) and the
  k-dependent bases q^{-k} b/y advance by exact integer-exponent ladders;
  no logarithms are involved anywhere.
* The sums with k-dependent Pochhammer bases pair each descending factor
  with one power of q from the quadratic weight, so no intermediate
  quantity ever overflows.
"""

from __future__ import annotations

import cmath
import dataclasses
import hashlib
import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from .qcore import (
    INF,
    CapExceeded,
    ConstraintViolation,
    DivergentSeries,
    DivisionByNearZero,
    IllConditioned,
    NoConvergence,
    PoleError,
    QContext,
    SamplingExhausted,
    UnknownParam,
    ipow,
    q_power_index,
    qfrac,
    qpoch,
)
from .qcore import SNAP_RTOL
from .series import SeriesSpec, _ascending_terms, eval_kshifted_sum, eval_phi, eval_psi
from .multisum import milne_rhs_block
from .integrals import (
    AWIntegrandSpec,
    corl_e_rhs,
    integrate_aw,
    thm_e_rhs,
)

__all__ = [
    "IdentityCase",
    "VerificationReport",
    "registry",
    "case_ids",
    "get_case",
    "check",
    "sample",
    "idem",
    "swap_params",
    "eval_rho",
    "eval_R",
    "eval_rho_prime",
    "eval_S",
    "eval_multivar_rho",
]

_SKIP_ERRORS = (
    PoleError,
    CapExceeded,
    DivergentSeries,
    NoConvergence,
    ConstraintViolation,
    DivisionByNearZero,
    IllConditioned,
)

# convergence-domain slack: sampled |z| stays below this fraction of the
# paper's strict bound so truncated tails stay within the error budget
_SLACK = 0.92

# margin (relative to |q^j|) by which denominator bases must clear the
# q-power grid; closer approaches are rejected by the domain predicate
_POLE_MARGIN = 1e-5


# ---------------------------------------------------------------------------
# parameter-map utilities


def swap_params(params: dict, x: str, y: str) -> dict:
    """The parameter map with the values of x and y interchanged."""
    if x not in params or y not in params:
        missing = x if x not in params else y
        raise UnknownParam(f"parameter {missing!r} is not bound")
    out = dict(params)
    out[x], out[y] = params[y], params[x]
    return out


def idem(expr, x: str, y: str, mode: str = "subtract"):
    """Combinator for the 'expression repeated with x and y interchanged' idiom.

    mode="subtract" gives expr(params) - expr(swapped); mode="add" gives the
    additive flavour used by the R(...;f,g) + R(...;g,f) right-hand sides.
    """
    if mode not in ("subtract", "add"):
        raise ValueError("mode must be 'subtract' or 'add'")

    def evaluator(params, ctx):
        base = expr(params, ctx)
        swapped = expr(swap_params(params, x, y), ctx)
        return base - swapped if mode == "subtract" else base + swapped

    return evaluator


def _grid_clear(values, ctx, lo=-60, hi=60, margin=_POLE_MARGIN):
    """True when no value sits *near* a power q^j, lo <= j <= hi.

    Guards bases against the q-power grid, where ladder factors vanish and
    residuals lose meaning.  A value that snaps *onto* the grid (within the
    exact-zero detection tolerance) is allowed through: such points are
    degenerate by construction (e.g. the a = b diagonal) and evaluate
    exactly; only the ill-conditioned annulus around a grid point rejects.
    """
    q = ctx.q
    aq = abs(q)
    if aq == 0.0:
        return True
    llog = math.log(aq)
    for v in values:
        av = abs(v)
        if av == 0.0 or not math.isfinite(av):
            continue
        jf = math.log(av) / llog
        j0 = math.floor(jf)
        for j in (j0 - 1, j0, j0 + 1, j0 + 2):
            if lo <= j <= hi:
                ref = ipow(q, j)
                dist = abs(v - ref)
                scale = max(abs(ref), 1e-12)
                if SNAP_RTOL * scale < dist < margin * scale:
                    return False
    return True


# ---------------------------------------------------------------------------
# series building blocks


def _sum_terms(termfn, ctx: QContext) -> complex:
    return eval_kshifted_sum(termfn, ctx).value


# share of identity_tol that any single numerical error floor may consume
# before a point is declared unverifiable in double precision (skipped,
# resampled); several floors can stack per identity, hence the small share
_COND_SHARE = 0.05


def _require_verifiable(value, abs_err, ctx: QContext):
    """Raise IllConditioned when the error floor swamps the value."""
    if value != 0.0 and abs_err > _COND_SHARE * ctx.identity_tol * abs(value):
        raise IllConditioned(
            f"error floor {abs_err:.2e} exceeds the budget for |value| = {abs(value):.2e}"
        )
    return value


def _guarded_series_value(result, ctx: QContext) -> complex:
    return _require_verifiable(result.value, result.abs_error_estimate, ctx)


def _sum_with_guard(parts, ctx: QContext) -> complex:
    """Sum closed-form pieces, skipping when they cancel beyond verifiability.

    Each piece carries a relative error around series_tol, so the sum's
    floor is series_tol times the magnitude scale of the pieces.
    """
    total = sum(parts)
    scale = sum(abs(p) for p in parts)
    return _require_verifiable(total, 1e-12 * scale, ctx)


def _pair_rhs(piece, x: str, y: str):
    """R(...;x,y) + R(...;y,x) with a cancellation guard."""

    def evaluator(params, ctx):
        a = piece(params, ctx)
        b = piece(swap_params(params, x, y), ctx)
        return _sum_with_guard((a, b), ctx)

    return evaluator


def _diff_sum(term_a, term_b, ctx: QContext, scale_b=1.0) -> complex:
    """Sum of term_a(k) - scale_b * term_b(k) as one termwise stream.

    Truncation acts on the difference, so reciprocity-type cancellation
    does not inflate the tail; the roundoff floor tracks the *half* term
    magnitudes, and a point whose difference sits below that floor raises
    IllConditioned (an exactly-zero stream, e.g. the a = b diagonal, is
    exact and passes through).
    """
    total = 0.0 + 0.0j
    small = 0
    last = 0.0
    prev = 0.0
    half_sum = 0.0
    for k in range(ctx.max_terms):
        ta = term_a(k)
        tb = scale_b * term_b(k)
        d = ta - tb
        total += d
        m = max(abs(ta), abs(tb))
        ad = abs(d)
        if not (math.isfinite(m) and math.isfinite(ad)):
            raise DivergentSeries(f"difference term not finite at k = {k}")
        half_sum += m
        if ad != 0.0:
            prev, last = last, ad
        if ad <= ctx.series_tol * abs(total):
            small += 1
            if small >= 3:
                rho = min(last / prev, 0.99) if prev > 0.0 else 0.0
                err = last * rho / (1.0 - rho) + 3e-16 * half_sum
                return _require_verifiable(total, err, ctx)
        else:
            small = 0
    raise DivergentSeries(f"no convergence within max_terms = {ctx.max_terms}")


def _ratio_termfn(upper, lower, z, ctx, extra=None):
    """Stateful k -> term closure over the shared ascending-ladder stream."""
    gen = _ascending_terms(upper, lower, z, ctx, extra=extra)
    state = {"done": False}

    def term(k):
        if state["done"]:
            return 0.0 + 0.0j
        try:
            return next(gen)
        except StopIteration:
            state["done"] = True
            return 0.0 + 0.0j

    return term


def _vwp_extra(coef, q, odd=True):
    """Stateful extra(k) -> 1 - coef * q^{2k+1} (or q^{2k} with odd=False)."""
    state = {"p": q if odd else 1.0 + 0.0j}

    def extra(k):
        val = 1.0 - coef * state["p"]
        state["p"] *= q * q
        return val

    return extra


def _triangular_weight(q):
    """Stateful extra(k) -> q^{k(k+1)/2}."""
    state = {"w": 1.0 + 0.0j, "step": q}

    def extra(k):
        val = state["w"]
        state["w"] *= state["step"]
        state["step"] *= q
        return val

    return extra


def _compose_extras(*extras):
    def extra(k):
        val = 1.0 + 0.0j
        for e in extras:
            val *= e(k)
        return val

    return extra


def _rho_termfn(a, b, ups, low_shift, z, ctx, inv_b_power=1):
    """Term closure for the reciprocity-family sums.

    (1/b^p) (1 - a q^{2k+1}/b) (-1/b;q)_{k+1}/(-qa;q)_k
        * prod (ups;q)_k / prod (low_shift;q)_{k+1} * z^k

    with every (x;q)_{k+1} folded into a constant (1-x) and a shifted
    ladder base qx.  ``ups``/``low_shift`` hold the raw bases (signs
    included, e.g. -q*a/c and -c/b).
    """
    q = ctx.q
    const = ipow(1.0 / b, inv_b_power) * (1.0 + 1.0 / b)
    shifted = []
    for x in low_shift:
        f = 1.0 - x
        if abs(f) < ctx.pole_guard:
            raise PoleError(f"(x;q)_(k+1) leading factor below pole guard (base {x!r})")
        const /= f
        shifted.append(q * x)
    upper = list(ups) + [-q / b]
    lower = [-q * a] + shifted
    extra = _vwp_extra(a / b, q)
    inner = _ratio_termfn(upper, lower, z, ctx, extra=extra)

    def term(k):
        return const * inner(k)

    return term


def _jacobi_termfn(v_coef, asc0, desc, desc_off, lows, quad_coef, z, ctx):
    """Term closure for the triple/quintuple-product family sums.

    term_k = (1 - v_coef q^{2k+1}) (asc0;q)_k
             * prod_i (q^{-k-off_i} w_i;q)_k / prod_j (lows_j;q)_{k+1}
             * q^{((2p+3)k^2 + (2p+1)k)/2} * z^k        with 2p+3 = len(desc).

    Each descending factor is paired with one q^{k+1} from the quadratic
    weight, so all intermediates stay bounded.  quad_coef is len(desc) and
    must equal the k^2-coefficient of the weight.
    """
    q = ctx.q
    if quad_coef != len(desc):
        raise ValueError("quadratic weight must match the descending factor count")
    wprime = [w * ipow(q, -off) for w, off in zip(desc, desc_off)]
    # exact-zero positions: w' = q^{m}, m >= 1 makes the step factor at
    # k+1 = m vanish identically, terminating the sum exactly
    zero_step = [q_power_index(w, q, 1, ctx.max_terms) for w in wprime]
    asc0_zero = q_power_index(asc0, q, -ctx.max_terms, 0)
    u = 1.0 + 0.0j
    for l in lows:
        f = 1.0 - l
        if abs(f) < ctx.pole_guard:
            raise PoleError(f"(x;q)_(k+1) leading factor below pole guard (base {l!r})")
        u /= f
    state = {
        "u": u,
        "qk": 1.0 + 0.0j,   # q^k
        "qk1": q,           # q^{k+1}
        "q2k1": q,          # q^{2k+1}
        "k": -1,
    }

    def term(k):
        t = (1.0 - v_coef * state["q2k1"]) * state["u"]
        # advance to k+1
        ratio = z / q
        ratio *= 0.0 if asc0_zero is not None and -asc0_zero == k else 1.0 - asc0 * state["qk"]
        for i, w in enumerate(wprime):
            ratio *= 0.0 if zero_step[i] == k + 1 else state["qk1"] - w
        for l in lows:
            f = 1.0 - l * state["qk1"]
            if abs(f) < ctx.pole_guard:
                raise PoleError(f"ladder factor below pole guard (base {l!r}, k={k})")
            ratio /= f
        state["u"] *= ratio
        state["qk"] *= q
        state["qk1"] *= q
        state["q2k1"] *= q * q
        state["k"] = k
        return t

    return term


# ---------------------------------------------------------------------------
# named evaluators for the "where" blocks


def eval_rho(a, b, c, d, e, f, g, ctx: QContext) -> complex:
    """The seven-variable reciprocity sum (weight (cdefg/q a^2 b^2)^k)."""
    z = c * d * e * f * g / (ctx.q * a * a * b * b)
    ks = (c, d, e, f, g)
    term = _rho_termfn(
        a, b, [-ctx.q * a / p for p in ks], [-p / b for p in ks], z, ctx, 1
    )
    return _sum_terms(term, ctx)


def eval_R(a, b, c, d, e, f, g, ctx: QContext) -> complex:
    """Closed-form block on the right of the seven-variable reciprocity formula."""
    q = ctx.q
    a0 = d * e * g / (a * b * f)
    s0 = cmath.sqrt(a0)
    pref = (1.0 / g) * (1.0 / b - 1.0 / a)
    pref *= qfrac(
        [q, c, f, q * a / b, q * b / a],
        [-q * a, -q * b, -c / a, -c / b, -d / a],
        INF,
        ctx,
    )
    pref *= qfrac(
        [
            -q * a / g, -q * b / g, q * d / f, q * e / f,
            c * f / (a * b), d * f / (a * b), e * f / (a * b),
            d * e * g / (a * b), c * d * e * g / (a * a * b * b),
        ],
        [
            -d / b, -e / a, -e / b, -f / a, -f / b,
            f / g, q * a * b / (f * g), q * d * e * g / (a * b * f),
            c * d * e * f * g / (q * a * a * b * b),
        ],
        INF,
        ctx,
    )
    phi = eval_phi(
        SeriesSpec(
            upper=[a0, q * s0, -q * s0, d * e / (a * b), d * g / (a * b),
                   e * g / (a * b), q / f, q * a * b / (c * f)],
            lower=[s0, -s0, q * g / f, q * e / f, q * d / f,
                   d * e * g / (a * b), c * d * e * g / (a * a * b * b)],
            argument=c,
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def eval_rho_prime(a, b, c, d, e, f, n, ctx: QContext) -> complex:
    """The terminating-flavoured reciprocity sum of the q^n corollary."""
    q = ctx.q
    z = c * d * e / (a * b * ipow(q, n + 1))
    ups = [-q * a / c, -q * a / d, -q * a / e, -q * a / f, -ipow(q, 1 + n) * f / b]
    lows = [-c / b, -d / b, -e / b, -f / b, -a / (f * ipow(q, n))]
    return _sum_terms(_rho_termfn(a, b, ups, lows, z, ctx, 1), ctx)


def eval_S(x, y, b, c, d, e, f, ctx: QContext) -> complex:
    """Closed-form block of the triple/quintuple-product generalization."""
    q = ctx.q
    xy2 = x * y * y
    pref = x * x * y / f
    pref *= qfrac(
        [q, q * x, 1.0 / x, e, q * d / e],
        [y, b / y, c / y, d / y, e / y],
        INF,
        ctx,
    )
    pref *= qfrac(
        [q * y / f, q * x * y / f, q * xy2 / e, b * c / xy2, b * e / xy2,
         c * e / xy2, d * e / xy2, b * d * f / xy2, c * d * f / xy2],
        [x * y, b / (x * y), c / (x * y), d / (x * y), e / (x * y),
         e / f, q * d * f / e, q * xy2 / (e * f),
         b * c * d * e * f / (q * x * x * y ** 4)],
        INF,
        ctx,
    )
    a0 = d * f / e
    s0 = cmath.sqrt(a0)
    phi = eval_phi(
        SeriesSpec(
            upper=[a0, q * s0, -q * s0, d, f, d * f / xy2,
                   q * xy2 / (b * e), q * xy2 / (c * e)],
            lower=[s0, -s0, q * f / e, q * d / e, q * xy2 / e,
                   b * d * f / xy2, c * d * f / xy2],
            argument=b * c / xy2,
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def eval_multivar_rho(a, b, c, d, e, xs, ys, N, ctx: QContext) -> complex:
    """The multi-pair reciprocity sum (weight (cde/ab q^{N+1})^k, prefactor b^-n)."""
    q = ctx.q
    n = len(xs)
    n_total = sum(int(t) for t in N)
    z = c * d * e / (a * b * ipow(q, n_total + 1))
    ups = [-q * a / c, -q * a / d, -q * a / e]
    lows = [-c / b, -d / b, -e / b]
    for i in range(n):
        ups += [-q * a / xs[i], -q * a / ys[i]]
        lows += [-xs[i] / b, -ys[i] / b]
    return _sum_terms(_rho_termfn(a, b, ups, lows, z, ctx, n), ctx)


# ---------------------------------------------------------------------------
# identity case plumbing


@dataclass(frozen=True)
class IdentityCase:
    """A named identity with sampler, domain predicate and evaluator pair."""

    id: str
    family: str                       # "series" | "reciprocity" | "integral"
    sampler: Callable                 # (rng, ctx, mode) -> params dict
    domain: Callable                  # (params, ctx) -> bool
    lhs: Callable                     # (params, ctx) -> complex
    rhs: Callable                     # (params, ctx) -> complex
    default_mode: str = "complex"
    param_names: tuple = ()
    vector_names: tuple = ()


@dataclass(frozen=True)
class VerificationReport:
    id: str
    sample_seed: int | None
    params: dict
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    verdict: str                      # "pass" | "fail" | "skipped"
    reason: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        """JSON-ready dict; complex values become [re, im] pairs."""
        return {
            "id": self.id,
            "sample_seed": self.sample_seed,
            "params": serialize_params(self.params),
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "verdict": self.verdict,
            "reason": self.reason,
            "elapsed": self.elapsed,
        }


def serialize_params(params: dict) -> dict:
    """Flatten a parameter map for reports: complex -> [re, im], vectors -> name1.."""
    out = {}
    for name in sorted(params):
        val = params[name]
        if isinstance(val, (list, tuple)):
            for i, item in enumerate(val, start=1):
                out[f"{name}{i}"] = _ser_scalar(item)
        else:
            out[name] = _ser_scalar(val)
    return out


def _ser_scalar(val):
    if isinstance(val, bool):
        raise TypeError("boolean parameters are not supported")
    if isinstance(val, int):
        return val
    val = complex(val)
    if val.imag == 0.0:
        return val.real
    return [val.real, val.imag]


# samplers -------------------------------------------------------------------


def _draw(rng, lo, hi, mode):
    r = lo + (hi - lo) * rng.random()
    if mode == "real":
        return complex(r if rng.random() < 0.5 else -r)
    phase = 2.0 * math.pi * rng.random()
    return r * complex(math.cos(phase), math.sin(phase))


def _scalar_sampler(names, lo=0.1, hi=0.9, boxes=None, ints=None):
    """Sampler for cases with scalar free parameters only.

    ``boxes`` overrides (lo, hi) per name; ``ints`` maps a name to a tuple
    of admissible integer values.
    """
    boxes = boxes or {}

    def sampler(rng, ctx, mode):
        params = {}
        if ints:
            for name, choices in ints.items():
                params[name] = choices[rng.randrange(len(choices))]
        for name in names:
            blo, bhi = boxes.get(name, (lo, hi))
            params[name] = _draw(rng, blo, bhi, mode)
        return params

    return sampler


def _conv_ok(*ratios):
    return all(abs(r) < _SLACK for r in ratios)


# ---------------------------------------------------------------------------
# the twenty cases

_CASES = []


def _register(case: IdentityCase):
    _CASES.append(case)
    return case


# -- watson -------------------------------------------------------------

def _watson_lhs(p, ctx):
    q = ctx.q
    a, b, c, d, e, n = p["a"], p["b"], p["c"], p["d"], p["e"], p["n"]
    sa = cmath.sqrt(a)
    z = ipow(q, n + 2) * a * a / (b * c * d * e)
    spec = SeriesSpec(
        upper=[a, q * sa, -q * sa, b, c, d, e, ipow(q, -n)],
        lower=[sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e, ipow(q, 1 + n) * a],
        argument=z,
    )
    return _guarded_series_value(eval_phi(spec, ctx), ctx)


def _watson_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e, n = p["a"], p["b"], p["c"], p["d"], p["e"], p["n"]
    lead = qfrac([q * a, q * a / (d * e)], [q * a / d, q * a / e], n, ctx)
    phi = eval_phi(
        SeriesSpec(
            upper=[ipow(q, -n), d, e, q * a / (b * c)],
            lower=[q * a / b, q * a / c, d * e * ipow(q, -n) / a],
            argument=q,
        ),
        ctx,
    )
    return lead * _guarded_series_value(phi, ctx)


def _watson_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    guards = [q * a / b, q * a / c, q * a / d, q * a / e,
              ipow(q, 1 + p["n"]) * a, d * e * ipow(q, -p["n"]) / a, a]
    return _grid_clear(guards, ctx)


_register(IdentityCase(
    id="watson",
    family="series",
    sampler=_scalar_sampler("abcde", ints={"n": (0, 1, 2, 3, 5, 8)}),
    domain=_watson_domain,
    lhs=_watson_lhs,
    rhs=_watson_rhs,
    param_names=("a", "b", "c", "d", "e", "n"),
))


# -- bailey-6psi6 -------------------------------------------------------

def _bailey_denominators(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    return [q / b, q / c, q / d, q / e, q * a / b, q * a / c, q * a / d, q * a / e,
            q * a * a / (b * c * d * e), b, c, d, e, a]


def _bailey_lhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    sa = cmath.sqrt(a)
    spec = SeriesSpec(
        upper=[q * sa, -q * sa, b, c, d, e],
        lower=[sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e],
        argument=q * a * a / (b * c * d * e),
        kind="bilateral",
    )
    return _guarded_series_value(eval_psi(spec, ctx), ctx)


def _bailey_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    return qfrac(
        [q, q * a, q / a, q * a / (b * c), q * a / (b * d), q * a / (b * e),
         q * a / (c * d), q * a / (c * e), q * a / (d * e)],
        [q / b, q / c, q / d, q / e, q * a / b, q * a / c, q * a / d, q * a / e,
         q * a * a / (b * c * d * e)],
        INF,
        ctx,
    )


def _bailey_domain(p, ctx):
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    z = ctx.q * a * a / (b * c * d * e)
    return _conv_ok(z) and _grid_clear(_bailey_denominators(p, ctx), ctx)


_register(IdentityCase(
    id="bailey-6psi6",
    family="series",
    sampler=_scalar_sampler("abcde"),
    domain=_bailey_domain,
    lhs=_bailey_lhs,
    rhs=_bailey_rhs,
    param_names=("a", "b", "c", "d", "e"),
))


# -- ramanujan-reciprocity ----------------------------------------------

def _rama_half(a, b, ctx):
    q = ctx.q
    const = 1.0 + 1.0 / b
    inner = _ratio_termfn([], [-q * a], -a / b, ctx, extra=_triangular_weight(q))
    return lambda k: const * inner(k)


def _rama_lhs(p, ctx):
    a, b = p["a"], p["b"]
    return _diff_sum(_rama_half(a, b, ctx), _rama_half(b, a, ctx), ctx)


def _rama_rhs(p, ctx):
    q = ctx.q
    a, b = p["a"], p["b"]
    return (1.0 / b - 1.0 / a) * qfrac(
        [q, q * a / b, q * b / a], [-q * a, -q * b], INF, ctx
    )


_register(IdentityCase(
    id="ramanujan-reciprocity",
    family="reciprocity",
    sampler=_scalar_sampler("ab"),
    domain=lambda p, ctx: _grid_clear([-p["a"], -p["b"], p["a"] / p["b"]], ctx),
    lhs=_rama_lhs,
    rhs=_rama_rhs,
    param_names=("a", "b"),
))


# -- andrews-4var --------------------------------------------------------

def _andrews_half(a, b, c, d, ctx):
    q = ctx.q
    f = 1.0 + c / b
    if abs(f) < ctx.pole_guard:
        raise PoleError("1 + c/b below pole guard")
    const = (1.0 + 1.0 / b) / f
    inner = _ratio_termfn([c, -q * a / d], [-q * a, -q * c / b], -d / b, ctx)
    return lambda k: const * inner(k)


def _andrews_lhs(p, ctx):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return _diff_sum(_andrews_half(a, b, c, d, ctx), _andrews_half(b, a, c, d, ctx), ctx)


def _andrews_rhs(p, ctx):
    q = ctx.q
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return (1.0 / b - 1.0 / a) * qfrac(
        [q, q * a / b, q * b / a, c, d, c * d / (a * b)],
        [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b],
        INF,
        ctx,
    )


def _andrews_domain(p, ctx):
    q = ctx.q
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return _conv_ok(d / a, d / b) and _grid_clear(
        [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b], ctx
    )


_register(IdentityCase(
    id="andrews-4var",
    family="reciprocity",
    sampler=_scalar_sampler("abcd"),
    domain=_andrews_domain,
    lhs=_andrews_lhs,
    rhs=_andrews_rhs,
    param_names=("a", "b", "c", "d"),
))


# -- kang-equivalent -----------------------------------------------------

def _kang_half(a, b, c, d, ctx):
    q = ctx.q
    f = (1.0 + c / b) * (1.0 + d / b)
    if abs(f) < ctx.pole_guard:
        raise PoleError("(1 + c/b)(1 + d/b) below pole guard")
    const = (1.0 + 1.0 / b) / f
    extra = _compose_extras(
        _vwp_extra(-c * d / b, q, odd=False), _triangular_weight(q)
    )
    inner = _ratio_termfn(
        [c, d, c * d / (a * b)], [-q * a, -q * c / b, -q * d / b], -a / b, ctx, extra
    )
    return lambda k: const * inner(k)


def _kang_lhs(p, ctx):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return _diff_sum(_kang_half(a, b, c, d, ctx), _kang_half(b, a, c, d, ctx), ctx)


_register(IdentityCase(
    id="kang-equivalent",
    family="reciprocity",
    sampler=_scalar_sampler("abcd"),
    domain=_andrews_domain,
    lhs=_kang_lhs,
    rhs=_andrews_rhs,
    param_names=("a", "b", "c", "d"),
))


# -- ma-5var --------------------------------------------------------------

def _ma_half(a, b, c, d, e, ctx):
    q = ctx.q
    ks = (c, d, e)
    z = c * d * e / (q * (a * b))  # (a*b) grouping keeps z bitwise a<->b symmetric
    return _rho_termfn(a, b, [-q * a / p for p in ks], [-p / b for p in ks], z, ctx, 0)


def _ma_lhs(p, ctx):
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    return _diff_sum(_ma_half(a, b, c, d, e, ctx), _ma_half(b, a, c, d, e, ctx), ctx)


def _ma_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    return (1.0 / b - 1.0 / a) * qfrac(
        [q, q * a / b, q * b / a, c, d, e,
         c * d / (a * b), c * e / (a * b), d * e / (a * b)],
        [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b,
         c * d * e / (q * a * b)],
        INF,
        ctx,
    )


def _ma_domain(p, ctx):
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    z = c * d * e / (ctx.q * a * b)
    return _conv_ok(z) and _grid_clear(
        [-ctx.q * a, -ctx.q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b, z],
        ctx,
    )


_register(IdentityCase(
    id="ma-5var",
    family="reciprocity",
    sampler=_scalar_sampler("abcde"),
    domain=_ma_domain,
    lhs=_ma_lhs,
    rhs=_ma_rhs,
    param_names=("a", "b", "c", "d", "e"),
))


# -- chu-zhang-equivalent --------------------------------------------------

def _cz_half(a, b, c, d, e, ctx):
    q = ctx.q
    f = 1.0 + c / b
    if abs(f) < ctx.pole_guard:
        raise PoleError("1 + c/b below pole guard")
    const = (1.0 + 1.0 / b) / f
    inner = _ratio_termfn(
        [c, -q * a / d, -q * a / e],
        [-q * a, q * q * (a * b) / (d * e), -q * c / b],
        q,
        ctx,
    )
    return lambda k: const * inner(k)


def _cz_correction(a, b, c, d, e, ctx):
    q = ctx.q
    pref = d * e / (q * a * b) * (1.0 + 1.0 / b)
    pref *= qfrac(
        [q, c, -q * a / d, -q * a / e, -d * e / b, -c * d * e / (a * b * b)],
        [-q * a, -c / b, -d / b, -e / b, q * q * a * b / (d * e),
         c * d * e / (q * a * b)],
        INF,
        ctx,
    )
    phi = eval_phi(
        SeriesSpec(
            upper=[-d / b, -e / b, c * d * e / (q * a * b)],
            lower=[-d * e / b, -c * d * e / (a * b * b)],
            argument=q,
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def _cz_lhs(p, ctx):
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    return _diff_sum(_cz_half(a, b, c, d, e, ctx), _cz_half(b, a, c, d, e, ctx), ctx)


def _cz_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    # first product: numerator entry de/qab; the commonly stated de/ab
    # fails numerically by exactly the factor (1 - de/qab)
    main = (1.0 / b - 1.0 / a) * qfrac(
        [q, q * a / b, q * b / a, c, d, e,
         c * d / (a * b), c * e / (a * b), d * e / (q * a * b)],
        [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b,
         c * d * e / (q * a * b)],
        INF,
        ctx,
    )
    return _sum_with_guard(
        (main, _cz_correction(a, b, c, d, e, ctx), -_cz_correction(b, a, c, d, e, ctx)),
        ctx,
    )


def _cz_domain(p, ctx):
    a, b, c, d, e = p["a"], p["b"], p["c"], p["d"], p["e"]
    z = c * d * e / (ctx.q * a * b)
    guards = [-ctx.q * a, -ctx.q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b,
              z, ctx.q * ctx.q * a * b / (d * e), -d * e / a, -d * e / b,
              -c * d * e / (a * b * b), -c * d * e / (b * a * a)]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="chu-zhang-equivalent",
    family="reciprocity",
    sampler=_scalar_sampler("abcde"),
    domain=_cz_domain,
    lhs=_cz_lhs,
    rhs=_cz_rhs,
    param_names=("a", "b", "c", "d", "e"),
))


# -- gr-2-10-1 -------------------------------------------------------------

def _gr2101_lhs(p, ctx):
    q = ctx.q
    a, b, c, d, e, f = (p[k] for k in "abcdef")
    sa = cmath.sqrt(a)
    spec = SeriesSpec(
        upper=[a, q * sa, -q * sa, b, c, d, e, f],
        lower=[sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e, q * a / f],
        argument=q * q * a * a / (b * c * d * e * f),
    )
    return _guarded_series_value(eval_phi(spec, ctx), ctx)


def _gr2101_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e, f = (p[k] for k in "abcdef")
    lam = q * a * a / (b * c * d)
    sl = cmath.sqrt(lam)
    pref = qfrac(
        [q * a, q * a / (e * f), q * lam / e, q * lam / f],
        [q * a / e, q * a / f, q * lam, q * lam / (e * f)],
        INF,
        ctx,
    )
    phi = eval_phi(
        SeriesSpec(
            upper=[lam, q * sl, -q * sl, lam * b / a, lam * c / a, lam * d / a, e, f],
            lower=[sl, -sl, q * a / b, q * a / c, q * a / d, q * lam / e, q * lam / f],
            argument=q * a / (e * f),
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def _gr2101_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e, f = (p[k] for k in "abcdef")
    lam = q * a * a / (b * c * d)
    guards = [q * a / b, q * a / c, q * a / d, q * a / e, q * a / f,
              q * lam, q * lam / e, q * lam / f, q * lam / (e * f), a, lam]
    return _conv_ok(q * a / (e * f), q * lam / (e * f)) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="gr-2-10-1",
    family="series",
    sampler=_scalar_sampler(
        "abcdef",
        boxes={"a": (0.2, 0.6), "b": (0.4, 0.9), "c": (0.4, 0.9), "d": (0.4, 0.9),
               "e": (0.5, 0.9), "f": (0.5, 0.9)},
    ),
    domain=_gr2101_domain,
    lhs=_gr2101_lhs,
    rhs=_gr2101_rhs,
    param_names=("a", "b", "c", "d", "e", "f"),
))


# -- the 8psi8 pair: gr-5-6-1 and lemma-8psi8 --------------------------------

def _psi8_lhs(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    sa = cmath.sqrt(a)
    spec = SeriesSpec(
        upper=[q * sa, -q * sa, b, c, d, e, f, g],
        lower=[sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e, q * a / f, q * a / g],
        argument=q * q * a ** 3 / (b * c * d * e * f * g),
        kind="bilateral",
    )
    return _guarded_series_value(eval_psi(spec, ctx), ctx)


def _gr561_piece(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    z = q * q * a ** 3 / (b * c * d * e * f * g)
    pref = qfrac(
        [q, q * a, q / a, q * a / (b * f), q * a / (c * f), q * a / (d * f),
         q * a / (e * f), q * f / b, q * f / c, q * f / d, q * f / e, g, g / a],
        [q / b, q / c, q / d, q / e, q / f, q * a / b, q * a / c, q * a / d,
         q * a / e, q * a / f, g / f, f * g / a, q * f * f / a],
        INF,
        ctx,
    )
    s0 = f / cmath.sqrt(a)
    phi = eval_phi(
        SeriesSpec(
            upper=[f * f / a, q * s0, -q * s0, b * f / a, c * f / a, d * f / a,
                   e * f / a, g * f / a],
            lower=[s0, -s0, q * f / b, q * f / c, q * f / d, q * f / e, q * f / g],
            argument=z,
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def _psi8_guards(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    vals = [a, g / f, f / g, f * g / a, q * f * f / a, q * g * g / a]
    for t in (b, c, d, e, f, g):
        vals += [q * a / t, q / t, t]
    return vals


def _gr561_domain(p, ctx):
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    z = ctx.q ** 2 * a ** 3 / (b * c * d * e * f * g)
    return _conv_ok(z) and _grid_clear(_psi8_guards(p, ctx), ctx)


_register(IdentityCase(
    id="gr-5-6-1",
    family="series",
    sampler=_scalar_sampler(
        "abcdefg",
        boxes={"a": (0.3, 0.75), "b": (0.5, 0.9), "c": (0.5, 0.9), "d": (0.5, 0.9),
               "e": (0.5, 0.9), "f": (0.5, 0.9), "g": (0.5, 0.9)},
    ),
    domain=_gr561_domain,
    lhs=_psi8_lhs,
    rhs=_pair_rhs(_gr561_piece, "f", "g"),
    param_names=("a", "b", "c", "d", "e", "f", "g"),
))


def _lemma_piece(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    z = q * q * a ** 3 / (b * c * d * e * f * g)
    pref = qfrac(
        [q, q * a, q / a, q * a / (b * c), q * a / (b * f), q * a / (c * f),
         q * a / (d * f), q * a / (e * f), q * f / d, q * f / e, g, g / a,
         q * q * a * a / (b * d * e * g), q * q * a * a / (c * d * e * g)],
        [q / b, q / c, q / d, q / e, q / f, q * a / b, q * a / c, q * a / d,
         q * a / e, q * a / f, g / f, f * g / a,
         q * q * a * f / (d * e * g), z],
        INF,
        ctx,
    )
    a0 = q * a * f / (d * e * g)
    s0 = cmath.sqrt(a0)
    phi = eval_phi(
        SeriesSpec(
            upper=[a0, q * s0, -q * s0, q * a / (d * e), q * a / (d * g),
                   q * a / (e * g), b * f / a, c * f / a],
            lower=[s0, -s0, q * f / g, q * f / e, q * f / d,
                   q * q * a * a / (b * d * e * g), q * q * a * a / (c * d * e * g)],
            argument=q * a / (b * c),
        ),
        ctx,
    )
    return pref * _guarded_series_value(phi, ctx)


def _lemma_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    z = q * q * a ** 3 / (b * c * d * e * f * g)
    guards = _psi8_guards(p, ctx) + [
        q * q * a * f / (d * e * g), q * q * a * g / (d * e * f),
        q * q * a * a / (b * d * e * g), q * q * a * a / (c * d * e * g),
        q * q * a * a / (b * d * e * f), q * q * a * a / (c * d * e * f),
    ]
    return _conv_ok(z, q * a / (b * c)) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="lemma-8psi8",
    family="series",
    sampler=_scalar_sampler(
        "abcdefg",
        boxes={"a": (0.3, 0.7), "b": (0.55, 0.9), "c": (0.55, 0.9), "d": (0.5, 0.9),
               "e": (0.5, 0.9), "f": (0.5, 0.9), "g": (0.5, 0.9)},
    ),
    domain=_lemma_domain,
    lhs=_psi8_lhs,
    rhs=_pair_rhs(_lemma_piece, "f", "g"),
    param_names=("a", "b", "c", "d", "e", "f", "g"),
))


# -- thm-a-7var --------------------------------------------------------------

def _thma_lhs(p, ctx):
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    q = ctx.q
    ab = a * b
    z = c * d * e * f * g / (q * ab * ab)
    ks = (c, d, e, f, g)

    def half(a1, b1):
        return _rho_termfn(
            a1, b1, [-q * a1 / t for t in ks], [-t / b1 for t in ks], z, ctx, 1
        )

    return _diff_sum(half(a, b), half(b, a), ctx)


def _thma_rhs_piece(p, ctx):
    return eval_R(p["a"], p["b"], p["c"], p["d"], p["e"], p["f"], p["g"], ctx)


def _thma_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e, f, g = (p[k] for k in "abcdefg")
    z = c * d * e * f * g / (q * a * a * b * b)
    guards = [-q * a, -q * b]
    for t in (c, d, e, f, g):
        guards += [-t / a, -t / b]
    for ff, gg in ((f, g), (g, f)):
        guards += [ff / gg, q * a * b / (ff * gg), q * d * e * gg / (a * b * ff),
                   z, d * e * gg / (a * b * ff),
                   d * e * gg / (a * b), c * d * e * gg / (a * a * b * b)]
    return _conv_ok(z, c) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="thm-a-7var",
    family="reciprocity",
    sampler=_scalar_sampler("abcdefg", boxes={"a": (0.35, 0.9), "b": (0.35, 0.9)}),
    domain=_thma_domain,
    lhs=_thma_lhs,
    rhs=_pair_rhs(_thma_rhs_piece, "f", "g"),
    param_names=("a", "b", "c", "d", "e", "f", "g"),
))


# -- corl-a ------------------------------------------------------------------

def _corla_lhs(p, ctx):
    a, b, c, d, e, f, n = (p[k] for k in ("a", "b", "c", "d", "e", "f", "n"))
    q = ctx.q
    z = c * d * e / (a * b * ipow(q, n + 1))

    def half(a1, b1):
        ups = [-q * a1 / c, -q * a1 / d, -q * a1 / e, -q * a1 / f,
               -ipow(q, 1 + n) * f / b1]
        lows = [-c / b1, -d / b1, -e / b1, -f / b1, -a1 / (f * ipow(q, n))]
        return _rho_termfn(a1, b1, ups, lows, z, ctx, 1)

    return _diff_sum(half(a, b), half(b, a), ctx)


def _corla_rhs(p, ctx):
    a, b, c, d, e, f, n = (p[k] for k in ("a", "b", "c", "d", "e", "f", "n"))
    q = ctx.q
    lead = _ma_rhs({"a": a, "b": b, "c": c, "d": d, "e": e}, ctx)
    lead *= f * ipow(q, n) / (a * b)
    lead *= qfrac([q * f / e, e * f / (a * b)], [], n, ctx)
    lead /= qpoch(-f / a, n + 1, ctx) * qpoch(-f / b, n + 1, ctx)
    phi = eval_phi(
        SeriesSpec(
            upper=[ipow(q, -n), q / e, q * a * b / (c * e), q * a * b / (d * e)],
            lower=[ipow(q, 1 - n) * a * b / (e * f), q * f / e,
                   q * q * a * b / (c * d * e)],
            argument=q,
        ),
        ctx,
    )
    return lead * _guarded_series_value(phi, ctx)


def _corla_domain(p, ctx):
    a, b, c, d, e, f, n = (p[k] for k in ("a", "b", "c", "d", "e", "f", "n"))
    q = ctx.q
    z = c * d * e / (a * b * ipow(q, n + 1))
    guards = [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b,
              -f / a, -f / b, -a / (f * ipow(q, n)), -b / (f * ipow(q, n)),
              c * d * e / (q * a * b),
              ipow(q, 1 - n) * a * b / (e * f), q * f / e,
              q * q * a * b / (c * d * e)]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="corl-a",
    family="reciprocity",
    sampler=_scalar_sampler(
        "abcdef",
        boxes={"a": (0.45, 0.9), "b": (0.45, 0.9), "c": (0.1, 0.4),
               "d": (0.1, 0.4), "e": (0.1, 0.4), "f": (0.3, 0.8)},
        ints={"n": (0, 1, 2, 3, 4)},
    ),
    domain=_corla_domain,
    lhs=_corla_lhs,
    rhs=_corla_rhs,
    param_names=("a", "b", "c", "d", "e", "f", "n"),
))


# -- thm-b -------------------------------------------------------------------

def _thmb_lhs(p, ctx):
    q = ctx.q
    x, y, b, c, d, e, f = (p[k] for k in ("x", "y", "b", "c", "d", "e", "f"))
    ps = (b, c, d, e, f)
    t1 = _jacobi_termfn(
        1.0 / x, q / (x * y), [t / y for t in ps], [0] * 5,
        [y] + [t / (x * y) for t in ps], 5, -y / (x * x), ctx
    )
    t2 = _jacobi_termfn(
        x, q / y, [t / (x * y) for t in ps], [0] * 5,
        [x * y] + [t / y for t in ps], 5, -x ** 3 * y, ctx
    )
    return _diff_sum(t1, t2, ctx, scale_b=x * x)


def _thmb_rhs_piece(p, ctx):
    return eval_S(p["x"], p["y"], p["b"], p["c"], p["d"], p["e"], p["f"], ctx)


def _thmb_domain(p, ctx):
    q = ctx.q
    x, y, b, c, d, e, f = (p[k] for k in ("x", "y", "b", "c", "d", "e", "f"))
    xy2 = x * y * y
    z1 = b * c * d * e * f / (q * x * x * y ** 4)
    z2 = b * c / xy2
    guards = [x, y, x * y]
    for t in (b, c, d, e, f):
        guards += [t / y, t / (x * y)]
    for ee, ff in ((e, f), (f, e)):
        guards += [ee / ff, q * d * ff / ee, q * xy2 / (ee * ff), z1,
                   q * ff / ee, q * d / ee, q * xy2 / ee,
                   b * d * ff / xy2, c * d * ff / xy2, d * ff / ee]
    return _conv_ok(z1, z2) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="thm-b",
    family="series",
    sampler=_scalar_sampler(
        "xybcdef",
        boxes={"x": (0.5, 0.9), "y": (0.55, 0.9), "b": (0.1, 0.35),
               "c": (0.1, 0.35), "d": (0.1, 0.4), "e": (0.15, 0.5), "f": (0.15, 0.5)},
    ),
    domain=_thmb_domain,
    lhs=_thmb_lhs,
    rhs=_pair_rhs(_thmb_rhs_piece, "e", "f"),
    param_names=("x", "y", "b", "c", "d", "e", "f"),
))


# -- corl-b ------------------------------------------------------------------

def _corlb_lhs(p, ctx):
    q = ctx.q
    x, y, b, c, d, e, n = (p[k] for k in ("x", "y", "b", "c", "d", "e", "n"))
    t1 = _jacobi_termfn(
        1.0 / x, q / (x * y),
        [b / y, c / y, d / y, e / y, x * y / e], [0, 0, 0, 0, n],
        [y, b / (x * y), c / (x * y), d / (x * y), e / (x * y),
         ipow(q, -n) * y / e],
        5, -y / (x * x), ctx,
    )
    t2 = _jacobi_termfn(
        x, q / y,
        [b / (x * y), c / (x * y), d / (x * y), e / (x * y), y / e], [0, 0, 0, 0, n],
        [x * y, b / y, c / y, d / y, e / y, ipow(q, -n) * x * y / e],
        5, -x ** 3 * y, ctx,
    )
    return _diff_sum(t1, t2, ctx, scale_b=x * x)


def _corlb_rhs(p, ctx):
    q = ctx.q
    x, y, b, c, d, e, n = (p[k] for k in ("x", "y", "b", "c", "d", "e", "n"))
    xy2 = x * y * y
    lead = qfrac(
        [q, x, q / x, b, c, d, b * c / xy2, b * d / xy2, c * d / xy2],
        [y, x * y, b / y, c / y, d / y, b / (x * y), c / (x * y), d / (x * y),
         b * c * d / (q * xy2)],
        INF,
        ctx,
    )
    lead *= e * ipow(q, n) / (-y)
    lead *= qfrac([e, q * e / xy2], [], n, ctx)
    lead /= qpoch(e / y, n + 1, ctx) * qpoch(e / (x * y), n + 1, ctx)
    phi = eval_phi(
        SeriesSpec(
            upper=[ipow(q, -n), q / b, q / c, q / d],
            lower=[ipow(q, 1 - n) / e, q * e / xy2, q * q * xy2 / (b * c * d)],
            argument=q,
        ),
        ctx,
    )
    return lead * _guarded_series_value(phi, ctx)


def _corlb_domain(p, ctx):
    q = ctx.q
    x, y, b, c, d, e, n = (p[k] for k in ("x", "y", "b", "c", "d", "e", "n"))
    xy2 = x * y * y
    z = b * c * d / (xy2 * ipow(q, n + 1))
    guards = [x, y, x * y, e / y, e / (x * y),
              ipow(q, -n) * y / e, ipow(q, -n) * x * y / e,
              ipow(q, 1 - n) / e, q * e / xy2, q * q * xy2 / (b * c * d),
              b * c * d / (q * xy2)]
    for t in (b, c, d):
        guards += [t / y, t / (x * y)]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="corl-b",
    family="series",
    sampler=_scalar_sampler(
        "xybcde",
        boxes={"x": (0.5, 0.9), "y": (0.55, 0.9), "b": (0.1, 0.35),
               "c": (0.1, 0.35), "d": (0.1, 0.35), "e": (0.25, 0.7)},
        ints={"n": (0, 1, 2, 3, 4)},
    ),
    domain=_corlb_domain,
    lhs=_corlb_lhs,
    rhs=_corlb_rhs,
    param_names=("x", "y", "b", "c", "d", "e", "n"),
))


# -- lemma-milne ----------------------------------------------------------------

def _milne_params(rng, ctx, mode):
    n = rng.randrange(4)
    N = [rng.randrange(4) for _ in range(n)]
    params = {
        "a": _draw(rng, 0.1, 0.45, mode),
        "b": _draw(rng, 0.4, 0.9, mode),
        "c": _draw(rng, 0.4, 0.9, mode),
        "d": _draw(rng, 0.4, 0.9, mode),
        "e": _draw(rng, 0.4, 0.9, mode),
        "n": n,
        "N": N,
        "x": [_draw(rng, 0.25, 0.8, mode) for _ in range(n)],
    }
    params["y"] = [
        ipow(ctx.q, 1 + N[i]) * params["a"] / params["x"][i] for i in range(n)
    ]
    return params


def _milne_lhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = (p[k] for k in "abcde")
    xs, ys, N = p["x"], p["y"], p["N"]
    sa = cmath.sqrt(a)
    z = ipow(q, 1 - sum(N)) * a * a / (b * c * d * e)
    upper = [q * sa, -q * sa, b, c, d, e]
    lower = [sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e]
    for i in range(len(xs)):
        upper += [xs[i], ys[i]]
        lower += [q * a / xs[i], q * a / ys[i]]
    return _guarded_series_value(
        eval_psi(SeriesSpec(upper=upper, lower=lower, argument=z, kind="bilateral"), ctx),
        ctx,
    )


def _milne_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = (p[k] for k in "abcde")
    xs, ys, N = p["x"], p["y"], p["N"]
    value = _bailey_rhs(p, ctx)
    for i in range(len(xs)):
        value *= qfrac(
            [xs[i], xs[i] / a, q * e / ys[i], q * a / (e * ys[i])],
            [xs[i] / e, e * xs[i] / a, q / ys[i], q * a / ys[i]],
            INF,
            ctx,
        )
    return value * milne_rhs_block(a, b, c, d, e, xs, ys, N, ctx)


def _milne_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e = (p[k] for k in "abcde")
    xs, ys, N = p["x"], p["y"], p["N"]
    z = ipow(q, 1 - sum(N)) * a * a / (b * c * d * e)
    guards = _bailey_denominators(p, ctx)
    for i in range(len(xs)):
        guards += [xs[i], ys[i], q * a / xs[i], q * a / ys[i],
                   xs[i] / e, e * xs[i] / a, q / ys[i],
                   q * e / xs[i], q * e / ys[i], b * c * d * e / (a * a)]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="lemma-milne",
    family="series",
    sampler=_milne_params,
    domain=_milne_domain,
    lhs=_milne_lhs,
    rhs=_milne_rhs,
    param_names=("a", "b", "c", "d", "e", "n"),
    vector_names=("x", "y", "N"),
))


# -- thm-c-multivar ---------------------------------------------------------

def _thmc_params(rng, ctx, mode):
    n = rng.randrange(4)
    N = [rng.randrange(4) for _ in range(n)]
    params = {
        "a": _draw(rng, 0.45, 0.9, mode),
        "b": _draw(rng, 0.45, 0.9, mode),
        "c": _draw(rng, 0.1, 0.4, mode),
        "d": _draw(rng, 0.1, 0.4, mode),
        "e": _draw(rng, 0.1, 0.4, mode),
        "n": n,
        "N": N,
        "x": [_draw(rng, 0.3, 0.8, mode) for _ in range(n)],
    }
    params["y"] = [
        params["a"] * params["b"] / (params["x"][i] * ipow(ctx.q, N[i]))
        for i in range(n)
    ]
    return params


def _thmc_lhs(p, ctx):
    a, b = p["a"], p["b"]
    q = ctx.q
    xs, ys, N = p["x"], p["y"], p["N"]
    n = len(xs)
    n_total = sum(int(t) for t in N)
    z = p["c"] * p["d"] * p["e"] / (a * b * ipow(q, n_total + 1))

    def half(a1, b1):
        ups = [-q * a1 / p["c"], -q * a1 / p["d"], -q * a1 / p["e"]]
        lows = [-p["c"] / b1, -p["d"] / b1, -p["e"] / b1]
        for i in range(n):
            ups += [-q * a1 / xs[i], -q * a1 / ys[i]]
            lows += [-xs[i] / b1, -ys[i] / b1]
        return _rho_termfn(a1, b1, ups, lows, z, ctx, n)

    return _diff_sum(half(a, b), half(b, a), ctx)


def _thmc_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, e = (p[k] for k in "abcde")
    xs, ys, N = p["x"], p["y"], p["N"]
    n = len(xs)
    for i in range(n):
        expected = ipow(q, int(N[i]))
        ratio = a * b / (xs[i] * ys[i])
        if abs(ratio - expected) > 1e-12 * abs(expected):
            raise ConstraintViolation(f"ab/(x_{i+1} y_{i+1}) is not q^{N[i]}")
    value = _ma_rhs(p, ctx)
    for i in range(n):
        value /= xs[i]
        value *= qfrac(
            [-q * a / xs[i], -q * b / xs[i], q * ys[i] / e, e * ys[i] / (a * b)],
            [e / xs[i], q * a * b / (e * xs[i]), -ys[i] / a, -ys[i] / b],
            INF,
            ctx,
        )
    if n == 0:
        return value
    ab = a * b

    def final_factor(m_n, M_n):
        t = qpoch(xs[-1] * ys[-1] / ab, m_n, ctx) / qpoch(q, m_n, ctx)
        t *= qfrac(
            [q / e, q * ab / (c * e), q * ab / (d * e)],
            [q * xs[-1] / e, q * ys[-1] / e, q * q * ab / (c * d * e)],
            M_n,
            ctx,
        )
        return t * ipow(q, M_n)

    def partial_factor(s, m_s, M_s):
        t = qpoch(xs[s] * ys[s] / ab, m_s, ctx) / qpoch(q, m_s, ctx)
        t *= qfrac(
            [q * ab / (e * xs[s + 1]), q * ab / (e * ys[s + 1])],
            [q * xs[s] / e, q * ys[s] / e],
            M_s,
            ctx,
        )
        return t * ipow(xs[s + 1] * ys[s + 1] / ab, M_s)

    from .multisum import MultiIndexSpec, milne_multisum

    return value * milne_multisum(
        MultiIndexSpec(tuple(int(t) for t in N), final_factor, partial_factor), ctx
    )


def _thmc_domain(p, ctx):
    q = ctx.q
    a, b, c, d, e = (p[k] for k in "abcde")
    xs, ys, N = p["x"], p["y"], p["N"]
    z = c * d * e / (a * b * ipow(q, sum(int(t) for t in N) + 1))
    guards = [-q * a, -q * b, -c / a, -c / b, -d / a, -d / b, -e / a, -e / b,
              c * d * e / (q * a * b)]
    for i in range(len(xs)):
        guards += [-xs[i] / a, -xs[i] / b, -ys[i] / a, -ys[i] / b,
                   e / xs[i], q * a * b / (e * xs[i]),
                   q * xs[i] / e, q * ys[i] / e]
    guards += [q * q * a * b / (c * d * e)]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="thm-c-multivar",
    family="reciprocity",
    sampler=_thmc_params,
    domain=_thmc_domain,
    lhs=_thmc_lhs,
    rhs=_thmc_rhs,
    param_names=("a", "b", "c", "d", "e", "n"),
    vector_names=("x", "y", "N"),
))


# -- thm-d-multivar -----------------------------------------------------------

def _thmd_params(rng, ctx, mode):
    n = rng.randrange(4)
    N = [rng.randrange(3) for _ in range(n)]
    params = {
        "x": _draw(rng, 0.5, 0.9, mode),
        "y": _draw(rng, 0.55, 0.9, mode),
        "b": _draw(rng, 0.1, 0.35, mode),
        "c": _draw(rng, 0.1, 0.35, mode),
        "d": _draw(rng, 0.1, 0.35, mode),
        "n": n,
        "N": N,
        "xv": [_draw(rng, 0.3, 0.75, mode) for _ in range(n)],
    }
    xy2 = params["x"] * params["y"] ** 2
    params["yv"] = [xy2 / (params["xv"][i] * ipow(ctx.q, N[i])) for i in range(n)]
    return params


def _thmd_lhs(p, ctx):
    q = ctx.q
    x, y, b, c, d = (p[k] for k in ("x", "y", "b", "c", "d"))
    xs, ys = p["xv"], p["yv"]
    n = len(xs)
    pair1 = [t / y for i in range(n) for t in (xs[i], ys[i])]
    pair1l = [t / (x * y) for i in range(n) for t in (xs[i], ys[i])]
    t1 = _jacobi_termfn(
        1.0 / x, q / (x * y),
        [b / y, c / y, d / y] + pair1, [0] * (3 + 2 * n),
        [y, b / (x * y), c / (x * y), d / (x * y)] + pair1l,
        3 + 2 * n, -y / ipow(x, n + 1), ctx,
    )
    t2 = _jacobi_termfn(
        x, q / y,
        [b / (x * y), c / (x * y), d / (x * y)] + pair1l, [0] * (3 + 2 * n),
        [x * y, b / y, c / y, d / y] + pair1,
        3 + 2 * n, -ipow(x, n + 2) * y, ctx,
    )
    return _diff_sum(t1, t2, ctx, scale_b=ipow(x, n + 1))


def _thmd_rhs(p, ctx):
    q = ctx.q
    x, y, b, c, d = (p[k] for k in ("x", "y", "b", "c", "d"))
    xs, ys, N = p["xv"], p["yv"], p["N"]
    n = len(xs)
    xy2 = x * y * y
    for i in range(n):
        expected = ipow(q, int(N[i]))
        ratio = xy2 / (xs[i] * ys[i])
        if abs(ratio - expected) > 1e-12 * abs(expected):
            raise ConstraintViolation(f"xy^2/(x_{i+1} y_{i+1}) is not q^{N[i]}")
    value = ipow(-x * y, n) * qfrac(
        [q, x, q / x, b, c, d, b * c / xy2, b * d / xy2, c * d / xy2],
        [y, x * y, b / y, c / y, d / y, b / (x * y), c / (x * y), d / (x * y),
         b * c * d / (q * xy2)],
        INF,
        ctx,
    )
    for i in range(n):
        value /= xs[i]
        value *= qfrac(
            [q * y / xs[i], q * x * y / xs[i], ys[i], q * ys[i] / xy2],
            [q / xs[i], xy2 / xs[i], ys[i] / y, ys[i] / (x * y)],
            INF,
            ctx,
        )
    if n == 0:
        return value

    def final_factor(m_n, M_n):
        t = qpoch(xs[-1] * ys[-1] / xy2, m_n, ctx) / qpoch(q, m_n, ctx)
        t *= qfrac(
            [q / b, q / c, q / d],
            [q * xs[-1] / xy2, q * ys[-1] / xy2, q * q * xy2 / (b * c * d)],
            M_n,
            ctx,
        )
        return t * ipow(q, M_n)

    def partial_factor(s, m_s, M_s):
        t = qpoch(xs[s] * ys[s] / xy2, m_s, ctx) / qpoch(q, m_s, ctx)
        t *= qfrac(
            [q / xs[s + 1], q / ys[s + 1]],
            [q * xs[s] / xy2, q * ys[s] / xy2],
            M_s,
            ctx,
        )
        return t * ipow(xs[s + 1] * ys[s + 1] / xy2, M_s)

    from .multisum import MultiIndexSpec, milne_multisum

    return value * milne_multisum(
        MultiIndexSpec(tuple(int(t) for t in N), final_factor, partial_factor), ctx
    )


def _thmd_domain(p, ctx):
    q = ctx.q
    x, y, b, c, d = (p[k] for k in ("x", "y", "b", "c", "d"))
    xs, ys, N = p["xv"], p["yv"], p["N"]
    xy2 = x * y * y
    z = b * c * d / (xy2 * ipow(q, sum(int(t) for t in N) + 1))
    guards = [x, y, x * y, b * c * d / (q * xy2), q * q * xy2 / (b * c * d)]
    for t in (b, c, d):
        guards += [t / y, t / (x * y)]
    for i in range(len(xs)):
        guards += [xs[i] / y, xs[i] / (x * y), ys[i] / y, ys[i] / (x * y),
                   q / xs[i], xy2 / xs[i], q * xs[i] / xy2, q * ys[i] / xy2]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="thm-d-multivar",
    family="series",
    sampler=_thmd_params,
    domain=_thmd_domain,
    lhs=_thmd_lhs,
    rhs=_thmd_rhs,
    param_names=("x", "y", "b", "c", "d", "n"),
    vector_names=("xv", "yv", "N"),
))


# -- integral cases ------------------------------------------------------------

def _feasible_box(q, budget, count, hi=0.7):
    """Upper modulus bound so that a product of `count` draws stays under budget."""
    return min(hi, max(0.12, budget ** (1.0 / count)))


def _thme_params(rng, ctx, mode):
    n = 1 + rng.randrange(2)
    N = [rng.randrange(3) for _ in range(n)]
    budget = 0.8 * abs(ipow(ctx.q, sum(N) + 1))
    hi = _feasible_box(abs(ctx.q), budget, 4)
    params = {
        "a": _draw(rng, 0.1, hi, "real"),
        "b": _draw(rng, 0.1, hi, "real"),
        "c": _draw(rng, 0.1, hi, "real"),
        "d": _draw(rng, 0.1, hi, "real"),
        "n": n,
        "N": N,
        "v": [_draw(rng, 0.15, 0.7, "real") for _ in range(n)],
    }
    params["u"] = [params["v"][i] * ipow(ctx.q, N[i]) for i in range(n)]
    return params


def _thme_lhs(p, ctx):
    spec = AWIntegrandSpec(p["a"], p["b"], p["c"], p["d"], u=p["u"], v=p["v"])
    return complex(integrate_aw(spec, ctx).value)


def _thme_rhs(p, ctx):
    return thm_e_rhs(p["a"], p["b"], p["c"], p["d"], p["u"], p["v"], p["N"], ctx)


def _thme_domain(p, ctx):
    a, b, c, d = (p[k] for k in "abcd")
    vals = [a, b, c, d] + list(p["v"])
    if any(abs(t) >= 0.999 for t in vals):
        return False
    n_total = sum(int(t) for t in p["N"])
    z = a * b * c * d * ipow(ctx.q, -(n_total + 1))
    guards = [a * b * c * d / ctx.q, z]
    for i in range(len(p["u"])):
        guards += [d * p["u"][i], ctx.q * p["u"][i] / d,
                   d * p["v"][i], ctx.q * p["v"][i] / d]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="thm-e-integral",
    family="integral",
    sampler=_thme_params,
    domain=_thme_domain,
    lhs=_thme_lhs,
    rhs=_thme_rhs,
    default_mode="real",
    param_names=("a", "b", "c", "d", "n"),
    vector_names=("u", "v", "N"),
))


def _corlc_params(rng, ctx, mode):
    n = rng.randrange(3)
    budget = 0.8 * abs(ipow(ctx.q, n + 1))
    hi = _feasible_box(abs(ctx.q), budget, 4)
    return {
        "a": _draw(rng, 0.1, hi, "real"),
        "b": _draw(rng, 0.1, hi, "real"),
        "c": _draw(rng, 0.1, hi, "real"),
        "d": _draw(rng, 0.1, hi, "real"),
        "u": _draw(rng, 0.15, 0.7, "real"),
        "n": n,
    }


def _corlc_lhs(p, ctx):
    u1 = p["u"] * ipow(ctx.q, p["n"])
    spec = AWIntegrandSpec(p["a"], p["b"], p["c"], p["d"], u=(u1,), v=(p["u"],))
    return complex(integrate_aw(spec, ctx).value)


def _corlc_rhs(p, ctx):
    q = ctx.q
    a, b, c, d, u, n = (p[k] for k in ("a", "b", "c", "d", "u", "n"))
    lead = 1.0 - a * b * c * d * ipow(q, -(n + 1))
    if abs(lead) < ctx.pole_guard:
        raise PoleError("1 - abcd/q^{n+1} inside the pole guard")
    value = 2.0 * math.pi / lead
    value *= qfrac(
        [a * b * c * d / q],
        [q, a * b, a * c, a * d, b * c, b * d, c * d],
        INF,
        ctx,
    )
    value /= qpoch(d * u, n, ctx) * qpoch(q * u / d, n, ctx)
    phi = eval_phi(
        SeriesSpec(
            upper=[ipow(q, -n), q / (a * d), q / (b * d), q / (c * d)],
            lower=[ipow(q, 1 - n) / (d * u), q * u / d, q * q / (a * b * c * d)],
            argument=q,
        ),
        ctx,
    )
    div = _guarded_series_value(phi, ctx)
    if abs(div) < ctx.pole_guard:
        raise DivisionByNearZero("terminating series divisor near zero")
    return value / div


def _corlc_domain(p, ctx):
    a, b, c, d, u = (p[k] for k in ("a", "b", "c", "d", "u"))
    if any(abs(t) >= 0.999 for t in (a, b, c, d, u)):
        return False
    z = a * b * c * d * ipow(ctx.q, -(p["n"] + 1))
    guards = [d * u, ctx.q * u / d, ipow(ctx.q, 1 - p["n"]) / (d * u),
              ctx.q * ctx.q / (a * b * c * d), a * b * c * d / ctx.q]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="corl-c-integral",
    family="integral",
    sampler=_corlc_params,
    domain=_corlc_domain,
    lhs=_corlc_lhs,
    rhs=_corlc_rhs,
    default_mode="real",
    param_names=("a", "b", "c", "d", "u", "n"),
))


def _corle_params(rng, ctx, mode):
    n = rng.randrange(3)
    m = [rng.randrange(2) for _ in range(n)]
    alo = max(0.15, abs(ctx.q) * 1.05)
    params = {
        "a": _draw(rng, alo, 0.95, "real"),
        "b": _draw(rng, 0.1, 0.55, "real"),
        "c": _draw(rng, 0.1, 0.55, "real"),
        "n": n,
        "m": m,
        "v": [_draw(rng, 0.15, 0.7, "real") for _ in range(n)],
    }
    params["u"] = [params["v"][i] * ipow(ctx.q, m[i]) for i in range(n)]
    return params


def _corle_lhs(p, ctx):
    d = ctx.q / p["a"]
    spec = AWIntegrandSpec(p["a"], d, p["b"], p["c"], u=p["u"], v=p["v"])
    return complex(integrate_aw(spec, ctx).value)


def _corle_rhs(p, ctx):
    return corl_e_rhs(p["a"], p["b"], p["c"], p["u"], p["v"], p["m"], ctx)


def _corle_domain(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    if abs(ctx.q / a) >= 0.999 or any(abs(t) >= 0.999 for t in (a, b, c)):
        return False
    if any(abs(t) >= 0.999 for t in p["v"]):
        return False
    m_total = sum(int(t) for t in p["m"])
    z = b * c * ipow(ctx.q, -m_total)
    guards = [a * b, a * c, ctx.q * b / a, ctx.q * c / a, z]
    for i in range(len(p["v"])):
        guards += [a * p["u"][i], ctx.q * p["u"][i] / a,
                   a * p["v"][i], ctx.q * p["v"][i] / a]
    return _conv_ok(z) and _grid_clear(guards, ctx)


_register(IdentityCase(
    id="corl-e-integral",
    family="integral",
    sampler=_corle_params,
    domain=_corle_domain,
    lhs=_corle_lhs,
    rhs=_corle_rhs,
    default_mode="real",
    param_names=("a", "b", "c", "n"),
    vector_names=("u", "v", "m"),
))


# ---------------------------------------------------------------------------
# public registry API

_BY_ID = {case.id: case for case in _CASES}


def registry() -> list[IdentityCase]:
    """All identity cases, in registration order (ids are stable)."""
    return list(_CASES)


def case_ids() -> list[str]:
    return [case.id for case in _CASES]


def get_case(case_id: str) -> IdentityCase:
    try:
        return _BY_ID[case_id]
    except KeyError:
        raise UnknownParam(f"unknown identity id {case_id!r}") from None


def _seed_rng(case_id: str, seed: int, mode: str, q: complex) -> random.Random:
    key = f"{case_id}|{seed}|{mode}|{q.real!r}|{q.imag!r}"
    digest = hashlib.sha256(key.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample(case_id: str, seed: int, ctx: QContext, mode: str | None = None) -> dict:
    """Deterministic admissible parameter draw (rejection-resampled).

    Integral-family cases always sample real parameters; other families
    follow ``mode`` ("complex" default for series, may be forced "real").
    """
    case = get_case(case_id)
    if case.family == "integral":
        mode = "real"
    elif mode is None:
        mode = case.default_mode
    rng = _seed_rng(case_id, seed, mode, ctx.q)
    for _ in range(1000):
        params = case.sampler(rng, ctx, mode)
        if case.domain(params, ctx):
            return params
    raise SamplingExhausted(f"no admissible point for {case_id!r} after 1000 draws")


def check(case_id: str, params: dict, ctx: QContext, seed: int | None = None) -> VerificationReport:
    """Evaluate both sides of one identity at one point and classify the result.

    Domain and pole conditions never raise: they yield a skipped verdict.
    Any other evaluator failure is reported as fail with a diagnostic.
    """
    case = get_case(case_id)
    start = time.perf_counter()

    def report(lhs, rhs, abs_r, rel_r, verdict, reason=""):
        return VerificationReport(
            id=case_id,
            sample_seed=seed,
            params=params,
            lhs=lhs,
            rhs=rhs,
            abs_residual=abs_r,
            rel_residual=rel_r,
            verdict=verdict,
            reason=reason,
            elapsed=time.perf_counter() - start,
        )

    try:
        in_domain = case.domain(params, ctx)
    except _SKIP_ERRORS as exc:
        return report(0j, 0j, 0.0, 0.0, "skipped", f"domain: {exc}")
    if not in_domain:
        return report(0j, 0j, 0.0, 0.0, "skipped", "outside convergence domain")
    # tighten the working series tolerance so per-side truncation stays well
    # inside the identity error budget even when the geometric tail factor
    # 1/(1-|q|) is large (each side stacks ~10 series/product evaluations)
    eval_ctx = dataclasses.replace(
        ctx, series_tol=max(1e-15, 0.1 * ctx.series_tol * (1.0 - abs(ctx.q)))
    )
    try:
        lhs = complex(case.lhs(params, eval_ctx))
        rhs = complex(case.rhs(params, eval_ctx))
    except _SKIP_ERRORS as exc:
        return report(0j, 0j, 0.0, 0.0, "skipped", f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # a genuine evaluator bug, not a domain condition
        return report(0j, 0j, math.inf, math.inf, "fail",
                      f"evaluator error: {type(exc).__name__}: {exc}")
    abs_res = abs(lhs - rhs)
    rel_res = abs_res / max(1e-300, abs(lhs) + abs(rhs))
    if rel_res < ctx.identity_tol:
        verdict = "pass"
    elif abs(lhs) < 1e-12 and abs(rhs) < 1e-12 and abs_res < 1e-12:
        verdict = "pass"  # degenerate 0 = 0 branch (reciprocity diagonal)
    else:
        verdict = "fail"
    return report(lhs, rhs, abs_res, rel_res, verdict)
