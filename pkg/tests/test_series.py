"""Tests for the unilateral and bilateral series engines."""

import cmath
import math
import random

import mpmath as mp
import pytest

from qverify.qcore import DivergentSeries, QContext, ipow, qfrac, INF
from qverify.series import (
    SeriesSpec,
    eval_bilateral_split,
    eval_kshifted_sum,
    eval_phi,
    eval_psi,
)

mp.mp.dps = 30


def rand_complex(rng, lo=0.1, hi=0.9):
    r = rng.uniform(lo, hi)
    ph = rng.uniform(0.0, 2.0 * math.pi)
    return r * cmath.exp(1j * ph)


class TestEvalPhi:
    def test_geometric_series(self):
        # upper parameter q cancels the implicit (q;q)_k
        ctx = QContext(0.5)
        r = eval_phi(SeriesSpec(upper=[ctx.q], lower=[], argument=0.3), ctx)
        assert abs(r.value - 1.0 / 0.7) < 1e-12

    def test_zero_argument(self):
        ctx = QContext(0.5)
        r = eval_phi(SeriesSpec(upper=[0.4, 0.2], lower=[0.6], argument=0.0), ctx)
        assert r.value == 1.0

    def test_terminating_exactness(self):
        ctx = QContext(0.5)
        for n in (0, 1, 3, 7):
            spec = SeriesSpec(
                upper=[ipow(ctx.q, -n), 0.3], lower=[0.2], argument=0.7
            )
            r = eval_phi(spec, ctx)
            assert r.terminated and r.terms_used == n + 1
            assert r.abs_error_estimate <= 1e-12 * max(1.0, abs(r.value))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_against_mpmath(self, seed):
        rng = random.Random(seed)
        q = rng.uniform(0.25, 0.6)
        ctx = QContext(q)
        upper = [rand_complex(rng) for _ in range(3)]
        lower = [rand_complex(rng) for _ in range(3)]
        z = rand_complex(rng, 0.1, 0.7)
        got = eval_phi(SeriesSpec(upper=upper, lower=lower, argument=z), ctx).value
        want = complex(mp.qhyper([mp.mpc(u) for u in upper],
                                 [mp.mpc(l) for l in lower], mp.mpf(q), mp.mpc(z)))
        assert abs(got - want) < 1e-11 * max(1.0, abs(want))

    def test_divergent_raises(self):
        ctx = QContext(0.5, max_terms=500)
        spec = SeriesSpec(upper=[0.3, 0.4], lower=[0.2], argument=1.5)
        with pytest.raises(DivergentSeries):
            eval_phi(spec, ctx)

    def test_kind_mismatch(self):
        spec = SeriesSpec(upper=[0.1, 0.2], lower=[0.3, 0.4], argument=0.5,
                          kind="bilateral")
        with pytest.raises(ValueError):
            eval_phi(spec, QContext(0.5))


def bailey_spec(q, a, b, c, d, e):
    sa = cmath.sqrt(a)
    return SeriesSpec(
        upper=[q * sa, -q * sa, b, c, d, e],
        lower=[sa, -sa, q * a / b, q * a / c, q * a / d, q * a / e],
        argument=q * a * a / (b * c * d * e),
        kind="bilateral",
    )


class TestEvalPsi:
    def test_bilateral_requires_equal_counts(self):
        with pytest.raises(ValueError):
            SeriesSpec(upper=[0.1], lower=[0.2, 0.3], argument=0.5, kind="bilateral")

    def test_bailey_identity_point(self):
        # admissible point with |q a^2 / bcde| ~ 0.248
        q, a, b, c, d, e = 0.3, 0.5, 0.9, 0.8, 0.7, 0.6
        ctx = QContext(q)
        lhs = eval_psi(bailey_spec(q, a, b, c, d, e), ctx)
        rhs = qfrac(
            [q, q * a, q / a, q * a / (b * c), q * a / (b * d), q * a / (b * e),
             q * a / (c * d), q * a / (c * e), q * a / (d * e)],
            [q / b, q / c, q / d, q / e, q * a / b, q * a / c, q * a / d,
             q * a / e, q * a * a / (b * c * d * e)],
            INF,
            ctx,
        )
        assert abs(lhs.value - rhs) < 1e-10 * abs(rhs)
        assert lhs.branch_terms[0] > 0 and lhs.branch_terms[1] > 0

    def test_collapse_to_unilateral_when_lower_is_q(self):
        rng = random.Random(7)
        ctx = QContext(0.4)
        for _ in range(10):
            upper = [rand_complex(rng), rand_complex(rng)]
            b = rand_complex(rng)
            z = rand_complex(rng, 0.1, 0.6)
            psi = eval_psi(
                SeriesSpec(upper=upper, lower=[ctx.q, b], argument=z, kind="bilateral"),
                ctx,
            )
            phi = eval_phi(SeriesSpec(upper=upper, lower=[b], argument=z), ctx)
            assert psi.branch_terms[1] == 0  # negative branch vanishes exactly
            assert abs(psi.value - phi.value) <= 1e-12 * abs(phi.value)


class TestBilateralSplit:
    def test_components_recombine(self):
        rng = random.Random(11)
        q = 0.35
        ctx = QContext(q)
        count = 0
        while count < 10:
            a = rand_complex(rng, 0.3, 0.7)
            b, c, d, e = (rand_complex(rng, 0.5, 0.9) for _ in range(4))
            spec = bailey_spec(q, a, b, c, d, e)
            if abs(spec.argument) > 0.7:
                continue
            count += 1
            psi = eval_psi(spec, ctx)
            first, second = eval_bilateral_split(spec, ctx)
            got = first.value + second.value
            assert abs(got - psi.value) < 1e-11 * abs(psi.value)

    def test_second_component_zero_for_lower_q(self):
        ctx = QContext(0.5)
        spec = SeriesSpec(upper=[0.4, 0.2], lower=[ctx.q, 0.35], argument=0.25,
                          kind="bilateral")
        first, second = eval_bilateral_split(spec, ctx)
        assert second.value == 0.0 and second.terminated

    def test_matches_displayed_reflected_sum(self):
        # the reflected k >= 0 form of the negative branch, with prefactor
        # -q^2 (1-q^2/a) prod(1-a/u) / [a^2 (1-a) prod(1-q/u)], written out
        # independently for the very-well-poised 8psi8
        q = 0.4
        ctx = QContext(q)
        rng = random.Random(13)
        a = 0.55
        ps = [rand_complex(rng, 0.6, 0.9) for _ in range(6)]
        sa = cmath.sqrt(a)
        z = q * q * a ** 3 / math.prod([1.0]) / (ps[0] * ps[1] * ps[2] * ps[3] * ps[4] * ps[5])
        spec = SeriesSpec(
            upper=[q * sa, -q * sa] + ps,
            lower=[sa, -sa] + [q * a / p for p in ps],
            argument=z,
            kind="bilateral",
        )
        _, second = eval_bilateral_split(spec, ctx)
        pref = -q * q * (1 - q * q / a) / (a * a * (1 - a))
        for p in ps:
            pref *= (1 - a / p) / (1 - q / p)
        total = 0.0 + 0.0j
        for k in range(200):
            t = (1 - ipow(q, 2 * k + 2) / a) / (1 - q * q / a)
            for p in ps:
                t *= qpoch_ref(q * p / a, k, q) / qpoch_ref(q * q / p, k, q)
            total += t * ipow(z, k)
            if abs(t) < 1e-17:
                break
        want = pref * total
        assert abs(second.value - want) < 1e-11 * abs(want)


def qpoch_ref(x, n, q):
    """Plain from-scratch (x;q)_n used as a local oracle."""
    p = 1.0 + 0.0j
    qi = 1.0 + 0.0j
    for _ in range(n):
        p *= 1.0 - x * qi
        qi *= q
    return p


class TestKShiftedSum:
    def test_single_term(self):
        ctx = QContext(0.5)
        r = eval_kshifted_sum(lambda k: 1.0 if k == 0 else 0.0, ctx)
        assert r.value == 1.0

    def test_matches_geometric(self):
        ctx = QContext(0.5)
        r = eval_kshifted_sum(lambda k: 0.25 ** k, ctx)
        assert abs(r.value - 4.0 / 3.0) < 1e-12
