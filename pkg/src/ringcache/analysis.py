"""Closed-form evaluation: transmission counting, achievable rate, cut-set
lower bound, large-memory optimality test and memory sharing.

Counting convention: a transmission-subset is a (1 + span + gamma_p)-sized
subset of [K] containing at least one window. A GENERAL subset yields
(1 + gamma_p) transmissions, an SC1 or SC2 subset exactly one, so

    X = (1 + gamma_p) * C - gamma_p * (C_SC1 + C_SC2).

The achievable rate is implemented twice, as the one-line closed form and
as X/F from the per-case counts, and the two are cross-asserted on every
call; the brute-force census in :mod:`ringcache.verify` is the arbiter
behind both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import RegimeError, SystemParams, binom


@dataclass(frozen=True)
class TransmissionCounts:
    """Transmission-subset totals per case plus the transmission count and
    subpacketization they imply."""

    subsets: int
    sc1: int
    sc2: int
    transmissions: int
    f: int

    @property
    def general(self) -> int:
        return self.subsets - self.sc1 - self.sc2


def _counting_regime(params: SystemParams) -> tuple[int, int, int]:
    """Validate the regime the counting formulas cover; return (K, span, gp)."""
    k = params.k
    ga, gp = params.ga, params.gp
    span = ga * params.l
    if ga < 1:
        raise RegimeError("no shared-cache layer (gamma_a = 0): dedicated-cache regime")
    if span >= k:
        raise RegimeError(f"full shared coverage (span {span} >= K {k}): rate is 0")
    if gp >= span:
        raise RegimeError(
            f"gamma_p = {gp} >= span = {span}: rate uncharacterized in this regime"
        )
    if 1 + span + gp > k:
        raise RegimeError(
            f"union sets need 1 + span + gamma_p = {1 + span + gp} <= K = {k}:"
            " full combined coverage"
        )
    return k, span, gp


def table1_counts(params: SystemParams) -> TransmissionCounts:
    """Per-case transmission-subset counts from the closed-form columns."""
    k, w, gp = _counting_regime(params)
    tail = sum(binom(k - 2 * w - 1 + i, 1 + gp - w + i) for i in range(1, w))
    base = binom(k - w, 1 + gp) + (k - 1) * binom(k - w - 1, 1 + gp) - tail
    if gp < w - 1:
        subsets = base
        sc1 = k * binom(k - w - 2, 1 + gp)
        sc2 = 0
    else:
        rerun = max(0, (k - 2 * w) * (k - 2 * w + 1) // 2)
        wrap = max(0, (w - 1) * (k - 2 * w - 1))
        subsets = base - rerun - wrap
        sc1 = k * binom(k - w - 2, 1 + gp) - k * max(0, k - 2 * w - 1)
        # disjoint window pairs; negative when K = 2*span, where none exist
        sc2 = max(0, (1 + w) * (k - 2 * w - 1) + (k - 2 * w - 2) * (k - 2 * w - 1) // 2)
        if w == 1:
            # adjacent singletons are still disjoint windows, so every
            # transmission-subset is a disjoint pair: the generic expression
            # misses the K adjacent pairs
            sc2 = subsets
    x = (1 + gp) * subsets - gp * (sc1 + sc2)
    return TransmissionCounts(subsets, sc1, sc2, x, k * binom(k - w, gp))


def rate_closed_form(params: SystemParams) -> Fraction:
    """The achievable worst-case rate as a single expression.

    Independent transcription of the same counting, kept separate from
    :func:`table1_counts` so the two can cross-check each other.
    """
    k, w, gp = _counting_regime(params)
    tail = sum(binom(k - w - 1 - (w - i), 1 + gp - (w - i)) for i in range(1, w))
    num = (1 + gp) * (binom(k - w, 1 + gp) + (k - 1) * binom(k - w - 1, 1 + gp) - tail)
    num -= gp * k * binom(k - w - 2, 1 + gp)
    if gp == w - 1:
        eta = (1 + gp) * (
            max(0, (k - 2 * w) * (k - 2 * w + 1) // 2)
            + max(0, (w - 1) * (k - 2 * w - 1))
        )
        eta -= gp * k * max(0, k - 2 * w - 1)
        # the disjoint-pair reduction, clamped like the SC2 count
        eta += gp * max(
            0, (1 + w) * (k - 2 * w - 1) + (k - 2 * w - 2) * (k - 2 * w - 1) // 2
        )
        num -= eta
    return Fraction(num, k * binom(k - w, gp))


def achievable_rate(params: SystemParams) -> Fraction:
    """Worst-case rate of the scheme for integral replication factors.

    Covers the dedicated regime (gamma_a = 0), the counting regime
    (gamma_p < span), and the large-memory regimes span + gamma_p >= K - 1;
    anything else is rejected as uncharacterized.
    """
    k = params.k
    ga, gp = params.ga, params.gp
    if ga == 0:
        return Fraction(binom(k, gp + 1), binom(k, gp))
    span = ga * params.l
    if span >= k or span + gp >= k:
        return Fraction(0)
    if gp < span:
        counts = table1_counts(params)
        rate = Fraction(counts.transmissions, counts.f)
        closed = rate_closed_form(params)
        if rate != closed:
            raise AssertionError(
                f"count law {rate} and closed form {closed} diverge at"
                f" K={k} span={span} gamma_p={gp}"
            )
        return rate
    if span + gp == k - 1:
        # every union set is the whole ring: K-term XORs, one file in K parts
        return Fraction(1, k)
    raise RegimeError(
        f"rate uncharacterized for gamma_p = {gp} >= span = {span} below the"
        " large-memory regime"
    )


def cutset_bound(params: SystemParams) -> Fraction:
    """Cut-set lower bound on the optimal worst-case rate, any placement.

    Serving s users through their p = min(s+L-1, K) shared caches and
    floor(N/s) broadcast rounds forces
    rate >= s - (p*ma + s*mp) / floor(N/s); maximize over s, floor at 0.
    """
    best = Fraction(0)
    for s in range(1, params.k + 1):
        p = min(s + params.l - 1, params.k)
        val = s - (p * params.ma + s * params.mp) / (params.n // s)
        if val > best:
            best = val
    return best


def is_optimal(params: SystemParams) -> bool:
    """True in the large-memory regime ma*L + mp >= N*(1 - 1/K), where the
    scheme meets the cut-set bound."""
    return params.ma * params.l + params.mp >= Fraction(params.n) * (params.k - 1) / params.k


# ---------------------------------------------------------------------------
# memory sharing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SharePoint:
    """One integral corner of the interpolation with its convex weight."""

    gamma_a: int
    gamma_p: int
    weight: Fraction
    rate: Fraction


@dataclass(frozen=True)
class MemoryShare:
    points: tuple[SharePoint, ...]
    rate: Fraction


def memory_share(params: SystemParams) -> MemoryShare:
    """Realize fractional replication by splitting files between the integral
    corner schemes; the rate is the matching convex combination of corner
    rates. Integral inputs degenerate to a single unit-weight corner."""
    ga, gp = params.gamma_a, params.gamma_p
    fa, ca = math.floor(ga), math.ceil(ga)
    fp, cp = math.floor(gp), math.ceil(gp)
    alpha_a = Fraction(ca) - ga if ca != fa else Fraction(1)
    alpha_p = Fraction(cp) - gp if cp != fp else Fraction(1)

    axes_a = [(fa, alpha_a)] if fa == ca else [(fa, alpha_a), (ca, 1 - alpha_a)]
    axes_p = [(fp, alpha_p)] if fp == cp else [(fp, alpha_p), (cp, 1 - alpha_p)]
    points = []
    for ga_c, wa in axes_a:
        for gp_c, wp in axes_p:
            weight = wa * wp
            corner = params.with_memory(
                Fraction(params.n * ga_c, params.k), Fraction(params.n * gp_c, params.k)
            )
            try:
                rate = achievable_rate(corner)
            except RegimeError as exc:
                raise RegimeError(
                    f"memory-sharing corner (gamma_a={ga_c}, gamma_p={gp_c}) is"
                    f" unsupported: {exc}"
                ) from exc
            points.append(SharePoint(ga_c, gp_c, weight, rate))
    total = sum((pt.weight * pt.rate for pt in points), start=Fraction(0))
    return MemoryShare(tuple(points), total)


def rate_with_sharing(params: SystemParams) -> Fraction:
    """Achievable rate, interpolating automatically for fractional gammas."""
    if params.integral:
        return achievable_rate(params)
    return memory_share(params).rate
