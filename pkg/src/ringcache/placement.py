"""Cache placement.

Each file splits into K equal subfiles; the shared cache k stores the
subfiles with original indices <k + (j-1)L> for j = 1..gamma_a, so a user
reaches a contiguous window of span = gamma_a*L subfile indices. Subfiles
are relabelled by that window (the set of users that can reach them), and
each subfile further splits into C(K - span, gamma_p) mini-subfiles, one
per gamma_p-subset T of the users outside the window; the private cache of
user u stores every mini-subfile with u in T and u outside the window.

With no shared-cache layer (gamma_a = 0) the window layer is skipped: each
file has the single empty window and subpacketization C(K, gamma_p).

Mini-subfile payloads are virtual: the package reasons about identities,
sizes and decodability, never file bytes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .model import (
    InvalidParameters,
    RegimeError,
    SystemParams,
    binom,
    bit,
    cyc,
    mask_str,
    window_mask,
)


class Mini(NamedTuple):
    """A mini-subfile identity: file n, window mask s, private index mask t."""

    n: int
    s: int
    t: int


class Subfile(NamedTuple):
    """A subfile identity: file n and original index end (window end label)."""

    n: int
    end: int


@dataclass(frozen=True)
class CacheLayout:
    """Immutable contents of every shared and private cache.

    ``access[k-1]`` lists the subfiles in shared cache k, ``private[u-1]``
    the mini-subfiles in user u's private cache; ``f`` is the
    subpacketization (mini-subfiles per file).
    """

    params: SystemParams
    f: int
    access: tuple[tuple[Subfile, ...], ...]
    private: tuple[tuple[Mini, ...], ...]

    def window_of(self, end: int) -> int:
        return window_mask(end, self.params.span, self.params.k)


def subpacketization(params: SystemParams) -> int:
    """Mini-subfiles per file: C(K, gamma_p) without a shared layer,
    K * C(K - span, gamma_p) with one."""
    if params.ga == 0:
        return binom(params.k, params.gp)
    return params.k * binom(params.k - params.span, params.gp)


def t_sets(params: SystemParams, s_mask: int, containing: int = 0) -> Iterator[int]:
    """gamma_p-subsets of the users outside window ``s_mask``, lexicographically
    ascending; ``containing`` restricts to sets including that user."""
    pool = [i for i in range(1, params.k + 1) if not s_mask & bit(i)]
    gp = params.gp
    if containing:
        if gp == 0 or s_mask & bit(containing):
            return
        rest = [i for i in pool if i != containing]
        for combo in itertools.combinations(rest, gp - 1):
            yield bit(containing) | sum(bit(i) for i in combo)
        return
    for combo in itertools.combinations(pool, gp):
        yield sum(bit(i) for i in combo)


def demand_pairs(params: SystemParams, u: int) -> tuple[tuple[int, int], ...]:
    """User u's demand set: every (window, T) pair it cannot reach, ordered by
    window end then T lexicographically."""
    k = params.k
    span = params.span
    gp = params.gp
    pairs: list[tuple[int, int]] = []
    if span == 0:
        pool = [i for i in range(1, k + 1) if i != u]
        for combo in itertools.combinations(pool, gp):
            pairs.append((0, sum(bit(i) for i in combo)))
        return tuple(pairs)
    for end in range(1, k + 1):
        s = window_mask(end, span, k)
        if s & bit(u):
            continue
        pool = [i for i in range(1, k + 1) if i != u and not s & bit(i)]
        for combo in itertools.combinations(pool, gp):
            pairs.append((s, sum(bit(i) for i in combo)))
    return tuple(pairs)


def build_layout(params: SystemParams) -> CacheLayout:
    """Populate every cache for integral replication factors."""
    if not params.integral:
        raise RegimeError(
            f"placement needs integral replication, got gamma_a={params.gamma_a},"
            f" gamma_p={params.gamma_p}; use memory sharing"
        )
    k, n = params.k, params.n
    ga, gp = params.ga, params.gp
    span = params.span
    if span > k:
        raise InvalidParameters(f"span gamma_a*L = {span} exceeds the ring size K = {k}")
    if gp > k - span:
        raise InvalidParameters(
            f"gamma_p = {gp} exceeds the {k - span} users outside a window"
        )

    access: list[tuple[Subfile, ...]] = []
    for cache in range(1, k + 1):
        ends = sorted(cyc(cache + (j - 1) * params.l, k) for j in range(1, ga + 1))
        access.append(tuple(Subfile(nn, e) for nn in range(1, n + 1) for e in ends))

    private: list[tuple[Mini, ...]] = []
    windows = [(end, window_mask(end, span, k)) for end in range(1, k + 1)] if span else [(0, 0)]
    for u in range(1, k + 1):
        cell: list[Mini] = []
        for nn in range(1, n + 1):
            for _, s in windows:
                if s & bit(u):
                    continue
                cell.extend(Mini(nn, s, t) for t in t_sets(params, s, containing=u))
        private.append(tuple(cell))

    layout = CacheLayout(params, subpacketization(params), tuple(access), tuple(private))
    _check_memory(layout)
    return layout


def _check_memory(layout: CacheLayout) -> None:
    """Every cache must hit its size budget exactly (in mini-subfile units)."""
    p = layout.params
    for cache in layout.access:
        if len(cache) != p.n * p.ga:
            raise AssertionError("shared cache holds a wrong subfile count")
    if p.gp == 0:
        expected = 0
    elif p.ga == 0:
        expected = p.n * binom(p.k - 1, p.gp - 1)
    else:
        expected = p.n * (p.k - p.span) * binom(p.k - p.span - 1, p.gp - 1)
    for cell in layout.private:
        if len(cell) != expected:
            raise AssertionError("private cache holds a wrong mini-subfile count")


def has_mini(u: int, mini: Mini) -> bool:
    """True iff user u can read the mini-subfile: through a shared cache
    (u inside the window) or its private cache (u in T)."""
    return bool((mini.s | mini.t) & bit(u))


@dataclass(frozen=True)
class UserAccess:
    """Everything user u can read, plus the (window, T) pairs it lacks."""

    user: int
    accessible: frozenset[Mini]
    demanded: tuple[tuple[int, int], ...]


def user_access(layout: CacheLayout, u: int) -> UserAccess:
    params = layout.params
    reach: set[Mini] = set()
    for off in range(params.l):
        cache = layout.access[cyc(u + off, params.k) - 1]
        for sub in cache:
            s = layout.window_of(sub.end)
            reach.update(Mini(sub.n, s, t) for t in t_sets(params, s))
    reach.update(layout.private[u - 1])
    return UserAccess(u, frozenset(reach), demand_pairs(params, u))


def mini_label(mini: Mini) -> str:
    """Serialized id ``n:S:T`` with S and T as sorted comma-joined indices."""
    return f"{mini.n}:{mask_str(mini.s)}:{mask_str(mini.t)}"


def layout_to_json(layout: CacheLayout) -> dict:
    """JSON-ready dump: shared entries as ``n:S``, private as ``n:S:T``."""
    p = layout.params
    return {
        "K": p.k,
        "L": p.l,
        "N": p.n,
        "Ma": str(p.ma),
        "Mp": str(p.mp),
        "F": layout.f,
        "access": {
            str(k + 1): [f"{sub.n}:{mask_str(layout.window_of(sub.end))}" for sub in cache]
            for k, cache in enumerate(layout.access)
        },
        "private": {
            str(u + 1): [mini_label(m) for m in cell]
            for u, cell in enumerate(layout.private)
        },
    }


def accessible_subfile_windows(layout: CacheLayout, u: int) -> tuple[int, ...]:
    """Window masks of the subfiles user u reaches through shared caches."""
    p = layout.params
    seen: list[int] = []
    for off in range(p.l):
        for sub in layout.access[cyc(u + off, p.k) - 1]:
            w = layout.window_of(sub.end)
            if w not in seen:
                seen.append(w)
    return tuple(sorted(seen))
