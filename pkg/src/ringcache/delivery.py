"""XOR broadcast delivery.

For a demand vector the server walks the users' demand sets and emits one
XOR transmission per uncovered (window, T) pair. The union set
I = {u} | S | T decides the construction:

* exactly one window inside I (S itself)            -> SC1
* exactly the two disjoint windows S and {u} | T    -> SC2
  (only possible when gamma_p = span - 1)
* otherwise                                         -> GENERAL

GENERAL transmissions collect every cyclic rotation of the anchor's
position sets whose rotated S-image is again a window; SC1 swaps the user
into the private index set; SC2 does the SC1 swap on both windows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .model import (
    InvalidParameters,
    PositionSets,
    RegimeError,
    SystemParams,
    bit,
    bits,
    mask_str,
    only_bit,
    position_sets,
    shift_positions,
    window_set,
)
from .placement import CacheLayout, Mini, demand_pairs, has_mini

GENERAL = "GENERAL"
SC1 = "SC1"
SC2 = "SC2"


class Term(NamedTuple):
    """One XOR operand: the mini-subfile (file, s, t) wanted by ``user``."""

    user: int
    file: int
    s: int
    t: int

    @property
    def mini(self) -> Mini:
        return Mini(self.file, self.s, self.t)


@dataclass(frozen=True)
class Transmission:
    case: str
    terms: tuple[Term, ...]
    anchor: tuple[int, int, int]

    @property
    def union(self) -> int:
        u, s, t = self.anchor
        return bit(u) | s | t


@dataclass(frozen=True)
class DeliveryResult:
    params: SystemParams
    f: int
    transmissions: tuple[Transmission, ...]

    @property
    def total(self) -> int:
        return len(self.transmissions)

    def count(self, case: str) -> int:
        return sum(1 for tx in self.transmissions if tx.case == case)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.total, self.f)


def worst_case_demand(k: int) -> tuple[int, ...]:
    """Identity demands d_u = u: the canonical all-distinct vector."""
    return tuple(range(1, k + 1))


def random_demand(params: SystemParams, seed: int) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.randint(1, params.n) for _ in range(params.k))


def check_demand(params: SystemParams, demand: Sequence[int]) -> tuple[int, ...]:
    if len(demand) != params.k:
        raise InvalidParameters(f"demand vector has {len(demand)} entries, need K={params.k}")
    for u, d in enumerate(demand, start=1):
        if not 1 <= d <= params.n:
            raise InvalidParameters(f"user {u} demands file {d} outside [1, N={params.n}]")
    return tuple(demand)


def _window_set(params: SystemParams) -> frozenset[int]:
    return window_set(params.k, params.span)


def classify(params: SystemParams, u: int, s: int, t: int) -> tuple[str, int | None]:
    """Case tag for the anchor (u, S, T), plus the SC2 rotation shift."""
    pos = position_sets(u, s, t)
    union_mask = bit(u) | s | t
    windows = [w for w in sorted(_window_set(params)) if w & union_mask == w]
    if len(windows) == 1:
        if windows[0] != s:
            raise AssertionError("the lone window inside the union set is not S")
        return SC1, None
    if len(windows) == 2 and windows[0] & windows[1] == 0:
        other = windows[0] if windows[1] == s else windows[1]
        # the pair must be S and {u} | T to qualify; with gamma_p < span that
        # is forced, outside the regime the anchor falls back to GENERAL
        if other == bit(u) | t:
            return SC2, _sc2_shift(pos, s, other)
    return GENERAL, None


def _sc2_shift(pos: PositionSets, s: int, other: int) -> int:
    hits = [
        j
        for j in range(1, pos.size)
        if pos.elements_at(shift_positions(pos.p_s, j, pos.size)) == other
    ]
    if len(hits) != 1:
        raise AssertionError(f"rotation of S onto {{u}} | T is not unique: {hits}")
    return hits[0]


def build_general(
    params: SystemParams, demand: Sequence[int], u: int, s: int, t: int
) -> Transmission:
    """Anchor plus every rotation whose S-image is a window."""
    pos = position_sets(u, s, t)
    windows = _window_set(params)
    terms = [Term(u, demand[u - 1], s, t)]
    for i in range(1, pos.size):
        s_img = pos.elements_at(shift_positions(pos.p_s, i, pos.size))
        if s_img not in windows:
            continue
        u_img = only_bit(pos.elements_at(shift_positions(pos.p_u, i, pos.size)))
        t_img = pos.elements_at(shift_positions(pos.p_t, i, pos.size))
        terms.append(Term(u_img, demand[u_img - 1], s_img, t_img))
    return Transmission(GENERAL, tuple(terms), (u, s, t))


def _swap_group(demand: Sequence[int], u: int, s: int, t: int) -> list[Term]:
    """Anchor plus, for each v in T, the term with v swapped against u."""
    group = [Term(u, demand[u - 1], s, t)]
    pool = bit(u) | t
    for v in bits(t):
        group.append(Term(v, demand[v - 1], s, pool ^ bit(v)))
    return group


def build_sc1(params: SystemParams, demand: Sequence[int], u: int, s: int, t: int) -> Transmission:
    return Transmission(SC1, tuple(_swap_group(demand, u, s, t)), (u, s, t))


def build_sc2(
    params: SystemParams, demand: Sequence[int], u: int, s: int, t: int, j: int
) -> Transmission:
    """SC1-style group on S, then the rotated anchor and its group on {u} | T."""
    pos = position_sets(u, s, t)
    terms = _swap_group(demand, u, s, t)
    u2 = only_bit(pos.elements_at(shift_positions(pos.p_u, j, pos.size)))
    s2 = pos.elements_at(shift_positions(pos.p_s, j, pos.size))
    t2 = pos.elements_at(shift_positions(pos.p_t, j, pos.size))
    terms.extend(_swap_group(demand, u2, s2, t2))
    return Transmission(SC2, tuple(terms), (u, s, t))


def build_transmission(
    params: SystemParams, demand: Sequence[int], u: int, s: int, t: int
) -> Transmission:
    case, j = classify(params, u, s, t)
    if case == SC1:
        return build_sc1(params, demand, u, s, t)
    if case == SC2:
        assert j is not None
        return build_sc2(params, demand, u, s, t, j)
    return build_general(params, demand, u, s, t)


def _check_regime(params: SystemParams, unchecked: bool) -> None:
    span = params.span
    gp = params.gp
    k = params.k
    if span == 0 or gp < span or span + gp >= k - 1:
        return
    if not unchecked:
        raise RegimeError(
            f"delivery is uncharacterized for gamma_p={gp} >= span={span} below the"
            " large-memory regime; pass unchecked=True to run it anyway"
        )


def deliver(
    layout: CacheLayout, demand: Sequence[int], *, unchecked: bool = False
) -> DeliveryResult:
    """Run the full delivery loop; every demand pair lands in exactly one
    transmission. Deterministic: users ascending, demand pairs in canonical
    order, rotation terms by ascending shift."""
    params = layout.params
    demand = check_demand(params, demand)
    _check_regime(params, unchecked)
    remaining: list[dict[tuple[int, int], None]] = [
        dict.fromkeys(demand_pairs(params, u)) for u in range(1, params.k + 1)
    ]
    out: list[Transmission] = []
    for u in range(1, params.k + 1):
        for pair in list(remaining[u - 1]):
            if pair not in remaining[u - 1]:
                continue
            tx = build_transmission(params, demand, u, pair[0], pair[1])
            for term in tx.terms:
                remaining[term.user - 1].pop((term.s, term.t), None)
            out.append(tx)
    leftovers = sum(len(d) for d in remaining)
    if leftovers:
        raise AssertionError(f"{leftovers} demand pairs were never covered")
    return DeliveryResult(params, layout.f, tuple(out))


# ---------------------------------------------------------------------------
# decodability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Failure:
    user: int
    s: int
    t: int
    reason: str


@dataclass(frozen=True)
class DecodabilityReport:
    ok: bool
    checked: int
    failures: tuple[Failure, ...]

    def failing_users(self) -> tuple[int, ...]:
        return tuple(sorted({f.user for f in self.failures}))


def verify_decodability(
    layout: CacheLayout, demand: Sequence[int], transmissions: Iterable[Transmission]
) -> DecodabilityReport:
    """Check that every user can peel every demanded mini-subfile out of some
    transmission: all other terms in it must be readable by that user.
    Returns the violation list instead of raising."""
    params = layout.params
    demand = check_demand(params, demand)
    txs = tuple(transmissions)
    carrying: dict[tuple[int, int, int], list[int]] = {}
    for idx, tx in enumerate(txs):
        for term in tx.terms:
            carrying.setdefault((term.user, term.s, term.t), []).append(idx)

    failures: list[Failure] = []
    checked = 0
    for u in range(1, params.k + 1):
        for s, t in demand_pairs(params, u):
            checked += 1
            spots = carrying.get((u, s, t))
            if not spots:
                failures.append(Failure(u, s, t, "never transmitted"))
                continue
            if not any(_peelable(u, s, t, txs[i]) for i in spots):
                failures.append(Failure(u, s, t, "all carriers blocked by unreadable terms"))
    return DecodabilityReport(not failures, checked, tuple(failures))


def _peelable(u: int, s: int, t: int, tx: Transmission) -> bool:
    for term in tx.terms:
        if (term.user, term.s, term.t) == (u, s, t):
            continue
        if not has_mini(u, term.mini):
            return False
    return True


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def format_transmission(tx: Transmission) -> str:
    """One log line: ``CASE d<u>:S:T ^ d<u'>:S':T' ...``."""
    body = " ^ ".join(f"d{t.user}:{mask_str(t.s)}:{mask_str(t.t)}" for t in tx.terms)
    return f"{tx.case} {body}"


def format_log(result: DeliveryResult) -> str:
    lines = [format_transmission(tx) for tx in result.transmissions]
    rate = result.rate
    lines.append(
        f"# total={result.total} general={result.count(GENERAL)}"
        f" sc1={result.count(SC1)} sc2={result.count(SC2)}"
    )
    lines.append(f"# F={result.f} rate={rate.numerator}/{rate.denominator}")
    return "\n".join(lines)


def drop_transmission(result: DeliveryResult, index: int) -> DeliveryResult:
    """Result with one transmission removed (for coverage experiments)."""
    kept = result.transmissions[:index] + result.transmissions[index + 1 :]
    return replace(result, transmissions=kept)
