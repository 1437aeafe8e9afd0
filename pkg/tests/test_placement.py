"""Cache placement against the worked instances and its exact size budgets."""

from fractions import Fraction

import pytest

from ringcache.model import InvalidParameters, RegimeError, SystemParams, binom, bits, mask_of
from ringcache.placement import (
    Mini,
    accessible_subfile_windows,
    build_layout,
    demand_pairs,
    has_mini,
    layout_to_json,
    subpacketization,
    t_sets,
    user_access,
)

from golden import EX5, EX5_PRIVATE, EX5_SPLIT, EX5_WINDOWS, EX7, EX7_DEMAND_1, EX7_PRIVATE_2


@pytest.fixture(scope="module")
def layout5():
    return build_layout(SystemParams(**EX5))


@pytest.fixture(scope="module")
def layout7():
    return build_layout(SystemParams(**EX7))


def test_ex5_subpacketization(layout5):
    assert layout5.f == 15


def test_ex5_access_caches(layout5):
    # shared cache k holds the single original subfile index k for every file
    for k in range(1, 6):
        assert [(s.n, s.end) for s in layout5.access[k - 1]] == [(n, k) for n in range(1, 6)]


def test_ex5_reindexing(layout5):
    for original, window in EX5_WINDOWS.items():
        assert bits(layout5.window_of(original)) == tuple(sorted(window))


def test_ex5_mini_split(layout5):
    params = layout5.params
    for window, tails in EX5_SPLIT.items():
        got = list(t_sets(params, mask_of(window)))
        assert got == [mask_of(t) for t in tails]


def test_ex5_private_caches(layout5):
    for u, pairs in EX5_PRIVATE.items():
        expected = {Mini(n, mask_of(s), mask_of(t)) for n in range(1, 6) for s, t in pairs}
        assert set(layout5.private[u - 1]) == expected


def test_ex7_private_cache_2(layout7):
    expected = {Mini(n, mask_of(s), mask_of(t)) for n in range(1, 8) for s, t in EX7_PRIVATE_2}
    assert set(layout7.private[1]) == expected
    assert layout7.f == 35


def test_ex7_demand_set_user1(layout7):
    got = demand_pairs(layout7.params, 1)
    assert got == tuple((mask_of(s), mask_of(t)) for s, t in EX7_DEMAND_1)
    assert len(got) == 20


def test_ex5_user1_reachable_windows(layout5):
    assert [bits(w) for w in accessible_subfile_windows(layout5, 1)] == [(1, 2), (1, 5)]


def test_no_overlap_between_private_and_access():
    for k, l, ga, gp in [(5, 2, 1, 1), (7, 2, 1, 1), (8, 2, 1, 2), (9, 3, 1, 2), (10, 1, 3, 1)]:
        params = SystemParams(k=k, l=l, ma=Fraction(k * ga, k), mp=Fraction(k * gp, k), n=k)
        layout = build_layout(params)
        for u in range(1, k + 1):
            for mini in layout.private[u - 1]:
                assert not mini.s & (1 << (u - 1))


def test_memory_budgets_exact():
    # cache occupancy in mini-subfile units must equal size * F exactly
    for k, l, ga, gp in [(5, 2, 1, 1), (6, 2, 1, 0), (7, 2, 1, 1), (9, 3, 1, 2), (12, 2, 2, 3)]:
        n = k
        params = SystemParams(k=k, l=l, ma=Fraction(n * ga, k), mp=Fraction(n * gp, k), n=n)
        layout = build_layout(params)
        f = layout.f
        minis_per_subfile = f // k  # general path: each subfile splits evenly
        for cache in layout.access:
            held = len(cache) * minis_per_subfile
            assert Fraction(held, f) == params.ma
        for cell in layout.private:
            assert Fraction(len(cell), f) == params.mp


def test_partition_of_subfiles_and_minis(layout5):
    params = layout5.params
    windows = [layout5.window_of(j) for j in range(1, 6)]
    assert len(set(windows)) == 5
    for w in windows:
        tails = list(t_sets(params, w))
        assert len(tails) == 3
        assert len(set(tails)) == 3
        for t in tails:
            assert t & w == 0


def test_has_mini_trichotomy(layout5):
    params = layout5.params
    for u in range(1, 6):
        access = user_access(layout5, u)
        demanded_minis = {
            Mini(d, s, t) for d in range(1, 6) for (s, t) in access.demanded
        }
        assert not demanded_minis & access.accessible
        for mini in access.accessible:
            assert has_mini(u, mini)
        for mini in demanded_minis:
            assert not has_mini(u, mini)


def test_has_mini_spot_examples():
    assert has_mini(1, Mini(1, mask_of((1, 2)), mask_of((3,))))
    assert has_mini(1, Mini(1, mask_of((2, 3)), mask_of((1,))))
    assert not has_mini(1, Mini(1, mask_of((2, 3)), mask_of((4,))))


def test_demand_set_sizes():
    for k, l, ga, gp in [(7, 2, 1, 1), (9, 3, 1, 2), (10, 2, 2, 2)]:
        params = SystemParams(k=k, l=l, ma=Fraction(k * ga, k), mp=Fraction(k * gp, k), n=k)
        span = params.span
        expected = (k - span) * binom(k - span - 1, gp)
        for u in range(1, k + 1):
            assert len(demand_pairs(params, u)) == expected


def test_full_private_coverage_leaves_no_demand():
    # gamma_p = K - span: users reach the whole library, demand sets empty
    params = SystemParams(k=5, l=2, ma=1, mp=3, n=5)
    assert all(not demand_pairs(params, u) for u in range(1, 6))
    layout = build_layout(params)
    assert layout.f == 5


def test_dedicated_mode_layout():
    # no shared layer: single empty window, F = C(K, gamma_p)
    params = SystemParams(k=5, l=2, ma=0, mp=2, n=5)
    layout = build_layout(params)
    assert layout.f == 10
    assert all(not cache for cache in layout.access)
    for u in range(1, 6):
        for mini in layout.private[u - 1]:
            assert mini.s == 0
            assert mini.t & (1 << (u - 1))
    assert len(layout.private[0]) == 5 * 4  # N * C(K-1, gamma_p-1)


def test_zero_memory_layout():
    params = SystemParams(k=6, l=2, ma=0, mp=0, n=6)
    layout = build_layout(params)
    assert layout.f == 1
    assert all(not cache for cache in layout.access)
    assert all(not cell for cell in layout.private)


def test_build_rejections():
    with pytest.raises(RegimeError):
        build_layout(SystemParams(k=5, l=2, ma=Fraction(1, 2), mp=1, n=5))
    with pytest.raises(InvalidParameters):
        build_layout(SystemParams(k=5, l=2, ma=3, mp=0, n=5))  # span 6 > K
    with pytest.raises(InvalidParameters):
        build_layout(SystemParams(k=5, l=2, ma=1, mp=4, n=5))  # gamma_p > K - span


def test_layout_json_golden(layout5):
    js = layout_to_json(layout5)
    assert js["F"] == 15
    assert js["access"]["1"] == [f"{n}:1,5" for n in range(1, 6)]
    assert js["private"]["5"][:3] == ["1:1,2:5", "1:2,3:5", "1:3,4:5"]
    assert set(js) == {"K", "L", "N", "Ma", "Mp", "F", "access", "private"}


def test_subpacketization_formulas():
    assert subpacketization(SystemParams(k=7, l=2, ma=1, mp=1, n=7)) == 35
    assert subpacketization(SystemParams(k=5, l=2, ma=0, mp=2, n=5)) == 10
    assert subpacketization(SystemParams(k=6, l=3, ma=1, mp=0, n=6)) == 6
