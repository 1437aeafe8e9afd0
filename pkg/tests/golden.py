"""Hand-checked golden data for the two small worked instances.

EX5 is the (K=5, L=2, Ma=1, Mp=1, N=5) network, EX7 the (7, 2, 1, 1, 7)
one. Transmissions are stored as sets of (user, S, T) term triples with S
and T as plain tuples; tests convert to masks as needed.
"""

from __future__ import annotations

from ringcache.model import mask_of


def term_set(*items):
    """Frozen set of (user, S-mask, T-mask) triples from tuple notation."""
    return frozenset((u, mask_of(s), mask_of(t)) for u, s, t in items)


EX5 = dict(k=5, l=2, ma=1, mp=1, n=5)
EX7 = dict(k=7, l=2, ma=1, mp=1, n=7)

# subfile re-indexing for EX5: original index i -> window of users reaching it
EX5_WINDOWS = {1: (1, 5), 2: (1, 2), 3: (2, 3), 4: (3, 4), 5: (4, 5)}

# private cache contents for EX5, per user: the (S, T) pairs held for every file
EX5_PRIVATE = {
    1: [((2, 3), (1,)), ((3, 4), (1,)), ((4, 5), (1,))],
    2: [((3, 4), (2,)), ((4, 5), (2,)), ((1, 5), (2,))],
    3: [((4, 5), (3,)), ((1, 5), (3,)), ((1, 2), (3,))],
    4: [((1, 5), (4,)), ((1, 2), (4,)), ((2, 3), (4,))],
    5: [((1, 2), (5,)), ((2, 3), (5,)), ((3, 4), (5,))],
}

# the mini-subfile split of each EX5 subfile: window -> list of T singletons
EX5_SPLIT = {
    (1, 5): [(2,), (3,), (4,)],
    (1, 2): [(3,), (4,), (5,)],
    (2, 3): [(1,), (4,), (5,)],
    (3, 4): [(1,), (2,), (5,)],
    (4, 5): [(1,), (2,), (3,)],
}

# all ten EX5 transmissions (worst-case demands), order-free
EX5_TRANSMISSIONS = [
    term_set((1, (2, 3), (4,)), (2, (3, 4), (1,)), (4, (1, 2), (3,))),
    term_set((1, (2, 3), (5,)), (3, (5, 1), (2,)), (5, (1, 2), (3,))),
    term_set((1, (3, 4), (5,)), (3, (4, 5), (1,)), (4, (5, 1), (3,))),
    term_set((1, (3, 4), (2,)), (3, (1, 2), (4,)), (4, (2, 3), (1,))),
    term_set((1, (4, 5), (2,)), (4, (1, 2), (5,)), (2, (5, 1), (4,))),
    term_set((1, (4, 5), (3,)), (5, (3, 4), (1,)), (3, (5, 1), (4,))),
    term_set((2, (5, 1), (3,)), (3, (1, 2), (5,)), (5, (2, 3), (1,))),
    term_set((2, (3, 4), (5,)), (5, (2, 3), (4,)), (3, (4, 5), (2,))),
    term_set((2, (4, 5), (1,)), (5, (1, 2), (4,)), (4, (5, 1), (2,))),
    term_set((2, (4, 5), (3,)), (4, (2, 3), (5,)), (5, (3, 4), (2,))),
]

# EX7 private cache of user 2: (S, T) pairs held for every file
EX7_PRIVATE_2 = [
    ((3, 4), (2,)),
    ((4, 5), (2,)),
    ((5, 6), (2,)),
    ((6, 7), (2,)),
    ((7, 1), (2,)),
]

# the demand set of EX7 user 1, in canonical order (window end, then T)
EX7_DEMAND_1 = [
    ((2, 3), (4,)), ((2, 3), (5,)), ((2, 3), (6,)), ((2, 3), (7,)),
    ((3, 4), (2,)), ((3, 4), (5,)), ((3, 4), (6,)), ((3, 4), (7,)),
    ((4, 5), (2,)), ((4, 5), (3,)), ((4, 5), (6,)), ((4, 5), (7,)),
    ((5, 6), (2,)), ((5, 6), (3,)), ((5, 6), (4,)), ((5, 6), (7,)),
    ((6, 7), (2,)), ((6, 7), (3,)), ((6, 7), (4,)), ((6, 7), (5,)),
]

# the seven EX7 SC1 transmissions, order-free
EX7_SC1 = [
    term_set((1, (3, 4), (6,)), (6, (3, 4), (1,))),
    term_set((1, (5, 6), (3,)), (3, (5, 6), (1,))),
    term_set((2, (4, 5), (7,)), (7, (4, 5), (2,))),
    term_set((2, (6, 7), (4,)), (4, (6, 7), (2,))),
    term_set((3, (7, 1), (5,)), (5, (7, 1), (3,))),
    term_set((4, (1, 2), (6,)), (6, (1, 2), (4,))),
    term_set((5, (2, 3), (7,)), (7, (2, 3), (5,))),
]

# the seven EX7 SC2 transmissions, order-free
EX7_SC2 = [
    term_set((1, (3, 4), (7,)), (4, (7, 1), (3,)), (3, (7, 1), (4,)), (7, (3, 4), (1,))),
    term_set((1, (4, 5), (2,)), (4, (1, 2), (5,)), (5, (1, 2), (4,)), (2, (4, 5), (1,))),
    term_set((1, (4, 5), (7,)), (5, (7, 1), (4,)), (4, (7, 1), (5,)), (7, (4, 5), (1,))),
    term_set((1, (5, 6), (2,)), (5, (1, 2), (6,)), (6, (1, 2), (5,)), (2, (5, 6), (1,))),
    term_set((2, (5, 6), (3,)), (5, (2, 3), (6,)), (6, (2, 3), (5,)), (3, (5, 6), (2,))),
    term_set((2, (6, 7), (3,)), (7, (2, 3), (6,)), (6, (2, 3), (7,)), (3, (6, 7), (2,))),
    term_set((3, (6, 7), (4,)), (7, (3, 4), (6,)), (6, (3, 4), (7,)), (4, (6, 7), (3,))),
]
