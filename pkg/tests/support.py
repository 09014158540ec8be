"""Shared corpus builders: random cusps, random trees, slow reference oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from hypothesis import strategies as st

from cuspforge.divisor import Chain, WeightedTree, discriminant
from cuspforge.hn import HNPair, HNSequence, RAW, STANDARD


def random_standard_hn(rng: random.Random, max_h: int = 4, cap: int = 10_000) -> HNSequence:
    """A uniform-ish valid standard sequence built from a ratio tower.

    c_j is a product of ratios r_j..r_h, so the gcd chain holds by
    construction; multipliers coprime to the ratios keep every divisibility
    axiom satisfiable without rejection sampling.
    """
    h = rng.randint(1, max_h)
    if h == 1:
        while True:
            c = rng.randint(3, cap)
            p = rng.randint(2, c - 1)
            if gcd(c, p) == 1:
                return HNSequence((HNPair(c, p),), STANDARD)
    while True:
        ratios = [rng.randint(3, 9)] + [rng.randint(2, 9) for _ in range(h - 1)]
        cvals = [1]
        for r in reversed(ratios):
            cvals.append(cvals[-1] * r)
        cvals.reverse()  # cvals[j] = c_{j+1} in 0-based terms, cvals[h] = 1
        if cvals[0] > cap:
            continue
        r1 = ratios[0]
        choices = [m for m in range(2, r1) if gcd(m, r1) == 1]
        pairs = [HNPair(cvals[0], cvals[1] * rng.choice(choices))]
        for j in range(1, h):
            rj = ratios[j]
            bound = min(4 * rj, max(1, cap // cvals[j + 1]))
            ms = [m for m in range(1, bound + 1) if gcd(m, rj) == 1]
            pairs.append(HNPair(cvals[j], cvals[j + 1] * rng.choice(ms)))
        return HNSequence(tuple(pairs), STANDARD)


def stress_standard_hn(rng: random.Random, cap: int = 10_000) -> HNSequence:
    """Two-pair sequence with head entry near the cap."""
    r1 = rng.randint(80, 140)
    c2 = rng.randint(7, cap // r1)
    m1 = next(m for m in range(r1 - 1, 1, -1) if gcd(m, r1) == 1)
    m2 = next(m for m in range(rng.randint(2, 30), 0, -1) if gcd(m, c2) == 1)
    return HNSequence((HNPair(r1 * c2, m1 * c2), HNPair(c2, m2)), STANDARD)


def random_tree(rng: random.Random, n: int, wlow: int = -6, whigh: int = -1) -> WeightedTree:
    weights = tuple(rng.randint(wlow, whigh) for _ in range(n))
    edges = tuple((rng.randrange(i), i) for i in range(1, n))
    return WeightedTree(weights, edges)


def induced_discriminant(tree: WeightedTree, keep) -> int:
    """Product of discriminants of the components induced on `keep`."""
    keep = set(keep)
    adj = tree.adjacency()
    seen: set[int] = set()
    total = 1
    for start in sorted(keep):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in keep and v not in seen:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comp.sort()
        index = {u: i for i, u in enumerate(comp)}
        sub = WeightedTree(
            tuple(tree.weights[u] for u in comp),
            tuple((index[u], index[v]) for u, v in tree.edges
                  if u in index and v in index),
        )
        total *= discriminant(sub)
    return total


def semigroup_membership_oracle(generators):
    """Recursive representability test, independent of the gap sieve."""
    gens = tuple(sorted(generators))

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def member(n: int) -> bool:
        if n == 0:
            return True
        if n < 0:
            return False
        return any(member(n - g) for g in gens)

    return member


# ----------------------------------------------------- hypothesis strategies


@st.composite
def standard_hn_sequences(draw, max_h: int = 3, cap: int = 500) -> HNSequence:
    seed = draw(st.integers(0, 2**48 - 1))
    return random_standard_hn(random.Random(seed), max_h=max_h, cap=cap)


@st.composite
def raw_hn_sequences(draw, max_h: int = 4) -> HNSequence:
    """Valid raw sequences: gcd chain by construction, coprime tail."""
    h = draw(st.integers(1, max_h))
    ratios = [draw(st.integers(1, 6)) for _ in range(h)]
    cvals = [1]
    for r in reversed(ratios):
        cvals.append(cvals[-1] * r)
    cvals.reverse()
    pairs = []
    for j in range(h):
        m = draw(st.integers(1, 9))
        if j == h - 1:
            # terminal pair needs gcd(c_h, p_h) = 1
            while gcd(m, cvals[j]) != 1:
                m += 1
        else:
            # keep gcd(c_j, p_j) = c_{j+1}: multiplier coprime to the ratio
            while gcd(m, ratios[j]) != 1:
                m += 1
        pairs.append(HNPair(cvals[j], cvals[j + 1] * m))
    return HNSequence(tuple(pairs), RAW)


def chains(min_size: int = 1, max_size: int = 8, low: int = 2, high: int = 6):
    return st.lists(st.integers(low, high), min_size=min_size,
                    max_size=max_size).map(lambda xs: Chain(tuple(xs)))


@st.composite
def weighted_trees(draw, max_size: int = 9, wlow: int = -6, whigh: int = -1) -> WeightedTree:
    n = draw(st.integers(1, max_size))
    weights = tuple(draw(st.integers(wlow, whigh)) for _ in range(n))
    edges = tuple((draw(st.integers(0, i - 1)), i) for i in range(1, n))
    return WeightedTree(weights, edges)
