"""Shared fixtures, instance builders and independent brute-force oracles.

The oracles deliberately avoid the library's search code: they enumerate
edge subsets or permutations directly, so agreement with the package is
evidence rather than tautology.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict

import pytest

from rainbowmatch import build_graph


# ---------------------------------------------------------------- builders

def k4_one_factorization():
    """K4 with its unique proper 3-colouring: opposite edges share colours."""
    return build_graph(4, [(0, 1, 1), (2, 3, 1),
                           (0, 2, 2), (1, 3, 2),
                           (0, 3, 3), (1, 2, 3)])


def c4(colors=(1, 2, 3, 2)):
    """4-cycle 0-1-2-3-0 with the given colours in that edge order."""
    a, b, c, d = colors
    return build_graph(4, [(0, 1, a), (1, 2, b), (2, 3, c), (0, 3, d)])


def k33_cyclic():
    """K_{3,3} coloured by the cyclic order-3 square; rows 0..2, cols 3..5."""
    edges = [(i, 3 + j, ((i + j) % 3) + 1) for i in range(3) for j in range(3)]
    return build_graph(6, edges)


def two_edge_path():
    return build_graph(3, [(0, 1, 1), (1, 2, 2)])


def random_instance(seed: int, max_n: int = 9, max_m: int = 12):
    """Small seeded properly coloured graph; palette biased low so that
    monochromatic classes of size 2+ actually occur."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    m = rng.randint(0, min(max_m, len(pairs)))
    incident: dict[int, set[int]] = defaultdict(set)
    edges = []
    for u, v in pairs[:m]:
        banned = incident[u] | incident[v]
        palette = [c for c in range(1, 2 * n + 2) if c not in banned]
        c = palette[0] if rng.random() < 0.6 else rng.choice(palette[:3])
        edges.append((u, v, c))
        incident[u].add(c)
        incident[v].add(c)
    return build_graph(n, edges)


# ----------------------------------------------------------------- oracles

def brute_max_rainbow(graph) -> int:
    """Maximum rainbow matching size by scanning all 2^m edge subsets."""
    edges = list(graph.edges)
    best = 0
    for mask in range(1 << len(edges)):
        verts: set[int] = set()
        cols: set[int] = set()
        size = 0
        ok = True
        mm = mask
        while mm:
            i = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            u, v, c = edges[i]
            if u in verts or v in verts or c in cols:
                ok = False
                break
            verts.add(u)
            verts.add(v)
            cols.add(c)
            size += 1
        if ok and size > best:
            best = size
    return best


def brute_count_rainbow(graph, size: int) -> int:
    """Number of rainbow matchings of exactly the given size, same scan."""
    edges = list(graph.edges)
    count = 0
    for subset in itertools.combinations(range(len(edges)), size):
        verts: set[int] = set()
        cols: set[int] = set()
        ok = True
        for i in subset:
            u, v, c = edges[i]
            if u in verts or v in verts or c in cols:
                ok = False
                break
            verts.add(u)
            verts.add(v)
            cols.add(c)
        if ok:
            count += 1
    return count


def brute_max_matching(graph) -> int:
    """Maximum matching size ignoring colours, same subset scan."""
    edges = list(graph.edges)
    best = 0
    for mask in range(1 << len(edges)):
        verts: set[int] = set()
        size = 0
        ok = True
        mm = mask
        while mm:
            i = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            u, v, _ = edges[i]
            if u in verts or v in verts:
                ok = False
                break
            verts.add(u)
            verts.add(v)
            size += 1
        if ok and size > best:
            best = size
    return best


def brute_transversals(square) -> int:
    """Transversal count by full permutation enumeration."""
    n = square.n
    count = 0
    for perm in itertools.permutations(range(n)):
        symbols = {square.cells[i][perm[i]] for i in range(n)}
        if len(symbols) == n:
            count += 1
    return count


def independent_is_proper(n: int, edges) -> bool:
    """Properness re-check that does not rely on graph construction."""
    seen: dict[int, set[int]] = defaultdict(set)
    for u, v, c in edges:
        if u == v or not (0 <= u < n and 0 <= v < n) or c < 1:
            return False
        if c in seen[u] or c in seen[v]:
            return False
        seen[u].add(c)
        seen[v].add(c)
    pairs = {(min(u, v), max(u, v)) for u, v, _ in edges}
    return len(pairs) == len(list(edges))


# ---------------------------------------------------------------- fixtures

@pytest.fixture(scope="session")
def small_corpus():
    """The shared 1000-instance corpus used by the oracle-equivalence and
    engine acceptance checks."""
    return [random_instance(seed) for seed in range(1000)]
