"""Invariant homogeneous cartesian decompositions.

A cartesian decomposition of Omega with m partitions of k parts each is the same
thing as a Hamming graph H(m, k) on Omega: two points are adjacent when they lie
in a common part of all but one partition. G preserves the decomposition iff it
preserves the graph, so the search enumerates unions of G-orbits on unordered
pairs whose valency is m(k-1) at every point, then reads the partitions back off
each candidate graph and keeps the ones that verify.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import CapExceeded
from ..permcore import PermGroup, Permutation

DECOMPOSITION_DEGREE_CAP = 64
DEFAULT_CANDIDATE_CAP = 200_000

Partition = tuple[tuple[int, ...], ...]


def _canon_partition(parts: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


@dataclass(frozen=True)
class CartesianDecomposition:
    """A set of m partitions of {0..n-1}, stored in canonical sorted form."""

    partitions: tuple[Partition, ...]

    @classmethod
    def of(cls, partitions: Iterable[Iterable[Iterable[int]]]) -> CartesianDecomposition:
        return cls(tuple(sorted(_canon_partition(p) for p in partitions)))

    @property
    def m(self) -> int:
        return len(self.partitions)

    @property
    def k(self) -> int:
        return len(self.partitions[0])

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.partitions[0])

    def coordinates(self) -> list[tuple[int, ...]]:
        """For each point, the index of its part in each partition."""
        out = [[0] * self.m for _ in range(self.degree)]
        for i, part in enumerate(self.partitions):
            for j, block in enumerate(part):
                for p in block:
                    out[p][i] = j
        return [tuple(c) for c in out]

    def as_lists(self) -> list[list[list[int]]]:
        return [[list(b) for b in part] for part in self.partitions]


def coordinate_decomposition(n: int, m: int) -> CartesianDecomposition:
    """The decomposition of {0..n^m-1} (row-major tuples) by coordinates."""
    parts = []
    for i in range(m):
        blocks: dict[int, list[int]] = {}
        for idx, coords in enumerate(itertools.product(range(n), repeat=m)):
            blocks.setdefault(coords[i], []).append(idx)
        parts.append(blocks.values())
    return CartesianDecomposition.of(parts)


def is_cartesian(dec: CartesianDecomposition) -> bool:
    """m > 1, every partition has k >= 2 parts, equal sizes, and transversals meet in one point."""
    if dec.m < 2 or dec.k < 2:
        return False
    n = dec.degree
    if any(len(part) != dec.k for part in dec.partitions):
        return False
    if any(sorted(p for b in part for p in b) != list(range(n)) for part in dec.partitions):
        return False
    if dec.k**dec.m != n:
        return False
    # with k^m points, distinct coordinate vectors is the same as every intersection being a singleton
    return len(set(dec.coordinates())) == n


def is_invariant(dec: CartesianDecomposition, gens: Sequence[Permutation]) -> bool:
    parts = set(dec.partitions)
    for g in gens:
        for part in dec.partitions:
            if _canon_partition([g(p) for p in b] for b in part) not in parts:
                return False
    return True


def verify_cartesian_decomposition(dec: CartesianDecomposition, G: PermGroup) -> bool:
    return is_cartesian(dec) and is_invariant(dec, G.generators)


def proper_power_shapes(n: int) -> list[tuple[int, int]]:
    """All (k, m) with k^m = n, k >= 2, m >= 2, by increasing m."""
    out = []
    m = 2
    while 2**m <= n:
        k = round(n ** (1 / m))
        for kk in (k - 1, k, k + 1):
            if kk >= 2 and kk**m == n:
                out.append((kk, m))
        m += 1
    return out


def pair_orbits(G: PermGroup) -> list[list[tuple[int, int]]]:
    """G-orbits on unordered pairs (as sorted tuples), ordered by smallest pair."""
    seen = set()
    out = []
    gens = [g.images for g in G.generators]
    for a in range(G.degree):
        for b in range(a + 1, G.degree):
            if (a, b) in seen:
                continue
            orb = [(a, b)]
            seen.add((a, b))
            for x, y in orb:
                for g in gens:
                    u, v = g[x], g[y]
                    e = (u, v) if u < v else (v, u)
                    if e not in seen:
                        seen.add(e)
                        orb.append(e)
            out.append(sorted(orb))
    return out


def _partitions_from_graph(adj: list[set], k: int, m: int) -> CartesianDecomposition | None:
    n = len(adj)
    v0 = 0
    nbrs = adj[v0]
    # neighbourhood of v0 must split into m cliques of size k-1
    comps = []
    left = set(nbrs)
    while left:
        start = min(left)
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x] & left:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        left -= comp
        comps.append(comp)
    if len(comps) != m or any(len(c) != k - 1 for c in comps):
        return None
    for c in comps:
        for x in c:
            if not (c - {x}) <= adj[x]:
                return None

    dist = []
    for src in range(n):
        d = [-1] * n
        d[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if d[y] < 0:
                    d[y] = d[x] + 1
                    queue.append(y)
        if min(d) < 0:
            return None
        dist.append(d)

    partitions = []
    for c in comps:
        line = sorted(c | {v0})
        blocks: dict[int, list[int]] = {w: [] for w in line}
        for u in range(n):
            ds = [dist[u][w] for w in line]
            best = min(ds)
            if ds.count(best) != 1:
                return None
            blocks[line[ds.index(best)]].append(u)
        partitions.append(blocks.values())
    return CartesianDecomposition.of(partitions)


def find_cartesian_decompositions(
    G: PermGroup,
    cap: int = DECOMPOSITION_DEGREE_CAP,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[CartesianDecomposition]:
    """Every G-invariant nontrivial homogeneous cartesian decomposition, canonically sorted."""
    n = G.degree
    if n > cap:
        raise CapExceeded(f"degree {n} exceeds cartesian decomposition cap {cap}")
    shapes = proper_power_shapes(n)
    if not shapes:
        return []
    orbitals = pair_orbits(G)
    valency = []
    for orb in orbitals:
        vec = [0] * n
        for a, b in orb:
            vec[a] += 1
            vec[b] += 1
        valency.append(vec)

    # suffix[i][p]: valency at p still available from orbitals i, i+1, ...
    suffix = [[0] * n for _ in range(len(orbitals) + 1)]
    for i in reversed(range(len(orbitals))):
        suffix[i] = [a + b for a, b in zip(suffix[i + 1], valency[i])]

    found: set[CartesianDecomposition] = set()
    tried = 0
    for k, m in shapes:
        target = m * (k - 1)
        load = [0] * n
        chosen: list[int] = []

        def dfs(start: int) -> None:
            nonlocal tried
            if all(x == target for x in load):
                tried += 1
                if tried > candidate_cap:
                    raise CapExceeded(f"more than {candidate_cap} candidate graphs")
                adj = [set() for _ in range(n)]
                for idx in chosen:
                    for a, b in orbitals[idx]:
                        adj[a].add(b)
                        adj[b].add(a)
                dec = _partitions_from_graph(adj, k, m)
                if dec is not None and verify_cartesian_decomposition(dec, G):
                    found.add(dec)
                return
            reach = suffix[start]
            if any(load[p] + reach[p] < target for p in range(n)):
                return
            for idx in range(start, len(orbitals)):
                vec = valency[idx]
                if any(load[p] + vec[p] > target for p in range(n)):
                    continue
                for p in range(n):
                    load[p] += vec[p]
                chosen.append(idx)
                dfs(idx + 1)
                chosen.pop()
                for p in range(n):
                    load[p] -= vec[p]

        dfs(0)
    return sorted(found, key=lambda d: (d.m, d.partitions))


def exhaustive_cartesian_decompositions(G: PermGroup) -> list[CartesianDecomposition]:
    """Brute-force oracle: scan every set of m equipartitions. Small degrees only."""
    n = G.degree
    out = set()
    for k, m in proper_power_shapes(n):
        parts = list(_equipartitions(list(range(n)), k, n // k))
        for combo in itertools.combinations(parts, m):
            dec = CartesianDecomposition.of(combo)
            if verify_cartesian_decomposition(dec, G):
                out.add(dec)
    return sorted(out, key=lambda d: (d.m, d.partitions))


def _equipartitions(points: list[int], count: int, size: int):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for others in itertools.combinations(rest, size - 1):
        block = (first,) + others
        remaining = [p for p in rest if p not in others]
        for tail in _equipartitions(remaining, count - 1, size):
            yield (block,) + tail
