"""Lobes (2-connected blocks), cut vertices, the block-cut-vertex tree, small isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from ..errors import CapExceeded, HypothesisViolation
from ..permcore import PermGroup, Permutation
from .graphs import Digraph, Graph

AnyGraph = Union[Graph, Digraph]

CONNECTIVITY_TWO_OR_MORE = 2


def _biconnected(g: Graph) -> tuple[list[tuple[int, ...]], set[int]]:
    """Iterative Hopcroft-Tarjan: blocks as sorted vertex tuples (bridges included) and cut vertices."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    clock = 0
    for s in range(n):
        if disc[s] >= 0:
            continue
        disc[s] = low[s] = clock
        clock += 1
        root_children = 0
        stack = [(s, -1, iter(g.adj[s]))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] < 0:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(g.adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                block = set()
                while True:
                    e = edge_stack.pop()
                    block.update(e)
                    if e == (u, v):
                        break
                blocks.append(tuple(sorted(block)))
                if u == s:
                    root_children += 1
                else:
                    cuts.add(u)
        if root_children > 1:
            cuts.add(s)
    return sorted(blocks), cuts


def connectivity_small(g: AnyGraph) -> int:
    """0 (disconnected or one vertex), 1 (a cut vertex, or K2) or 2 meaning "at least 2"."""
    s = g.symmetrized()
    if s.n <= 1 or not s.is_connected():
        return 0
    if s.n == 2:
        return 1
    _, cuts = _biconnected(s)
    return 1 if cuts else CONNECTIVITY_TWO_OR_MORE


@dataclass
class ConnOneDecomposition:
    n: int
    lobes: list[tuple[int, ...]]
    cut_vertices: list[int]
    bcv_tree: Graph  # nodes 0..n-1 are vertices, n + j is lobe j

    def lobe_node(self, j: int) -> int:
        return self.n + j

    def lobes_at(self, v: int) -> list[int]:
        return [j - self.n for j in self.bcv_tree.adj[v]]

    def check(self, g: AnyGraph) -> bool:
        """Every edge in exactly one lobe, lobes meet in at most one vertex, tree is acyclic."""
        s = g.symmetrized()
        sets = [set(l) for l in self.lobes]
        for a, b in s.edges:
            if sum(1 for l in sets if a in l and b in l) != 1:
                return False
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) > 1:
                    return False
        t = self.bcv_tree
        return t.is_connected() and len(t.edges) == t.n - 1


def lobes_and_bcv_tree(g: AnyGraph) -> ConnOneDecomposition:
    s = g.symmetrized()
    if not s.is_connected():
        raise HypothesisViolation("lobe decomposition needs a connected graph")
    if s.n == 1:
        lobes, cuts = [(0,)], set()
    else:
        lobes, cuts = _biconnected(s)
    tree_edges = [(v, s.n + j) for j, lobe in enumerate(lobes) for v in lobe]
    tree = Graph(s.n + len(lobes), tree_edges)
    return ConnOneDecomposition(s.n, lobes, sorted(cuts), tree)


# -- isomorphism for small graphs ---------------------------------------------


def _arc_sets(g: AnyGraph):
    arcs = set(g.arcs())
    outs = [set() for _ in range(g.n)]
    ins = [set() for _ in range(g.n)]
    for a, b in arcs:
        outs[a].add(b)
        ins[b].add(a)
    return arcs, outs, ins


def _search_order(outs, ins, n) -> list[int]:
    """Connected-first order so each placed vertex has many constraints."""
    order: list[int] = []
    seen = set()
    while len(order) < n:
        start = max((v for v in range(n) if v not in seen), key=lambda v: (len(outs[v]) + len(ins[v]), -v))
        seen.add(start)
        queue = [start]
        for v in queue:
            order.append(v)
            for w in sorted(outs[v] | ins[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def isomorphisms(a: AnyGraph, b: AnyGraph) -> Iterator[list[int]]:
    """All arc-preserving bijections a -> b, as image lists, by backtracking."""
    if a.n != b.n or a.directed != b.directed:
        return
    arcs_a, outs_a, ins_a = _arc_sets(a)
    arcs_b, outs_b, ins_b = _arc_sets(b)
    if len(arcs_a) != len(arcs_b):
        return
    sig_a = [(len(outs_a[v]), len(ins_a[v])) for v in range(a.n)]
    sig_b = [(len(outs_b[v]), len(ins_b[v])) for v in range(b.n)]
    if sorted(sig_a) != sorted(sig_b):
        return
    order = _search_order(outs_a, ins_a, a.n)
    image = [-1] * a.n
    used = [False] * b.n

    def extend(i: int):
        if i == len(order):
            yield list(image)
            return
        v = order[i]
        for w in range(b.n):
            if used[w] or sig_b[w] != sig_a[v]:
                continue
            ok = True
            for u in order[:i]:
                x = image[u]
                if ((v, u) in arcs_a) != ((w, x) in arcs_b) or ((u, v) in arcs_a) != ((x, w) in arcs_b):
                    ok = False
                    break
            if not ok:
                continue
            image[v], used[w] = w, True
            yield from extend(i + 1)
            image[v], used[w] = -1, False

    yield from extend(0)


def find_isomorphism(a: AnyGraph, b: AnyGraph) -> Optional[list[int]]:
    return next(isomorphisms(a, b), None)


def are_isomorphic(a: AnyGraph, b: AnyGraph) -> bool:
    return find_isomorphism(a, b) is not None


def automorphism_group(g: AnyGraph, cap: int = 100_000) -> PermGroup:
    """Aut(g) for small g, generated by every automorphism found (up to ``cap``)."""
    gens = []
    for count, img in enumerate(isomorphisms(g, g)):
        if count >= cap:
            raise CapExceeded(f"more than {cap} automorphisms")
        gens.append(Permutation(img))
    return PermGroup(gens, degree=g.n)


def is_directed_cycle(g: Digraph) -> bool:
    if not g.directed or g.n < 2:
        return False
    arcs = g.arcs()
    if len(arcs) != g.n:
        return False
    outs = [0] * g.n
    ins = [0] * g.n
    for a, b in arcs:
        outs[a] += 1
        ins[b] += 1
    return all(x == 1 for x in outs) and all(x == 1 for x in ins) and g.is_connected()
