"""Simple graphs and digraphs on vertices 0..n-1, plus the basic constructions."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

from ..errors import CapExceeded, HypothesisViolation
from ..permcore import PermGroup

GRAPH_VERTEX_CAP = 100_000


class Graph:
    """Undirected simple graph.

    ``boundary`` marks vertices whose neighbourhood was cut off by a truncation.
    ``lobes`` is an optional registry: one tuple of vertices per lobe, listed in
    the order of the vertices of the graph the lobe is a copy of.
    """

    directed = False

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        boundary: Iterable[int] = (),
        lobes: Optional[Sequence[Sequence[int]]] = None,
    ):
        self.n = n
        es = set()
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range")
            es.add((a, b) if a < b else (b, a))
        self.edges = sorted(es)
        self._edge_set = es
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.edges:
            self.adj[a].append(b)
            self.adj[b].append(a)
        for row in self.adj:
            row.sort()
        self.boundary = frozenset(boundary)
        self.lobes = [tuple(l) for l in lobes] if lobes is not None else None

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self._edge_set

    def neighbours(self, v: int) -> list[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def arcs(self) -> list[tuple[int, int]]:
        return sorted([(a, b) for a, b in self.edges] + [(b, a) for a, b in self.edges])

    def symmetrized(self) -> Graph:
        return self

    def interior(self) -> list[int]:
        return [v for v in range(self.n) if v not in self.boundary]

    def distances_from(self, sources: int | Iterable[int], removed: frozenset | set = frozenset()) -> list[int]:
        """BFS distances (-1 for unreachable) avoiding ``removed``."""
        srcs = [sources] if isinstance(sources, int) else list(sources)
        dist = [-1] * self.n
        queue = deque()
        for s in srcs:
            if s not in removed and dist[s] < 0:
                dist[s] = 0
                queue.append(s)
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if dist[y] < 0 and y not in removed:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def components(self, removed: frozenset | set = frozenset()) -> list[list[int]]:
        seen = set(removed)
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            for x in comp:
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph relabelled by position in ``vertices``."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(len(vertices), [(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos])

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.n == other.n and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


class Digraph:
    """Directed simple graph; arcs are distinct ordered pairs without loops."""

    directed = True

    def __init__(
        self,
        n: int,
        arcs: Iterable[Sequence[int]] = (),
        boundary: Iterable[int] = (),
        lobes: Optional[Sequence[Sequence[int]]] = None,
    ):
        self.n = n
        arc_set = set()
        for a, b in arcs:
            if a == b:
                raise ValueError("loops are not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"arc ({a}, {b}) out of range")
            arc_set.add((a, b))
        self._arcs = sorted(arc_set)
        self._arc_set = arc_set
        self.out_adj: list[list[int]] = [[] for _ in range(n)]
        self.in_adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self._arcs:
            self.out_adj[a].append(b)
            self.in_adj[b].append(a)
        self.boundary = frozenset(boundary)
        self.lobes = [tuple(l) for l in lobes] if lobes is not None else None

    def arcs(self) -> list[tuple[int, int]]:
        return list(self._arcs)

    def has_arc(self, a: int, b: int) -> bool:
        return (a, b) in self._arc_set

    def symmetrized(self) -> Graph:
        return Graph(self.n, self._arcs, self.boundary, self.lobes)

    def induced(self, vertices: Sequence[int]) -> Digraph:
        pos = {v: i for i, v in enumerate(vertices)}
        return Digraph(len(vertices), [(pos[a], pos[b]) for a, b in self._arcs if a in pos and b in pos])

    def is_connected(self) -> bool:
        return self.symmetrized().is_connected()

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.n == other.n and self._arcs == other._arcs

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self._arcs)})"


# -- constructors --------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def double_ray_truncation(r: int) -> Graph:
    """Path on 2r+1 vertices whose two ends are marked as boundary."""
    n = 2 * r + 1
    return Graph(n, [(i, i + 1) for i in range(n - 1)], boundary=[0, n - 1] if r > 0 else [])


def path_truncation(n: int) -> Graph:
    """Path on n vertices with both ends marked as boundary."""
    if n < 1:
        raise ValueError("a path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], boundary=[0, n - 1] if n > 1 else [])


def orbital_digraph(G: PermGroup, alpha: int, beta: int) -> Digraph:
    """Arc set (alpha, beta)^G."""
    if alpha == beta:
        raise HypothesisViolation("an orbital graph needs two distinct points")
    if not G.is_transitive():
        raise HypothesisViolation("orbital graphs are taken for transitive groups")
    arcs = {(alpha, beta)}
    frontier = [(alpha, beta)]
    for a, b in frontier:
        for g in G.generators:
            e = (g(a), g(b))
            if e not in arcs:
                arcs.add(e)
                frontier.append(e)
    return Digraph(G.degree, arcs)


def orbital_graph(G: PermGroup, alpha: int, beta: int) -> Graph:
    """Undirected orbital graph {alpha, beta}^G."""
    return orbital_digraph(G, alpha, beta).symmetrized()


def cartesian_graph_product(A: Graph, B: Graph, cap: int = GRAPH_VERTEX_CAP) -> Graph:
    """Vertices (a, b) encoded as a * |B| + b; adjacency when the coordinate distances sum to 1."""
    n = A.n * B.n
    if n > cap:
        raise CapExceeded(f"product has {n} vertices, cap is {cap}")
    nb = B.n
    edges = []
    for a, a2 in A.edges:
        for b in range(nb):
            edges.append((a * nb + b, a2 * nb + b))
    for b, b2 in B.edges:
        for a in range(A.n):
            edges.append((a * nb + b, a * nb + b2))
    boundary = [a * nb + b for a in range(A.n) for b in range(nb) if a in A.boundary or b in B.boundary]
    return Graph(n, edges, boundary)


def cartesian_power(A: Graph, m: int, cap: int = GRAPH_VERTEX_CAP) -> Graph:
    out = A
    for _ in range(m - 1):
        out = cartesian_graph_product(out, A, cap)
    return out
