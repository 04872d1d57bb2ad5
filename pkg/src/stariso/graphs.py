"""Immutable graph and tree representations with the structural statistics,
distances, enumeration and canonical forms that the rest of the package
consumes.

Vertices are 0-based contiguous integers.  Graphs are simple and undirected;
trees additionally cache leaf/support/degree statistics at construction.
"""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

#: Number of free (unlabeled) trees on n vertices, n = 1..12.
FREE_TREE_COUNTS = (1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551)

MAX_ENUMERATION_ORDER = 20


class GraphError(ValueError):
    """Raised for malformed graph input (bad edges, non-tree, parse errors)."""


class Graph:
    """A simple undirected graph on vertices 0..n-1.

    Adjacency is stored both as sorted neighbor tuples and as per-vertex
    bitmasks; instances are immutable after construction and safe to share
    across workers.
    """

    __slots__ = ("n", "adjacency", "adj_masks", "full_mask", "edge_count")

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...]):
        self.n = n
        self.adjacency = adjacency
        masks = []
        for neighbors in adjacency:
            m = 0
            for v in neighbors:
                m |= 1 << v
            masks.append(m)
        self.adj_masks = tuple(masks)
        self.full_mask = (1 << n) - 1
        self.edge_count = sum(len(a) for a in adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_masks[u] >> v & 1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = self._bfs_reach(0)
        return seen == self.full_mask

    def _bfs_reach(self, start: int) -> int:
        seen = 1 << start
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                fresh = self.adj_masks[u] & ~seen
                seen |= fresh
                while fresh:
                    v = (fresh & -fresh).bit_length() - 1
                    fresh &= fresh - 1
                    nxt.append(v)
            frontier = nxt
        return seen

    def bfs_distances(self, start: int) -> list[int]:
        """Distances from start; -1 for unreachable vertices."""
        dist = [-1] * self.n
        dist[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on the given vertices.

        Returns the subgraph (reindexed 0..m-1) together with the map from
        new indices back to original vertex labels.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        adjacency = tuple(
            tuple(index[w] for w in self.adjacency[v] if w in index) for v in keep
        )
        return Graph(len(keep), adjacency), tuple(keep)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph from an edge list.

    Rejects out-of-range endpoints, self-loops and duplicate edges, naming
    the offending edge.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[tuple[int, int]] = set()
    neighbor_sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in neighbor_sets))


class Tree:
    """A validated tree: a connected acyclic Graph plus cached statistics.

    A single vertex counts as a tree with no leaves (leaf order 0).
    """

    __slots__ = ("graph", "leaf_set", "support_set", "strong_support_set",
                 "degree_histogram")

    def __init__(self, graph: Graph):
        self.graph = graph
        self.leaf_set = frozenset(
            v for v in range(graph.n) if graph.degree(v) == 1
        )
        support = set()
        strong = set()
        for v in range(graph.n):
            leaf_neighbors = sum(1 for w in graph.adjacency[v] if w in self.leaf_set)
            if leaf_neighbors >= 1:
                support.add(v)
            if leaf_neighbors >= 2:
                strong.add(v)
        self.support_set = frozenset(support)
        self.strong_support_set = frozenset(strong)
        self.degree_histogram = dict(Counter(graph.degree(v) for v in range(graph.n)))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def leaf_order(self) -> int:
        return len(self.leaf_set)

    @property
    def support_count(self) -> int:
        return len(self.support_set)

    @property
    def max_degree(self) -> int:
        return self.graph.max_degree()

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.graph.edges()})"


def as_tree(g: Graph) -> Tree:
    """Validate that g is a tree (connected, acyclic) and cache statistics."""
    if g.n == 0:
        raise GraphError("the empty graph is not a tree")
    if g.edge_count != g.n - 1:
        raise GraphError(f"cyclic: {g.edge_count} edges on {g.n} vertices")
    if not g.is_connected():
        raise GraphError("disconnected")
    return Tree(g)


def is_star(t: Tree, k: int) -> bool:
    """True iff t is the star with exactly k edges (K_{1,k})."""
    return t.n == k + 1 and t.max_degree == k


def is_any_star(t: Tree) -> bool:
    """True iff t is K_{1,m} for some m >= 2 (one center, all else leaves)."""
    return t.n >= 3 and t.max_degree == t.n - 1


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """N[D]: the vertices of D together with all their neighbors."""
    result = set()
    for v in vertices:
        result.add(v)
        result.update(g.adjacency[v])
    return frozenset(result)


def closed_neighborhood_mask(g: Graph, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= g.adj_masks[v] | (1 << v)
    return mask


@dataclass(frozen=True)
class PathWitness:
    """A concrete longest path: consecutive vertices adjacent, all distinct."""

    vertices: tuple[int, ...]
    length: int


def diameter_path(t: Tree, maximize_u1_degree: bool = False) -> PathWitness:
    """Return a diametral path of t.

    With maximize_u1_degree, among all diametral paths in either orientation
    the returned path maximizes deg(u_1); ties break toward the smallest
    (u_0, u_d) endpoint pair.  Requires n >= 2.
    """
    g = t.graph
    if g.n < 2:
        raise GraphError("diameter path needs at least 2 vertices")
    dist_rows = [g.bfs_distances(v) for v in range(g.n)]
    diam = max(max(row) for row in dist_rows)

    best: tuple[int, int] | None = None
    best_key: tuple[int, int, int] | None = None
    for u in range(g.n):
        for v in range(g.n):
            if u == v or dist_rows[u][v] != diam:
                continue
            # the path u -> v in a tree is unique, so u_1 is determined
            u1 = _next_on_path(g, dist_rows, u, v)
            deg_u1 = g.degree(u1) if maximize_u1_degree else 0
            key = (-deg_u1, u, v)
            if best_key is None or key < best_key:
                best_key = key
                best = (u, v)
    assert best is not None
    path = _tree_path(g, dist_rows, best[0], best[1])
    return PathWitness(tuple(path), diam)


def _next_on_path(g: Graph, dist_rows: list[list[int]], u: int, v: int) -> int:
    for w in g.adjacency[u]:
        if dist_rows[w][v] == dist_rows[u][v] - 1:
            return w
    raise AssertionError("no path step found")


def _tree_path(g: Graph, dist_rows: list[list[int]], u: int, v: int) -> list[int]:
    path = [u]
    while path[-1] != v:
        path.append(_next_on_path(g, dist_rows, path[-1], v))
    return path


# ---------------------------------------------------------------------------
# Canonical form (center-rooted AHU level encoding)
# ---------------------------------------------------------------------------

def tree_centers(g: Graph) -> list[int]:
    """The 1 or 2 centers of a tree, found by iterative leaf stripping."""
    n = g.n
    if n <= 2:
        return list(range(n))
    deg = [g.degree(v) for v in range(n)]
    layer = [v for v in range(n) if deg[v] <= 1]
    removed = len(layer)
    while removed < n:
        nxt = []
        for u in layer:
            deg[u] = 0
            for v in g.adjacency[u]:
                if deg[v] > 0:
                    deg[v] -= 1
                    if deg[v] == 1:
                        nxt.append(v)
        removed += len(nxt)
        layer = nxt
    return sorted(layer)


def _rooted_code(g: Graph, root: int) -> bytes:
    """AHU parenthesis code of the tree rooted at root (iterative)."""
    order = [root]
    parent = {root: -1}
    for u in order:
        for v in g.adjacency[u]:
            if v != parent[u]:
                parent[v] = u
                order.append(v)
    code: dict[int, bytes] = {}
    for u in reversed(order):
        children = sorted(
            (code[v] for v in g.adjacency[u] if v != parent[u])
        )
        code[u] = b"1" + b"".join(children) + b"0"
    return code[root]


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-invariant code: equal codes iff isomorphic trees.

    Roots at the tree center; for bicentral trees takes the lexicographic
    minimum over the two center rootings.
    """
    centers = tree_centers(t.graph)
    return min(_rooted_code(t.graph, c) for c in centers)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def prufer_decode(seq: Iterable[int]) -> Tree:
    """Decode a Prufer sequence into its labeled tree on len(seq)+2 vertices.

    The standard bijection: repeatedly join the smallest remaining degree-1
    label to the next sequence entry.
    """
    seq = list(seq)
    n = len(seq) + 2
    for entry in seq:
        if not (0 <= entry < n):
            raise GraphError(f"Prufer entry {entry} out of range for n={n}")
    degree = [1] * n
    for entry in seq:
        degree[entry] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for entry in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, entry))
        degree[entry] -= 1
        if degree[entry] == 1:
            heapq.heappush(leaves, entry)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return as_tree(build_graph(n, edges))


def enumerate_free_trees(n: int) -> Iterator[Tree]:
    """Yield one representative per isomorphism class of trees on n vertices.

    Backed by the constant-amortized-time free-tree generator; the test
    suite cross-checks the stream against a Prufer-decode-and-deduplicate
    oracle and the known class counts.
    """
    if not (1 <= n <= MAX_ENUMERATION_ORDER):
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")
    if n == 1:
        yield as_tree(build_graph(1, []))
        return
    for g in nx.nonisomorphic_trees(n):
        yield as_tree(build_graph(n, list(g.edges())))
