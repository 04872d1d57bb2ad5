"""Exact solvers for k-star isolation and domination.

``iota_bruteforce`` is the increasing-size subset oracle; ``iota_tree_dp``
is the rooted dynamic program used everywhere at scale.  Both return a
witness set that re-verifies through ``is_isolating``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import inf

from .graphs import Graph, GraphError, Tree, closed_neighborhood_mask

BRUTE_FORCE_MAX_N = 24
BRUTE_FORCE_FREE_N = 16  # above this a size_cap is mandatory


class InstanceTooLarge(ValueError):
    """Instance exceeds the brute-force cost guard."""


class SizeCapExceeded(RuntimeError):
    """No isolating set within the requested size cap.

    ``lower_bound`` reports that every set of size <= cap fails, hence the
    optimum is at least cap + 1.
    """

    def __init__(self, cap: int):
        super().__init__(f"no solution of size <= {cap}; optimum >= {cap + 1}")
        self.lower_bound = cap + 1


@dataclass(frozen=True)
class IsolationSolution:
    k: int
    set: frozenset[int]
    size: int
    method: str  # brute_force | tree_dp | family_construction


@dataclass(frozen=True)
class DominationSolution:
    set: frozenset[int]
    size: int


@dataclass(frozen=True)
class Residual:
    """G - N[D]: the induced subgraph on vertices outside N[D].

    ``vertices[i]`` maps vertex i of ``graph`` back to its original label.
    """

    graph: Graph
    vertices: tuple[int, ...]


def residual(g: Graph, dominators: frozenset[int] | set[int]) -> Residual:
    _check_vertex_set(g, dominators)
    removed = closed_neighborhood_mask(g, dominators)
    keep = [v for v in range(g.n) if not (removed >> v & 1)]
    sub, index_map = g.induced_subgraph(keep)
    return Residual(sub, index_map)


def contains_k_star(g: Graph, k: int) -> bool:
    """A k-star (copy of K_{1,k}) exists iff some vertex has degree >= k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return g.max_degree() >= k


def is_isolating(g: Graph, dominators: frozenset[int] | set[int], k: int) -> bool:
    """True iff G - N[D] contains no k-star."""
    return not contains_k_star(residual(g, dominators).graph, k)


def _check_vertex_set(g: Graph, vertices) -> None:
    for v in vertices:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range for n={g.n}")


def _residual_has_k_star(g: Graph, picked: tuple[int, ...], k: int) -> bool:
    removed = 0
    for v in picked:
        removed |= g.adj_masks[v] | (1 << v)
    remaining = g.full_mask & ~removed
    m = remaining
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if (g.adj_masks[v] & remaining).bit_count() >= k:
            return True
    return False


def iota_bruteforce(g: Graph, k: int, size_cap: int | None = None) -> IsolationSolution:
    """Minimum k-isolating set by increasing-size subset search.

    Deterministic witness: the lexicographically smallest vertex set among
    the minimum ones.  Guarded to n <= 24; above n = 16 a size_cap is
    mandatory.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if g.n > BRUTE_FORCE_MAX_N:
        raise InstanceTooLarge(f"brute force capped at n={BRUTE_FORCE_MAX_N}, got {g.n}")
    if size_cap is None and g.n > BRUTE_FORCE_FREE_N:
        raise InstanceTooLarge(
            f"size_cap is mandatory for n > {BRUTE_FORCE_FREE_N} (n={g.n})"
        )
    limit = g.n if size_cap is None else min(size_cap, g.n)
    for size in range(limit + 1):
        for picked in combinations(range(g.n), size):
            if not _residual_has_k_star(g, picked, k):
                return IsolationSolution(k, frozenset(picked), size, "brute_force")
    raise SizeCapExceeded(limit)


def gamma_bruteforce(g: Graph) -> DominationSolution:
    """Minimum dominating set, same search order and tie-break as the
    isolation brute force."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise InstanceTooLarge(f"brute force capped at n={BRUTE_FORCE_MAX_N}, got {g.n}")
    for size in range(g.n + 1):
        for picked in combinations(range(g.n), size):
            covered = 0
            for v in picked:
                covered |= g.adj_masks[v] | (1 << v)
            if covered == g.full_mask:
                return DominationSolution(frozenset(picked), size)
    raise AssertionError("unreachable: V always dominates")


# ---------------------------------------------------------------------------
# Tree dynamic program
# ---------------------------------------------------------------------------

# Vertex states, relative to the solution D under construction:
#   IN       in D
#   SAT      in N[D] \ D, already covered by a child in D
#   NEED     in N[D] \ D, requires its parent in D
#   FREE_HI  outside N[D], at most k-1 residual children (parent covered)
#   FREE_LO  outside N[D], at most k-2 residual children (parent residual)
_IN, _SAT, _NEED, _FREE_HI, _FREE_LO = range(5)


def iota_tree_dp(t: Tree, k: int, root: int = 0) -> IsolationSolution:
    """Exact minimum k-isolating set of a tree via a rooted 5-state DP.

    The root choice cannot change the optimum; it only steers tie-breaks in
    the reconstructed witness.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    g = t.graph
    n = g.n
    if n == 1:
        return IsolationSolution(k, frozenset(), 0, "tree_dp")

    order = [root]
    parent = [-1] * n
    parent[root] = root
    for u in order:
        for v in g.adjacency[u]:
            if parent[v] == -1:
                parent[v] = u
                order.append(v)
    parent[root] = -1
    children: list[list[int]] = [[] for _ in range(n)]
    for v in order[1:]:
        children[parent[v]].append(v)

    cost = [[inf] * 5 for _ in range(n)]
    choice: list[list[list[tuple[int, int]] | None]] = [[None] * 5 for _ in range(n)]

    for v in reversed(order):
        cs = children[v]
        cv = cost[v]
        # IN: children may be IN, SAT or NEED
        total = 1
        picks = []
        for c in cs:
            s = min((_IN, _SAT, _NEED), key=lambda st: cost[c][st])
            total += cost[c][s]
            picks.append((c, s))
        cv[_IN] = total
        choice[v][_IN] = picks

        # SAT: children may be IN, SAT or FREE_HI, with at least one IN
        if cs:
            base = 0.0
            picks = []
            have_in = False
            for c in cs:
                s = min((_IN, _SAT, _FREE_HI), key=lambda st: cost[c][st])
                base += cost[c][s]
                picks.append((c, s))
                have_in = have_in or s == _IN
            if not have_in:
                uplift, which = min(
                    (cost[c][_IN] - cost[c][picks[i][1]], i)
                    for i, c in enumerate(cs)
                )
                base += uplift
                picks[which] = (cs[which], _IN)
            cv[_SAT] = base
            choice[v][_SAT] = picks

        # NEED: children may be SAT or FREE_HI; parent must take v's cover
        total = 0.0
        picks = []
        for c in cs:
            s = min((_SAT, _FREE_HI), key=lambda st: cost[c][st])
            total += cost[c][s]
            picks.append((c, s))
        cv[_NEED] = total
        choice[v][_NEED] = picks

        # FREE with budget J residual children (J = k-1 covered parent,
        # J = k-2 residual parent); free children need their own LO budget
        for state, budget in ((_FREE_HI, k - 1), (_FREE_LO, k - 2)):
            if budget < 0:
                continue
            base = 0.0
            picks = []
            must = []
            optional = []
            feasible = True
            for i, c in enumerate(cs):
                sat_c = cost[c][_SAT]
                free_c = cost[c][_FREE_LO]
                if sat_c == inf:
                    if free_c == inf:
                        feasible = False
                        break
                    must.append(i)
                    base += free_c
                    picks.append((c, _FREE_LO))
                else:
                    base += sat_c
                    picks.append((c, _SAT))
                    if free_c < sat_c:
                        optional.append((free_c - sat_c, i))
            if not feasible or len(must) > budget:
                continue
            optional.sort()
            for gain, i in optional[: budget - len(must)]:
                base += gain
                picks[i] = (cs[i], _FREE_LO)
            cv[state] = base
            choice[v][state] = picks

    root_states = (_IN, _SAT, _FREE_HI)
    best_state = min(root_states, key=lambda st: cost[root][st])
    best = cost[root][best_state]
    assert best < inf

    witness: set[int] = set()
    stack = [(root, best_state)]
    while stack:
        v, state = stack.pop()
        if state == _IN:
            witness.add(v)
        picks = choice[v][state]
        if picks:
            stack.extend(picks)
    assert len(witness) == best
    return IsolationSolution(k, frozenset(witness), int(best), "tree_dp")


# ---------------------------------------------------------------------------
# Normalization (leaf-free / support-free witnesses)
# ---------------------------------------------------------------------------

def normalize_no_leaves(g: Graph, sol: IsolationSolution) -> IsolationSolution:
    """Replace every leaf in the solution by its support vertex.

    Requires a connected graph with n >= 3 (so no support is itself a
    leaf).  For a minimum input the replacement is collision-free, keeps
    the size, and preserves the isolating property.
    """
    if g.n < 3:
        raise GraphError(f"normalization needs n >= 3, got {g.n}")
    if not g.is_connected():
        raise GraphError("normalization needs a connected graph")
    _check_vertex_set(g, sol.set)
    replaced = set()
    for v in sol.set:
        if g.degree(v) == 1:
            replaced.add(g.adjacency[v][0])
        else:
            replaced.add(v)
    return IsolationSolution(sol.k, frozenset(replaced), len(replaced), sol.method)


def normalize_no_deg2_support(t: Tree, sol: IsolationSolution) -> IsolationSolution:
    """Replace every degree-2 support vertex in the solution by its
    non-leaf neighbor.

    Defined for k = 1 on leaf-free solutions over trees with n >= 5; the
    non-leaf neighbor of a degree-2 support is then neither a leaf nor a
    degree-2 support, so one pass suffices.
    """
    if sol.k != 1:
        raise ValueError(f"degree-2 support normalization is a k=1 operation, got k={sol.k}")
    if t.n < 5:
        raise GraphError(f"normalization needs n >= 5, got {t.n}")
    bad = sol.set & t.leaf_set
    if bad:
        raise ValueError(f"input solution contains leaves: {sorted(bad)}")
    g = t.graph
    replaced = set()
    for v in sol.set:
        if v in t.support_set and g.degree(v) == 2:
            others = [w for w in g.adjacency[v] if w not in t.leaf_set]
            assert len(others) == 1
            replaced.add(others[0])
        else:
            replaced.add(v)
    return IsolationSolution(sol.k, frozenset(replaced), len(replaced), sol.method)
