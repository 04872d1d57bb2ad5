"""Extremal tree families: generators, certificate recognizers, and
constructive minimum isolating sets.

Three families are covered, each with a certificate type whose
``validate`` method independently re-checks every defining clause:

* the path-assembled family of trees attaining (n + l)/4 at k = 1
  (labeled parts A/B/C from 3-paths and X/Y from 4-paths);
* the bridged family of trees attaining (n + l)/(2k + 1) for k >= 2
  (parts A/B/C/L with degree-2 bridges and degree-k hubs);
* the corona-style graphs attaining (n - l)/2 (4-cycles or coronas with
  pendant leaves).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    Graph,
    Tree,
    as_tree,
    build_graph,
    prufer_decode,
)
from .solver import IsolationSolution


class FamilyError(ValueError):
    """A generator input violates a family clause (named in the message)."""


def _components(vertices: set[int], g: Graph) -> list[set[int]]:
    """Connected components of the subgraph induced on ``vertices``."""
    remaining = set(vertices)
    comps = []
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in remaining and w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(seen)
        remaining -= seen
    return comps


# ---------------------------------------------------------------------------
# Family of (n + l)/4 extremal trees (k = 1)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FCertificate:
    """Vertex labeling witnessing membership in the (n + l)/4 family.

    ``p3_copies`` holds (a, b, c) paths, ``p4_copies`` holds (x, y, y', x')
    paths; the tree is the disjoint copies plus extra edges inside A u X.
    """

    a_set: frozenset[int]
    b_set: frozenset[int]
    c_set: frozenset[int]
    x_set: frozenset[int]
    y_set: frozenset[int]
    p3_copies: tuple[tuple[int, int, int], ...]
    p4_copies: tuple[tuple[int, int, int, int], ...]

    def validate(self, t: Tree) -> list[str]:
        """Re-check every defining clause; empty list means valid."""
        g = t.graph
        n = g.n
        A, B, C = self.a_set, self.b_set, self.c_set
        X, Y = self.x_set, self.y_set
        v: list[str] = []

        parts = [A, B, C, X, Y]
        if sum(len(p) for p in parts) != n or set().union(*parts) != set(range(n)):
            v.append("parts do not partition the vertex set")
            return v
        if C != t.leaf_set:
            v.append("C is not exactly the leaf set")
        if B != t.support_set:
            v.append("B is not exactly the support set")
        for b in B:
            if g.degree(b) != 2:
                v.append(f"support {b} has degree {g.degree(b)} != 2")
            else:
                w1, w2 = g.adjacency[b]
                if not ((w1 in A and w2 in C) or (w1 in C and w2 in A)):
                    v.append(f"support {b} lacks one A-neighbor and one C-neighbor")
        for y in Y:
            if g.degree(y) != 2:
                v.append(f"Y vertex {y} has degree {g.degree(y)} != 2")
                continue
            w1, w2 = g.adjacency[y]
            if not ((w1 in X and w2 in Y) or (w1 in Y and w2 in X)):
                v.append(f"Y vertex {y} lacks one X-neighbor and one Y-neighbor")
        copy_of = {}
        for idx, quad in enumerate(self.p4_copies):
            for w in quad:
                copy_of[w] = idx
        for x in X:
            y_nbrs = [w for w in g.adjacency[x] if w in Y]
            xa_nbrs = [w for w in g.adjacency[x] if w in X or w in A]
            if len(y_nbrs) != 1:
                v.append(f"X vertex {x} has {len(y_nbrs)} Y-neighbors, want 1")
            if not xa_nbrs:
                v.append(f"X vertex {x} has no neighbor in X u A")
            if len(y_nbrs) + len(xa_nbrs) != g.degree(x):
                v.append(f"X vertex {x} has a neighbor outside Y u X u A")
            for w in g.adjacency[x]:
                if w in X and copy_of.get(w) == copy_of.get(x):
                    v.append(f"X-X edge ({x}, {w}) inside one 4-path copy")
        if not (len(A) == len(B) == len(C)):
            v.append(f"|A|={len(A)}, |B|={len(B)}, |C|={len(C)} not all equal")
        if len(A) < 2:
            v.append(f"|A|={len(A)} < 2")
        if len(X) != len(Y) or len(X) % 2 != 0:
            v.append(f"|X|={len(X)}, |Y|={len(Y)} must be equal and even")
        if n != 3 * len(A) + 2 * len(X) or n < 6:
            v.append(f"n={n} != 3|A| + 2|X| >= 6")
        total = n + t.leaf_order
        if total % 4 != 0 or total // 4 != len(A) + len(X) // 2:
            v.append(f"(n+l)/4 = {Fraction(total, 4)} != |A| + |X|/2")
        for w in A | X:
            if g.degree(w) < 2:
                v.append(f"vertex {w} in A u X is a leaf")

        if len(self.p3_copies) != len(A):
            v.append("wrong number of 3-path copies")
        seen3: set[int] = set()
        for a, b, c in self.p3_copies:
            if not (a in A and b in B and c in C):
                v.append(f"3-path copy ({a},{b},{c}) mislabeled")
            if not (g.has_edge(a, b) and g.has_edge(b, c)):
                v.append(f"3-path copy ({a},{b},{c}) is not a path")
            seen3.update((a, b, c))
        if seen3 != A | B | C:
            v.append("3-path copies do not partition A u B u C")
        if len(self.p4_copies) * 2 != len(X):
            v.append("wrong number of 4-path copies")
        seen4: set[int] = set()
        for x1, y1, y2, x2 in self.p4_copies:
            if not (x1 in X and x2 in X and y1 in Y and y2 in Y):
                v.append(f"4-path copy ({x1},{y1},{y2},{x2}) mislabeled")
            if not (g.has_edge(x1, y1) and g.has_edge(y1, y2) and g.has_edge(y2, x2)):
                v.append(f"4-path copy ({x1},{y1},{y2},{x2}) is not a path")
            seen4.update((x1, y1, y2, x2))
        if seen4 != X | Y:
            v.append("4-path copies do not partition X u Y")

        # X u Y induces a forest whose components have order divisible by 4
        xy = X | Y
        edge_count = sum(
            1 for u in xy for w in g.adjacency[u] if w in xy and u < w
        )
        comps = _components(set(xy), g) if xy else []
        if len(xy) - edge_count != len(comps):
            v.append("X u Y does not induce a forest")
        for comp in comps:
            if len(comp) % 4 != 0:
                v.append(f"X u Y component of order {len(comp)} not divisible by 4")
        return v

    def to_json_dict(self) -> dict:
        return {
            "A": sorted(self.a_set),
            "B": sorted(self.b_set),
            "C": sorted(self.c_set),
            "X": sorted(self.x_set),
            "Y": sorted(self.y_set),
            "p3_copies": [list(c) for c in self.p3_copies],
            "p4_copies": [list(c) for c in self.p4_copies],
        }


def _f_layout(r: int, s: int) -> tuple[list[tuple[int, int]], FCertificate]:
    """Copy-internal edges and the part labeling for r 3-paths + s 4-paths."""
    edges = []
    p3 = []
    for i in range(r):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c)]
        p3.append((a, b, c))
    p4 = []
    for j in range(s):
        base = 3 * r + 4 * j
        x1, y1, y2, x2 = base, base + 1, base + 2, base + 3
        edges += [(x1, y1), (y1, y2), (y2, x2)]
        p4.append((x1, y1, y2, x2))
    cert = FCertificate(
        a_set=frozenset(3 * i for i in range(r)),
        b_set=frozenset(3 * i + 1 for i in range(r)),
        c_set=frozenset(3 * i + 2 for i in range(r)),
        x_set=frozenset(v for q in p4 for v in (q[0], q[3])),
        y_set=frozenset(v for q in p4 for v in (q[1], q[2])),
        p3_copies=tuple(p3),
        p4_copies=tuple(p4),
    )
    return edges, cert


def gen_family_F(
    r: int,
    s: int,
    wiring: str | list[tuple[int, int]] = "default",
) -> tuple[Tree, FCertificate]:
    """Assemble a family member from r 3-path and s 4-path copies.

    The default wiring chains the 4-paths (if any) into a long path hung
    between the A vertices; a custom wiring is any edge list inside A u X
    that forms a tree and leaves no A u X vertex of degree 1.
    """
    if r < 2:
        raise FamilyError(f"need r >= 2 copies of the 3-path, got {r}")
    if s < 0:
        raise FamilyError(f"need s >= 0 copies of the 4-path, got {s}")
    base_edges, cert = _f_layout(r, s)
    a_ids = sorted(cert.a_set)
    if wiring == "default":
        extra: list[tuple[int, int]] = []
        if s == 0:
            extra = [(a_ids[i], a_ids[i + 1]) for i in range(r - 1)]
        else:
            for j in range(s - 1):
                extra.append((3 * r + 4 * j + 3, 3 * r + 4 * (j + 1)))
            chain_start = 3 * r
            chain_end = 3 * r + 4 * (s - 1) + 3
            extra.append((a_ids[0], chain_start))
            extra.extend((a, chain_end) for a in a_ids[1:])
    else:
        extra = list(wiring)
        allowed = cert.a_set | cert.x_set
        for u, v in extra:
            if u not in allowed or v not in allowed:
                raise FamilyError(f"wiring edge ({u}, {v}) leaves A u X")

    n = 3 * r + 4 * s
    try:
        tree = as_tree(build_graph(n, base_edges + extra))
    except Exception as exc:
        raise FamilyError(f"wiring does not assemble a tree: {exc}") from exc
    for w in sorted(cert.a_set | cert.x_set):
        if tree.graph.degree(w) < 2:
            raise FamilyError(f"wiring leaves vertex {w} of A u X a leaf")
    violations = cert.validate(tree)
    if violations:
        raise FamilyError("; ".join(violations))
    return tree, cert


def recognize_F(t: Tree) -> FCertificate | None:
    """Recover the forced A/B/C/X/Y labeling of t, or None.

    The labeling is uniquely determined when it exists: leaves are C, their
    degree-2 supports are B, the supports' other neighbors are A, and the
    X/Y split of the rest propagates from forced seeds.  The final
    certificate is validated clause by clause before being returned.
    """
    g = t.graph
    n = g.n
    if n < 6:
        return None
    c_set = set(t.leaf_set)
    b_set = set()
    b_leaf = {}
    for c in c_set:
        b = g.adjacency[c][0]
        if g.degree(b) != 2:
            return None
        if b in b_leaf:
            return None
        b_set.add(b)
        b_leaf[b] = c
    a_set = set()
    b_other = {}
    for b in b_set:
        others = [w for w in g.adjacency[b] if w not in c_set]
        if len(others) != 1:
            return None
        a = others[0]
        if a in b_set or a in c_set:
            return None
        a_set.add(a)
        b_other[b] = a
    if len(a_set) != len(b_set):
        return None

    rest = set(range(n)) - a_set - b_set - c_set
    for v in rest:
        if any(w in b_set or w in c_set for w in g.adjacency[v]):
            return None

    # propagate the X/Y split from forced seeds
    label: dict[int, str] = {}
    queue: deque[int] = deque()

    def put(v: int, lab: str) -> bool:
        if v in label:
            return label[v] == lab
        label[v] = lab
        queue.append(v)
        for w in g.adjacency[v]:
            if w in rest:
                queue.append(w)
        return True

    for v in rest:
        in_rest = [w for w in g.adjacency[v] if w in rest]
        if len(in_rest) != 2 or any(w in a_set for w in g.adjacency[v]):
            if not put(v, "x"):
                return None
    while queue:
        v = queue.popleft()
        lab = label.get(v)
        if lab is None:
            continue
        in_rest = [w for w in g.adjacency[v] if w in rest]
        if lab == "y":
            w1, w2 = in_rest
            l1, l2 = label.get(w1), label.get(w2)
            if l1 is not None and l2 is not None:
                if {l1, l2} != {"x", "y"}:
                    return None
            elif l1 == "x" or l2 == "x":
                if not put(w2 if l1 == "x" else w1, "y"):
                    return None
            elif l1 == "y" or l2 == "y":
                if not put(w2 if l1 == "y" else w1, "x"):
                    return None
        else:
            known_y = [w for w in in_rest if label.get(w) == "y"]
            unknown = [w for w in in_rest if w not in label]
            if len(known_y) > 1:
                return None
            if len(known_y) == 1:
                for w in unknown:
                    if not put(w, "x"):
                        return None
            elif len(unknown) == 1:
                if not put(unknown[0], "y"):
                    return None
            elif not unknown:
                return None  # an X vertex with no Y-neighbor available
    if len(label) != len(rest):
        return None  # propagation stalled: no consistent labeling
    x_set = {v for v, lab in label.items() if lab == "x"}
    y_set = rest - x_set

    p4 = []
    seen = set()
    for y in sorted(y_set):
        if y in seen:
            continue
        y_partners = [w for w in g.adjacency[y] if w in y_set]
        x_nbrs = [w for w in g.adjacency[y] if w in x_set]
        if len(y_partners) != 1 or len(x_nbrs) != 1:
            return None
        y2 = y_partners[0]
        if y2 in seen:
            return None
        x_nbrs2 = [w for w in g.adjacency[y2] if w in x_set]
        if len(x_nbrs2) != 1:
            return None
        x1, x2 = x_nbrs[0], x_nbrs2[0]
        if x1 in seen or x2 in seen or x1 == x2:
            return None
        p4.append((x1, y, y2, x2))
        seen.update((x1, y, y2, x2))
    if seen != x_set | y_set:
        return None

    p3 = tuple(sorted((b_other[b], b, b_leaf[b]) for b in b_set))
    cert = FCertificate(
        a_set=frozenset(a_set),
        b_set=frozenset(b_set),
        c_set=frozenset(c_set),
        x_set=frozenset(x_set),
        y_set=frozenset(y_set),
        p3_copies=p3,
        p4_copies=tuple(sorted(p4)),
    )
    return cert if not cert.validate(t) else None


def min_iso_set_F(t: Tree, cert: FCertificate, root: int) -> IsolationSolution:
    """The constructive minimum isolating set A u X0, where X0 takes the X
    vertex closer to the chosen root from each 4-path copy."""
    if root not in cert.a_set | cert.x_set:
        raise FamilyError(f"root {root} is not in A u X")
    dist = t.graph.bfs_distances(root)
    chosen = set(cert.a_set)
    for x1, _, _, x2 in cert.p4_copies:
        chosen.add(x1 if dist[x1] < dist[x2] else x2)
    return IsolationSolution(1, frozenset(chosen), len(chosen), "family_construction")


def _random_tree_edges(rng: random.Random, labels: list[int]) -> list[tuple[int, int]]:
    """A uniformly random labeled tree on the given vertex labels."""
    m = len(labels)
    if m == 1:
        return []
    if m == 2:
        return [(labels[0], labels[1])]
    seq = [rng.randrange(m) for _ in range(m - 2)]
    t = prufer_decode(seq)
    return [(labels[u], labels[v]) for u, v in t.graph.edges()]


def sample_family_F(rng: random.Random, r: int, s: int) -> tuple[Tree, FCertificate]:
    """A random valid wiring for the given copy counts (adversarial tests)."""
    base_edges, cert = _f_layout(r, s)
    a_ids = sorted(cert.a_set)
    rng.shuffle(a_ids)
    wiring: list[tuple[int, int]] = []
    if s == 0:
        wiring = _random_tree_edges(rng, a_ids)
    else:
        order = list(range(s))
        rng.shuffle(order)
        ends = []
        for j in order:
            base = 3 * r + 4 * j
            x_in, x_out = (base, base + 3) if rng.random() < 0.5 else (base + 3, base)
            ends.append((x_in, x_out))
        for (_, out_prev), (in_next, _) in zip(ends, ends[1:]):
            wiring.append((out_prev, in_next))
        wiring.append((a_ids[0], ends[0][0]))
        wiring.append((a_ids[1], ends[-1][1]))
        attach_points = [a_ids[0], a_ids[1]]
        attach_points += [v for pair in ends for v in pair]
        for a in a_ids[2:]:
            wiring.append((a, rng.choice(attach_points)))
            attach_points.append(a)
    return gen_family_F(r, s, wiring)


# ---------------------------------------------------------------------------
# Family of (n + l)/(2k + 1) extremal trees (k >= 2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TkCertificate:
    """Vertex labeling witnessing membership in the k >= 2 extremal family:
    A induces a forest of h nontrivial components, each A vertex carries a
    degree-2 bridge in B to a degree-k hub in C, leaves hang on C."""

    k: int
    a_set: frozenset[int]
    b_set: frozenset[int]
    c_set: frozenset[int]
    leaf_set: frozenset[int]
    h: int
    n0: int

    def validate(self, t: Tree) -> list[str]:
        """Re-check every defining clause; empty list means valid."""
        g = t.graph
        n = g.n
        k = self.k
        A, B, C, L = self.a_set, self.b_set, self.c_set, self.leaf_set
        v: list[str] = []
        if k < 2:
            v.append(f"k={k} < 2")
            return v
        parts = [A, B, C, L]
        if sum(len(p) for p in parts) != n or set().union(*parts) != set(range(n)):
            v.append("parts do not partition the vertex set")
            return v
        if L != t.leaf_set:
            v.append("L is not exactly the leaf set")
        comps = _components(set(A), g)
        if len(comps) != self.h or self.h < 1:
            v.append(f"A induces {len(comps)} components, certificate says h={self.h}")
        for comp in comps:
            if len(comp) < 2:
                v.append(f"A component {sorted(comp)} is trivial")
        if len(A) != self.n0 or len(B) != self.n0:
            v.append(f"|A|={len(A)}, |B|={len(B)}, n0={self.n0} inconsistent")
        for a in A:
            b_nbrs = [w for w in g.adjacency[a] if w in B]
            if len(b_nbrs) != 1:
                v.append(f"A vertex {a} has {len(b_nbrs)} B-neighbors, want 1")
            if any(w not in A and w not in B for w in g.adjacency[a]):
                v.append(f"A vertex {a} has a neighbor outside A u B")
        for b in B:
            if g.degree(b) != 2:
                v.append(f"B vertex {b} has degree {g.degree(b)} != 2")
                continue
            w1, w2 = g.adjacency[b]
            if not ((w1 in A and w2 in C) or (w1 in C and w2 in A)):
                v.append(f"B vertex {b} lacks one A-neighbor and one C-neighbor")
        for c in C:
            if g.degree(c) != k:
                v.append(f"C vertex {c} has degree {g.degree(c)} != k={k}")
            b_nbrs = [w for w in g.adjacency[c] if w in B]
            if not b_nbrs:
                v.append(f"C vertex {c} has no B-neighbor")
            if any(w not in B and w not in L for w in g.adjacency[c]):
                v.append(f"C vertex {c} has a neighbor outside B u L")
        for leaf in L:
            if any(w not in C for w in g.adjacency[leaf]):
                v.append(f"leaf {leaf} is not attached to C")
        core = A | B | C
        core_edges = sum(
            1 for u in core for w in g.adjacency[u] if w in core and u < w
        )
        if core_edges != len(core) - 1 or len(_components(set(core), g)) != 1:
            v.append("A u B u C does not induce a tree")
        h, n0 = self.h, self.n0
        if len(C) != n0 - (h - 1):
            v.append(f"|C|={len(C)} != n0-(h-1)={n0 - (h - 1)}")
        if len(L) != (k - 1) * n0 - k * (h - 1):
            v.append(f"|L|={len(L)} != (k-1)n0-k(h-1)={(k - 1) * n0 - k * (h - 1)}")
        if n != (k + 2) * n0 - (k + 1) * (h - 1) or n < 2 * k + 4:
            v.append(f"n={n} != (k+2)n0-(k+1)(h-1) >= 2k+4")
        c_list = sorted(C)
        for i, c1 in enumerate(c_list):
            dist = g.bfs_distances(c1)
            for c2 in c_list[i + 1:]:
                if dist[c2] < 5:
                    v.append(f"C vertices {c1}, {c2} at distance {dist[c2]} < 5")
        return v

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "A": sorted(self.a_set),
            "B": sorted(self.b_set),
            "C": sorted(self.c_set),
            "L": sorted(self.leaf_set),
            "h": self.h,
            "n0": self.n0,
        }


def gen_family_Tk(
    k: int,
    n0: int,
    a_forest_edges: list[tuple[int, int]],
    hub_assignment: list[int],
) -> tuple[Tree, TkCertificate]:
    """Build a family member from an explicit A-forest and bridge wiring.

    ``a_forest_edges`` is a forest on vertices 0..n0-1 whose components must
    all be nontrivial; ``hub_assignment[i]`` names the hub (C vertex, indexed
    0..n0-h) that the bridge of A vertex i attaches to.  Each hub receives
    between 1 and k bridges and is padded with leaves to degree exactly k.
    """
    if k < 2:
        raise FamilyError(f"need k >= 2, got {k}")
    if n0 < 2:
        raise FamilyError(f"need n0 >= 2, got {n0}")
    try:
        forest = build_graph(n0, a_forest_edges)
    except Exception as exc:
        raise FamilyError(f"bad A-forest: {exc}") from exc
    comps = _components(set(range(n0)), forest)
    h = len(comps)
    for comp in comps:
        if len(comp) < 2:
            raise FamilyError(
                f"A component {sorted(comp)} is trivial; all components need >= 2 vertices"
            )
    n_c = n0 - (h - 1)
    if len(hub_assignment) != n0:
        raise FamilyError(f"hub assignment must name a hub for each of the {n0} bridges")
    counts = [0] * n_c
    for i, c in enumerate(hub_assignment):
        if not (0 <= c < n_c):
            raise FamilyError(f"bridge {i} assigned to hub {c}, valid range 0..{n_c - 1}")
        counts[c] += 1
    for c, cnt in enumerate(counts):
        if not (1 <= cnt <= k):
            raise FamilyError(f"hub {c} receives {cnt} bridges, want between 1 and {k}")

    edges = list(a_forest_edges)
    edges += [(i, n0 + i) for i in range(n0)]                      # bridges
    edges += [(n0 + i, 2 * n0 + c) for i, c in enumerate(hub_assignment)]
    nxt = 2 * n0 + n_c
    for c, cnt in enumerate(counts):
        for _ in range(k - cnt):
            edges.append((2 * n0 + c, nxt))
            nxt += 1
    try:
        tree = as_tree(build_graph(nxt, edges))
    except Exception as exc:
        raise FamilyError(f"wiring does not assemble a tree: {exc}") from exc
    cert = TkCertificate(
        k=k,
        a_set=frozenset(range(n0)),
        b_set=frozenset(range(n0, 2 * n0)),
        c_set=frozenset(range(2 * n0, 2 * n0 + n_c)),
        leaf_set=frozenset(range(2 * n0 + n_c, nxt)),
        h=h,
        n0=n0,
    )
    violations = cert.validate(tree)
    if violations:
        raise FamilyError("; ".join(violations))
    return tree, cert


def recognize_Tk(t: Tree, k: int) -> TkCertificate | None:
    """Recover the forced A/B/C/L labeling of t for the given k, or None.

    Propagation: supports become hubs, hubs spread to their bridges, each
    bridge names its A vertex, A spreads along A-A edges and forces the
    remaining bridges and leafless hubs.  A stalled or conflicting
    propagation rejects; an accepted labeling is re-validated clause by
    clause.
    """
    if k < 2:
        raise ValueError(f"the k >= 2 family needs k >= 2, got {k}")
    g = t.graph
    n = g.n
    if n < 2 * k + 4:
        return None
    leaves = set(t.leaf_set)
    label: dict[int, str] = {}
    queue: deque[int] = deque()

    class _Reject(Exception):
        pass

    def put(v: int, lab: str) -> None:
        if v in leaves:
            raise _Reject
        old = label.get(v)
        if old == lab:
            return
        if old is not None:
            raise _Reject
        if lab == "C" and g.degree(v) != k:
            raise _Reject
        if lab == "B" and g.degree(v) != 2:
            raise _Reject
        label[v] = lab
        queue.append(v)
        for w in g.adjacency[v]:
            queue.append(w)

    def examine(v: int) -> None:
        lab = label.get(v)
        if lab == "C":
            for w in g.adjacency[v]:
                if w not in leaves:
                    put(w, "B")
        elif lab == "B":
            w1, w2 = g.adjacency[v]
            l1, l2 = label.get(w1), label.get(w2)
            if l1 == "C":
                put(w2, "A")
            elif l2 == "C":
                put(w1, "A")
            elif l1 == "A":
                put(w2, "C")
            elif l2 == "A":
                put(w1, "C")
        elif lab == "A":
            if any(w in leaves or label.get(w) == "C" for w in g.adjacency[v]):
                raise _Reject
            b_nbrs = [w for w in g.adjacency[v] if label.get(w) == "B"]
            unknown = [w for w in g.adjacency[v] if w not in label]
            if len(b_nbrs) > 1:
                raise _Reject
            if len(b_nbrs) == 1:
                for w in unknown:
                    put(w, "A")
            elif len(unknown) == 1:
                put(unknown[0], "B")
            elif not unknown:
                raise _Reject  # an A vertex with no bridge available

    try:
        for s in t.support_set:
            put(s, "C")
        while queue:
            v = queue.popleft()
            if v in label:
                examine(v)
    except _Reject:
        return None

    if set(label) != set(range(n)) - leaves:
        return None  # propagation stalled
    a_set = frozenset(v for v, lab in label.items() if lab == "A")
    if not a_set:
        return None
    comps = _components(set(a_set), g)
    cert = TkCertificate(
        k=k,
        a_set=a_set,
        b_set=frozenset(v for v, lab in label.items() if lab == "B"),
        c_set=frozenset(v for v, lab in label.items() if lab == "C"),
        leaf_set=frozenset(leaves),
        h=len(comps),
        n0=len(a_set),
    )
    return cert if not cert.validate(t) else None


def min_iso_set_Tk(t: Tree, cert: TkCertificate) -> IsolationSolution:
    """The constructive minimum k-isolating set grown from one A component.

    Starting from the first component, repeatedly absorb the components
    reached at distance exactly 4 (through a shared hub), dropping the one
    contact vertex of each newly absorbed component.  The result has size
    |A| - (h - 1) = |C|.
    """
    g = t.graph
    comps = sorted(_components(set(cert.a_set), g), key=min)
    a_all = set(cert.a_set)
    comp_of = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = idx
    chosen = set(comps[0])
    absorbed = set(comps[0])
    while absorbed != a_all:
        dist = _multi_source_distances(g, absorbed)
        contact = {u for u in a_all - absorbed if dist[u] == 4}
        if not contact:
            raise FamilyError("absorption procedure stalled: malformed certificate")
        fresh = set()
        for u in contact:
            fresh |= comps[comp_of[u]]
        chosen |= fresh - contact
        absorbed |= fresh
    return IsolationSolution(cert.k, frozenset(chosen), len(chosen), "family_construction")


def _multi_source_distances(g: Graph, sources: set[int]) -> list[int]:
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def sample_family_Tk(
    rng: random.Random,
    k: int,
    n0: int,
    h: int,
    max_tries: int = 500,
) -> tuple[Tree, TkCertificate]:
    """Seeded random family member: random nontrivial A-forest with h
    components plus a random bridge wiring, retried until the wiring forms
    a tree."""
    if n0 < 2 * h:
        raise FamilyError(f"h={h} components need n0 >= {2 * h}, got {n0}")
    for _ in range(max_tries):
        sizes = [2] * h
        for _ in range(n0 - 2 * h):
            sizes[rng.randrange(h)] += 1
        vertices = list(range(n0))
        rng.shuffle(vertices)
        edges: list[tuple[int, int]] = []
        pos = 0
        for size in sizes:
            chunk = vertices[pos: pos + size]
            pos += size
            edges += _random_tree_edges(rng, chunk)
        n_c = n0 - (h - 1)
        assignment = list(range(n_c)) + [rng.randrange(n_c) for _ in range(h - 1)]
        rng.shuffle(assignment)
        if any(assignment.count(c) > k for c in range(n_c)):
            continue
        try:
            return gen_family_Tk(k, n0, edges, assignment)
        except FamilyError:
            continue
    raise FamilyError(
        f"no valid random instance for k={k}, n0={n0}, h={h} in {max_tries} tries"
    )


# ---------------------------------------------------------------------------
# (n - l)/2 extremal graphs (corona-style)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoronaCertificate:
    """Witness that a graph attains (n - l)/2: either a 4-cycle or a corona
    (one pendant partner per core vertex), with enough leaves attached."""

    kind: str  # c4_leaves | corona_with_leaves
    core_vertices: tuple[int, ...] | tuple[tuple[int, int], ...]
    leaf_assignment: dict[int, int]

    def validate(self, g: Graph, k: int) -> list[str]:
        """Re-check the certificate against the graph; empty means valid."""
        v: list[str] = []
        leaves = {u for u in range(g.n) if g.degree(u) == 1}
        if self.kind == "c4_leaves":
            cyc = self.core_vertices
            if len(cyc) != 4 or len(set(cyc)) != 4:
                v.append("core is not 4 distinct vertices")
                return v
            for i in range(4):
                if not g.has_edge(cyc[i], cyc[(i + 1) % 4]):
                    v.append(f"missing cycle edge ({cyc[i]}, {cyc[(i + 1) % 4]})")
            if g.has_edge(cyc[0], cyc[2]) or g.has_edge(cyc[1], cyc[3]):
                v.append("core has a chord")
            outside = set(range(g.n)) - set(cyc)
            if outside - leaves:
                v.append("a non-core vertex is not a leaf")
            for u in cyc:
                got = sum(1 for w in g.adjacency[u] if w in leaves)
                if got < k:
                    v.append(f"cycle vertex {u} has {got} < k={k} leaves")
                if self.leaf_assignment.get(u, 0) != got:
                    v.append(f"leaf assignment wrong at {u}")
            return v
        if self.kind != "corona_with_leaves":
            v.append(f"unknown kind {self.kind!r}")
            return v
        pairs = self.core_vertices
        vs = [p[0] for p in pairs]
        ws = [p[1] for p in pairs]
        core = set(vs) | set(ws)
        if len(core) != 2 * len(pairs):
            v.append("corona pairs are not disjoint")
            return v
        outside = set(range(g.n)) - core
        if outside - leaves:
            v.append("a non-core vertex is not a leaf")
        sub, _ = g.induced_subgraph(vs)
        if len(vs) > 0 and not sub.is_connected():
            v.append("the inner corona vertices do not induce a connected graph")
        for vi, wi in pairs:
            if not g.has_edge(vi, wi):
                v.append(f"pendant partner edge ({vi}, {wi}) missing")
            w_leaves = sum(1 for u in g.adjacency[wi] if u in leaves)
            non_leaf_nbrs = sorted(u for u in g.adjacency[wi] if u not in leaves)
            if non_leaf_nbrs != [vi]:
                v.append(f"corona leaf {wi} has core neighbors besides {vi}")
            if w_leaves < k:
                v.append(f"corona leaf {wi} has {w_leaves} < k={k} leaves")
        for u, cnt in self.leaf_assignment.items():
            got = sum(1 for w in g.adjacency[u] if w in leaves)
            if got != cnt:
                v.append(f"leaf assignment wrong at {u}")
        return v

    def to_json_dict(self) -> dict:
        if self.kind == "c4_leaves":
            core = list(self.core_vertices)
        else:
            core = [list(p) for p in self.core_vertices]
        return {
            "kind": self.kind,
            "core": core,
            "leaf_assignment": {str(u): c for u, c in sorted(self.leaf_assignment.items())},
        }


def gen_corona_extremal(k: int, r: int, n: int) -> Graph:
    """A connected n-vertex graph with iota_k = r = (n - l)/2.

    A path of r support spines, each joined to the center of its own
    k-star, with the n - (k+2)r spare vertices attached as extra leaves on
    the last center.  For r = 1 one pendant moves to the path vertex so it
    does not degenerate to a leaf (at k = 1, n = 3 no graph attains the
    equality and the construction degrades to the 3-path).
    """
    if k < 1 or r < 1:
        raise FamilyError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    if n < (k + 2) * r:
        raise FamilyError(f"need n >= (k+2)r = {(k + 2) * r}, got {n}")
    edges: list[tuple[int, int]] = []
    if r == 1:
        # v0 = 0, w0 = 1, one pendant on v0, the rest on w0
        edges.append((0, 1))
        if n >= 3:
            edges.append((0, 2))
        edges.extend((1, u) for u in range(3, n))
        return build_graph(n, edges)
    vs = list(range(r))
    ws = list(range(r, 2 * r))
    edges += [(vs[i], vs[i + 1]) for i in range(r - 1)]
    edges += [(vs[i], ws[i]) for i in range(r)]
    nxt = 2 * r
    for i in range(r):
        for _ in range(k):
            edges.append((ws[i], nxt))
            nxt += 1
    while nxt < n:
        edges.append((ws[-1], nxt))
        nxt += 1
    return build_graph(n, edges)


def gen_char_orderminusleaves(
    kind: str,
    k: int,
    leaf_counts: list[int] | None = None,
    base_edges: list[tuple[int, int]] | None = None,
    base_n: int | None = None,
    w_leaf_counts: list[int] | None = None,
    v_leaf_counts: list[int] | None = None,
) -> tuple[Graph, CoronaCertificate]:
    """Build an (n - l)/2 equality graph of the requested kind.

    kind "c4": a 4-cycle with ``leaf_counts[i]`` >= k leaves on vertex i.
    kind "corona": a connected base graph, one pendant partner per base
    vertex with ``w_leaf_counts[i]`` >= k leaves each, plus an optional
    ``v_leaf_counts[i]`` >= 0 leaves on the base vertices themselves.
    """
    if kind == "c4":
        if leaf_counts is None or len(leaf_counts) != 4:
            raise FamilyError("kind c4 needs exactly 4 leaf counts")
        for i, cnt in enumerate(leaf_counts):
            if cnt < k:
                raise FamilyError(f"cycle vertex {i} gets {cnt} < k={k} leaves")
        edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
        nxt = 4
        assignment = {}
        for i, cnt in enumerate(leaf_counts):
            assignment[i] = cnt
            for _ in range(cnt):
                edges.append((i, nxt))
                nxt += 1
        g = build_graph(nxt, edges)
        cert = CoronaCertificate("c4_leaves", (0, 1, 2, 3), assignment)
    elif kind == "corona":
        if base_n is None or base_n < 1 or base_edges is None:
            raise FamilyError("kind corona needs a base graph")
        base = build_graph(base_n, base_edges)
        if not base.is_connected():
            raise FamilyError("corona base graph must be connected")
        m = base_n
        w_counts = w_leaf_counts if w_leaf_counts is not None else [k] * m
        v_counts = v_leaf_counts if v_leaf_counts is not None else [0] * m
        if len(w_counts) != m or len(v_counts) != m:
            raise FamilyError("leaf count lists must match the base order")
        for i, cnt in enumerate(w_counts):
            if cnt < k:
                raise FamilyError(f"corona leaf {i} gets {cnt} < k={k} leaves")
        if any(cnt < 0 for cnt in v_counts):
            raise FamilyError("negative leaf count")
        edges = list(base_edges)
        edges += [(i, m + i) for i in range(m)]
        nxt = 2 * m
        assignment = {}
        for i in range(m):
            assignment[m + i] = w_counts[i]
            for _ in range(w_counts[i]):
                edges.append((m + i, nxt))
                nxt += 1
        for i in range(m):
            if v_counts[i]:
                assignment[i] = v_counts[i]
            for _ in range(v_counts[i]):
                edges.append((i, nxt))
                nxt += 1
        g = build_graph(nxt, edges)
        cert = CoronaCertificate(
            "corona_with_leaves",
            tuple((i, m + i) for i in range(m)),
            assignment,
        )
    else:
        raise FamilyError(f"unknown kind {kind!r}, want 'c4' or 'corona'")
    violations = cert.validate(g, k)
    if violations:
        raise FamilyError("; ".join(violations))
    return g, cert


def recognize_char_orderminusleaves(g: Graph, k: int) -> CoronaCertificate | None:
    """Match g against the (n - l)/2 equality shapes.

    Strips the leaves and tests the core: a chordless 4-cycle needs >= k
    leaves on every core vertex; a corona core needs one pendant partner
    per inner vertex and >= k leaves on every core leaf.
    """
    if g.n < 3 or not g.is_connected():
        raise FamilyError("recognition needs a connected graph with n >= 3")
    leaves = {u for u in range(g.n) if g.degree(u) == 1}
    core_vertices = [u for u in range(g.n) if u not in leaves]
    if not core_vertices:
        return None
    core, core_map = g.induced_subgraph(core_vertices)
    attached = {
        u: sum(1 for w in g.adjacency[u] if w in leaves) for u in core_vertices
    }

    if core.n == 4 and core.edge_count == 4 and all(core.degree(i) == 2 for i in range(4)):
        if all(attached[u] >= k for u in core_vertices):
            cycle = [core_map[0]]
            prev = 0
            cur = core.adjacency[0][0]
            while cur != 0:
                cycle.append(core_map[cur])
                prev, cur = cur, next(w for w in core.adjacency[cur] if w != prev)
            assignment = {u: attached[u] for u in core_vertices}
            cert = CoronaCertificate("c4_leaves", tuple(cycle), assignment)
            return cert if not cert.validate(g, k) else None
        return None

    core_leaves = [i for i in range(core.n) if core.degree(i) == 1]
    if core.n == 2 and core.edge_count == 1:
        inner, pendant = 0, 1
        pairs = [(core_map[inner], core_map[pendant])]
        need_k = [core_map[0], core_map[1]]  # both core vertices are core leaves
    else:
        inner_vertices = [i for i in range(core.n) if core.degree(i) > 1]
        if len(core_leaves) != len(inner_vertices) or not inner_vertices:
            return None
        partner = {}
        for i in inner_vertices:
            pendants = [w for w in core.adjacency[i] if w in set(core_leaves)]
            if len(pendants) != 1:
                return None
            partner[i] = pendants[0]
        if len(set(partner.values())) != len(core_leaves):
            return None
        sub, _ = core.induced_subgraph(inner_vertices)
        if not sub.is_connected():
            return None
        pairs = [(core_map[i], core_map[w]) for i, w in sorted(partner.items())]
        need_k = [core_map[w] for w in core_leaves]
    if any(attached[u] < k for u in need_k):
        return None
    assignment = {u: attached[u] for u in core_vertices if attached[u] > 0}
    cert = CoronaCertificate("corona_with_leaves", tuple(pairs), assignment)
    return cert if not cert.validate(g, k) else None


# ---------------------------------------------------------------------------
# Gap spiders and twin-leaf augmentation
# ---------------------------------------------------------------------------

def gen_spider_gap(k: int) -> Tree:
    """The (2k+3)-vertex spider whose (n + l)/4 slack is exactly k: a
    4-path with 2k - 1 extra leaves on one support vertex."""
    if k < 1:
        raise FamilyError(f"need k >= 1, got {k}")
    edges = [(0, 1), (1, 2), (2, 3)]
    edges += [(1, 4 + i) for i in range(2 * k - 1)]
    return as_tree(build_graph(2 * k + 3, edges))


def add_twin_leaves(
    t: Tree,
    cert: FCertificate,
    multiplicities: dict[int, int],
) -> Tree:
    """Attach extra twin leaves at support vertices of a family member.

    The result attains iota = (n - l + 2s)/4 with its own statistics.
    """
    for v, extra in multiplicities.items():
        if v not in cert.b_set:
            raise FamilyError(f"vertex {v} is not a support vertex of the family member")
        if extra < 0:
            raise FamilyError(f"negative multiplicity at {v}")
    edges = t.graph.edges()
    nxt = t.n
    for v in sorted(multiplicities):
        for _ in range(multiplicities[v]):
            edges.append((v, nxt))
            nxt += 1
    return as_tree(build_graph(nxt, edges))
