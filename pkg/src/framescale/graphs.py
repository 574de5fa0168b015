"""Frame graphs and the exact graph statistics the scalability filters consume.

The frame graph puts an edge between two vectors exactly when their inner
product is nonzero (above ``tol_zero`` in float mode, exactly nonzero in
exact mode).  All statistics are computed exactly; the two exponential
searches (independence number, longest induced path) are exact branch and
bound / pruned DFS behind a configurable vertex cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactnum import sign
from .frames import Frame

DEFAULT_VERTEX_CAP = 32


class GraphError(ValueError):
    pass


class FrameGraph:
    """Simple undirected graph on vertex indices 0..m-1."""

    __slots__ = ("vertex_count", "edges", "vertex_flags", "_adj")

    def __init__(self, vertex_count: int, edges, vertex_flags=None):
        if vertex_count < 1:
            raise GraphError("need at least one vertex")
        canon = set()
        for (i, j) in edges:
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if not (0 <= i < vertex_count and 0 <= j < vertex_count):
                raise GraphError(f"edge ({i},{j}) out of range")
            canon.add((min(i, j), max(i, j)))
        self.vertex_count = vertex_count
        self.edges = frozenset(canon)
        adj = [set() for _ in range(vertex_count)]
        for (i, j) in canon:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(s) for s in adj)
        flags = {i: set() for i in range(vertex_count)}
        if vertex_flags:
            for i, fs in vertex_flags.items():
                flags[i] |= set(fs)
        for i in range(vertex_count):
            if not self._adj[i]:
                flags[i].add("isolated")
        self.vertex_flags = {i: frozenset(fs) for i, fs in flags.items()}

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def sorted_edges(self):
        return sorted(self.edges)

    def has_flagged_vertices(self) -> bool:
        return any(self.vertex_flags[i] for i in range(self.vertex_count))

    def __eq__(self, other):
        if not isinstance(other, FrameGraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"FrameGraph(m={self.vertex_count}, edges={len(self.edges)})"


def build_graph(frame: Frame, tol_zero: float = 1e-10) -> FrameGraph:
    """Edge (i,j) iff |<f_i, f_j>| exceeds tol_zero (exactly nonzero in exact
    mode, where tol_zero must be 0)."""
    if frame.is_exact and tol_zero != 0:
        raise GraphError("exact mode requires tol_zero = 0")
    if tol_zero < 0:
        raise GraphError("tol_zero must be nonnegative")
    m = frame.count
    vs = frame.vectors

    def nonzero(x) -> bool:
        if frame.is_exact:
            return sign(x) != 0
        return abs(float(x)) > tol_zero

    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            ip = sum(a * b for a, b in zip(vs[i], vs[j]))
            if nonzero(ip):
                edges.append((i, j))
    flags = {}
    for i in range(m):
        norm_sq = sum(a * a for a in vs[i])
        if not nonzero(norm_sq):
            flags[i] = {"zero_vector"}
    return FrameGraph(m, edges, flags)


@dataclass(frozen=True)
class GraphStats:
    components: tuple  # tuple of sorted vertex tuples
    is_connected: bool
    diameter: int | None  # None = infinite (disconnected)
    is_bipartite: bool
    component_part_sizes: tuple | None  # per-component (|X_c|, |Y_c|) if bipartite
    alpha: int | None
    max_independent_set: tuple | None
    bridges: tuple
    leaves: tuple
    is_complete: bool
    is_empty: bool
    is_cycle: bool
    induced_path_vertices: int | None
    induced_path_witness: tuple | None
    cap_exceeded: bool


def _components(g: FrameGraph):
    seen = [False] * g.vertex_count
    comps = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _diameter(g: FrameGraph, connected: bool):
    if not connected:
        return None
    if g.vertex_count == 1:
        return 0
    best = 0
    for src in range(g.vertex_count):
        dist = {src: 0}
        frontier = [src]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                for w in g.neighbors(v):
                    if w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        best = max(best, max(dist.values()))
    return best


def _two_coloring(g: FrameGraph, comps):
    """Returns (is_bipartite, color dict, per-component part sizes)."""
    color = {}
    part_sizes = []
    for comp in comps:
        color[comp[0]] = 0
        queue = [comp[0]]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False, {}, ()
        x = sum(1 for v in comp if color[v] == 0)
        part_sizes.append((x, len(comp) - x))
    return True, color, tuple(part_sizes)


def _bridges(g: FrameGraph):
    """Bridge edges by iterative DFS low-link."""
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    out = []
    timer = 0
    for root in range(g.vertex_count):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(sorted(g.neighbors(root))))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
                # parallel edges are impossible in a simple graph, so the
                # single parent skip is safe
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        out.append((min(pv, v), max(pv, v)))
        # root handled implicitly
    return tuple(sorted(out))


def _max_independent_set_masks(adj_masks):
    """Exact maximum independent set over bitmask adjacency; returns a mask."""
    n = len(adj_masks)
    full = (1 << n) - 1
    best = {"mask": 0, "size": 0}

    def popcount(x):
        return x.bit_count()

    def grow(candidates, chosen, size):
        if size + popcount(candidates) <= best["size"]:
            return
        if candidates == 0:
            if size > best["size"]:
                best["size"] = size
                best["mask"] = chosen
            return
        # branch on a candidate of maximum degree within the candidate set
        pick, pick_deg = -1, -1
        c = candidates
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            d = popcount(adj_masks[v] & candidates)
            if d > pick_deg:
                pick, pick_deg = v, d
        bit = 1 << pick
        grow(candidates & ~(bit | adj_masks[pick]), chosen | bit, size + 1)
        grow(candidates & ~bit, chosen, size)

    grow(full, 0, 0)
    return best["mask"]


def _longest_induced_path(g: FrameGraph):
    """Longest induced path as (vertex count, witness tuple), exact DFS."""
    n = g.vertex_count
    adj = [0] * n
    for (i, j) in g.edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    best = {"len": 1, "path": (0,)}

    def extend(path, endpoint, blocked):
        if len(path) > best["len"]:
            best["len"] = len(path)
            best["path"] = tuple(path)
        cand = adj[endpoint] & ~blocked
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            path.append(v)
            # previous endpoint's other neighbors become chords if revisited
            extend(path, v, blocked | (1 << v) | (adj[endpoint] & ~(1 << v)))
            path.pop()

    for start in range(n):
        extend([start], start, 1 << start)
    return best["len"], best["path"]


def compute_stats(g: FrameGraph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> GraphStats:
    """All graph statistics, computed exactly.

    The exponential searches (alpha, longest induced path) are skipped and
    reported as None with cap_exceeded=True when vertex_count > vertex_cap.
    """
    m = g.vertex_count
    comps = _components(g)
    connected = len(comps) == 1
    diameter = _diameter(g, connected)
    bip, _, part_sizes = _two_coloring(g, comps)
    bridges = _bridges(g)
    leaves = tuple(v for v in range(m) if g.degree(v) == 1)
    is_complete = len(g.edges) == m * (m - 1) // 2
    is_empty = not g.edges
    is_cycle = connected and m >= 3 and all(g.degree(v) == 2 for v in range(m))

    cap_exceeded = m > vertex_cap
    alpha = mis = path_len = witness = None
    if not cap_exceeded:
        adj_masks = [0] * m
        for (i, j) in g.edges:
            adj_masks[i] |= 1 << j
            adj_masks[j] |= 1 << i
        mask = _max_independent_set_masks(adj_masks)
        mis = tuple(v for v in range(m) if mask >> v & 1)
        alpha = len(mis)
        path_len, witness = _longest_induced_path(g)

    return GraphStats(
        components=comps,
        is_connected=connected,
        diameter=diameter,
        is_bipartite=bip,
        component_part_sizes=part_sizes if bip else None,
        alpha=alpha,
        max_independent_set=mis,
        bridges=bridges,
        leaves=leaves,
        is_complete=is_complete,
        is_empty=is_empty,
        is_cycle=is_cycle,
        induced_path_vertices=path_len,
        induced_path_witness=witness,
        cap_exceeded=cap_exceeded,
    )


def balanced_bipartition_exists(g: FrameGraph) -> bool:
    """Whether some global bipartition (X, Y) of a bipartite graph has
    |X| = |Y|: a sign choice per component over part-size differences."""
    comps = _components(g)
    bip, _, part_sizes = _two_coloring(g, comps)
    if not bip:
        raise GraphError("graph is not bipartite")
    diffs = [x - y for (x, y) in part_sizes]
    sums = {0}
    for d in diffs:
        sums = {s + d for s in sums} | {s - d for s in sums}
    return 0 in sums


def unique_common_neighbor_pairs(g: FrameGraph):
    """All non-adjacent pairs u < v with exactly one common neighbor,
    returned as (u, v, witness)."""
    out = []
    for u, v in combinations(range(g.vertex_count), 2):
        if g.has_edge(u, v):
            continue
        common = g.neighbors(u) & g.neighbors(v)
        if len(common) == 1:
            out.append((u, v, min(common)))
    return out


def closed_neighborhoods_distinct(g: FrameGraph):
    """(True, None) if all closed neighborhoods differ, else (False, pair)."""
    closed = [g.neighbors(v) | {v} for v in range(g.vertex_count)]
    for u, v in combinations(range(g.vertex_count), 2):
        if closed[u] == closed[v]:
            return False, (u, v)
    return True, None


def zero_pattern_equal(g1: FrameGraph, g2: FrameGraph) -> bool:
    """Index-aligned adjacency identity (not general graph isomorphism)."""
    if g1.vertex_count != g2.vertex_count:
        raise GraphError("vertex counts differ")
    return g1.edges == g2.edges


def induced_subgraph(g: FrameGraph, keep) -> FrameGraph:
    """Subgraph on the kept vertices; labels are re-indexed in sorted order
    and the original labels recorded in vertex flags."""
    keep = sorted(set(keep))
    if not keep:
        raise GraphError("cannot take the subgraph on an empty vertex set")
    if keep[0] < 0 or keep[-1] >= g.vertex_count:
        raise GraphError("kept vertices out of range")
    index = {v: k for k, v in enumerate(keep)}
    edges = [
        (index[i], index[j]) for (i, j) in g.edges if i in index and j in index
    ]
    flags = {
        index[v]: set(g.vertex_flags[v]) | {f"orig_v{v + 1}"} for v in keep
    }
    return FrameGraph(len(keep), edges, flags)


def export_dot(g: FrameGraph) -> str:
    """Deterministic DOT text; vertices v1..vm, edges sorted by index."""
    lines = ["graph G {"]
    for v in range(g.vertex_count):
        # "isolated" is derivable from the edge list; only data-quality
        # flags such as zero_vector are worth showing
        flags = sorted(
            f for f in g.vertex_flags[v]
            if f != "isolated" and not f.startswith("orig_")
        )
        attr = f' [flags="{",".join(flags)}"]' if flags else ""
        lines.append(f"  v{v + 1}{attr};")
    for (i, j) in g.sorted_edges():
        lines.append(f"  v{i + 1} -- v{j + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# Named constructors used by the corpus and the graph-only CLI mode.

def empty_graph(m: int) -> FrameGraph:
    return FrameGraph(m, [])


def complete_graph(m: int) -> FrameGraph:
    return FrameGraph(m, combinations(range(m), 2))


def path_graph(m: int) -> FrameGraph:
    return FrameGraph(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> FrameGraph:
    if m < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return FrameGraph(m, [(i, (i + 1) % m) for i in range(m)])


def complete_bipartite_graph(a: int, b: int) -> FrameGraph:
    return FrameGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def graph_union(g1: FrameGraph, g2: FrameGraph) -> FrameGraph:
    off = g1.vertex_count
    edges = list(g1.edges) + [(i + off, j + off) for (i, j) in g2.edges]
    return FrameGraph(off + g2.vertex_count, edges)


def graph_join(g1: FrameGraph, g2: FrameGraph) -> FrameGraph:
    off = g1.vertex_count
    edges = list(g1.edges) + [(i + off, j + off) for (i, j) in g2.edges]
    edges += [(i, off + j) for i in range(off) for j in range(g2.vertex_count)]
    return FrameGraph(off + g2.vertex_count, edges)
