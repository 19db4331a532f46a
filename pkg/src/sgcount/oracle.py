"""Ground-truth counters on explicit graphs.

``classify_by_subsets`` visits every edge subset. ``count_connected_tutte``
evaluates T(G; 1, 2) by deletion-contraction on multigraphs; it shares no
code with the subset enumeration or the recursion engine.
"""

from __future__ import annotations

import logging
import sys
from collections import OrderedDict

import numpy as np

from .errors import Disconnected, EdgeCap, SymmetryViolation
from .partitions import enumerate_partitions, integer_partitions
from .sequences import ClassVector
from .topology import ExplicitGraph

log = logging.getLogger(__name__)

DEFAULT_EDGE_CAP = 30


def subset_partition_counts(graph: ExplicitGraph, edge_cap: int = DEFAULT_EDGE_CAP,
                            prefix_bits: int | None = None) -> tuple:
    """Counts per concrete corner partition, plus the discarded count."""
    m = graph.edge_count
    if m > edge_cap:
        raise EdgeCap(f"{m} edges exceeds the subset-enumeration cap {edge_cap}")
    from ._kernels import subset_tally

    k = len(graph.corners)
    parts = enumerate_partitions(k)
    out_lookup = np.full(k**k, -1, np.int64)
    for i, p in enumerate(parts):
        out_lookup[sum(x * k**c for c, x in enumerate(p.rgs))] = i
    is_corner = np.zeros(graph.vertex_count, np.int64)
    is_corner[list(graph.corners)] = 1
    eu = np.array([u for u, _ in graph.edges], np.int64)
    ev = np.array([v for _, v in graph.edges], np.int64)
    if prefix_bits is None:
        prefix_bits = min(6, m)
    counts = subset_tally(
        eu, ev, is_corner, np.array(graph.corners, np.int64), out_lookup,
        graph.vertex_count, len(parts), prefix_bits,
    )
    per_partition = {p: int(c) for p, c in zip(parts, counts[:-1])}
    return per_partition, int(counts[-1])


def aggregate_by_shape(per_partition: dict, stage: int = 0) -> ClassVector:
    """Collapse partition counts to shape counts, checking they agree within a shape."""
    k = next(iter(per_partition)).k
    counts = {}
    for shape in integer_partitions(k):
        values = {c for p, c in per_partition.items() if p.shape == shape}
        if len(values) != 1:
            raise SymmetryViolation(f"shape {shape}: unequal partition counts {sorted(values)}")
        counts[shape] = values.pop()
    return ClassVector(stage=stage, counts=counts)


def classify_by_subsets(graph: ExplicitGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> ClassVector:
    per_partition, _ = subset_partition_counts(graph, edge_cap)
    return aggregate_by_shape(per_partition, graph.n)


# --- deletion-contraction -------------------------------------------------


def _canonical_key(n_vertices: int, bundles: dict) -> tuple:
    """Relabel by (degree, neighbour degrees, old label) and list the bundles.

    The key records the full labelled multigraph, so equal keys always mean
    isomorphic graphs; the degree refinement only raises the hit rate.
    """
    deg = [0] * n_vertices
    for (u, v), mult in bundles.items():
        deg[u] += mult
        deg[v] += mult
    nbr = [[] for _ in range(n_vertices)]
    for (u, v), mult in bundles.items():
        nbr[u].append((deg[v], mult))
        nbr[v].append((deg[u], mult))
    order = sorted(range(n_vertices), key=lambda x: (deg[x], sorted(nbr[x]), x))
    relabel = {old: new for new, old in enumerate(order)}
    items = []
    for (u, v), mult in bundles.items():
        a, b = relabel[u], relabel[v]
        items.append((a, b, mult) if a < b else (b, a, mult))
    items.sort()
    return n_vertices, tuple(items)


class TutteCounter:
    """Counts connected spanning subgraphs, i.e. T(G; 1, 2).

    Multigraph states are ``(n_vertices, {(u, v): multiplicity})`` with
    u < v and loops already factored out. A bundle of ``k`` parallel edges
    contributes ``2**k - 1`` when contracted (at least one edge kept) and
    nothing extra when deleted.
    """

    def __init__(self, memo_size: int = 2_000_000):
        self.memo: OrderedDict = OrderedDict()
        self.memo_size = memo_size
        self.hits = 0

    def count(self, graph: ExplicitGraph) -> int:
        n = graph.vertex_count
        bundles: dict = {}
        for u, v in graph.edges:
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            bundles[key] = bundles.get(key, 0) + 1
        loops = sum(1 for u, v in graph.edges if u == v)
        if not _connected(n, bundles):
            raise Disconnected("T(G;1,2) counting requires a connected graph")
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 10 * n + 1000))
        try:
            return 2**loops * self._count(n, bundles)
        finally:
            sys.setrecursionlimit(limit)

    def _count(self, n: int, bundles: dict) -> int:
        if n == 1:
            return 1
        if not bundles:
            return 0
        key = _canonical_key(n, bundles)
        hit = self.memo.get(key)
        if hit is not None:
            self.hits += 1
            self.memo.move_to_end(key)
            return hit
        n2, b2 = key[0], {(u, v): m for u, v, m in key[1]}
        result = self._reduce(n2, b2)
        self.memo[key] = result
        if len(self.memo) > self.memo_size:
            self.memo.popitem(last=False)
        return result

    def _reduce(self, n: int, bundles: dict) -> int:
        deg_nbrs = [0] * n
        for u, v in bundles:
            deg_nbrs[u] += 1
            deg_nbrs[v] += 1
        if 0 in deg_nbrs:
            return 0  # isolated vertex with n > 1
        # pendant bundle: every edge of it is a bridge, at least one is kept
        for x in range(n):
            if deg_nbrs[x] == 1:
                (u, v), mult = next(
                    (e, m) for e, m in bundles.items() if x in e
                )
                n2, b2, _ = _contract(n, bundles, u, v)
                return (2**mult - 1) * self._count(n2, b2)
        # branch on a bundle at a vertex of minimum degree
        x = min(range(n), key=lambda i: (deg_nbrs[i], i))
        (u, v), mult = min((e, m) for e, m in bundles.items() if x in e)
        deleted = dict(bundles)
        del deleted[(u, v)]
        n2, b2, loops = _contract(n, bundles, u, v)
        return self._count(n, deleted) + (2**mult - 1) * 2**loops * self._count(n2, b2)


def _contract(n: int, bundles: dict, u: int, v: int) -> tuple:
    """Merge v into u, drop the (u, v) bundle, renumber vertices above v down."""
    out: dict = {}
    loops = 0

    def ren(x):
        x = u if x == v else x
        return x - 1 if x > v else x

    for (a, b), m in bundles.items():
        if (a, b) == (u, v):
            continue
        a2, b2 = ren(a), ren(b)
        if a2 == b2:
            loops += m
            continue
        key = (a2, b2) if a2 < b2 else (b2, a2)
        out[key] = out.get(key, 0) + m
    return n - 1, out, loops


def _connected(n: int, bundles: dict) -> bool:
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for u, v in bundles:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def count_connected_tutte(graph: ExplicitGraph, counter: TutteCounter | None = None) -> int:
    return (counter or TutteCounter()).count(graph)


# --- frontier transfer matrix ---------------------------------------------


def count_connected_frontier(graph: ExplicitGraph) -> int:
    """Connected spanning subgraphs by a sweep over edges with a vertex frontier.

    States are set partitions of the frontier vertices into the components
    seen so far. A vertex leaves the frontier after its last edge; if it was
    the last frontier member of its component, that component is closed off,
    which is only allowed for the final component at the very end.
    """
    n = graph.vertex_count
    if n == 1:
        return 2 ** len(graph.edges)
    adj = [set() for _ in range(n)]
    for u, v in graph.edges:
        adj[u].add(v)
        adj[v].add(u)
    # BFS order keeps the frontier narrow on gasket-like graphs
    order, seen = [0], {0}
    for x in order:
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                order.append(y)
    if len(order) != n:
        return 0
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in graph.edges)
    edges.sort(key=lambda e: (e[1], e[0]))
    last = {}
    for i, (a, b) in enumerate(edges):
        last[a] = last[b] = i

    states: dict = {(): 1}
    present: set = set()
    for i, (a, b) in enumerate(edges):
        for x in (a, b):
            if x not in present:
                present.add(x)
                states = {s + ((x, len({l for _, l in s})),): c for s, c in states.items()}
        step: dict = {}
        for s, c in states.items():
            step[s] = step.get(s, 0) + c  # edge left out
            lab = dict(s)
            la, lb = lab[a], lab[b]
            s2 = tuple((v, la if l == lb else l) for v, l in s) if la != lb else s
            step[s2] = step.get(s2, 0) + c
        leaving = [x for x in (a, b) if last[x] == i]
        final = i == len(edges) - 1
        states = {}
        for s, c in step.items():
            lab = dict(s)
            ok = True
            for x in leaving:
                l = lab.pop(x)
                if l not in lab.values() and not (final and not lab):
                    ok = False
                    break
            if not ok:
                continue
            relabel: dict = {}
            key = tuple((v, relabel.setdefault(lab[v], len(relabel))) for v in sorted(lab))
            states[key] = states.get(key, 0) + c
        present.difference_update(leaving)
    return states.get((), 0)
