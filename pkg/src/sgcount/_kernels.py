"""Compiled inner loops for the two exhaustive enumerations.

Both kernels split their search space into independent chunks (``prange``)
and add chunk tallies at the end, so results do not depend on scheduling.
"""

import warnings

import numpy as np
from numba import njit, prange

# an old system TBB makes numba fall back to another threading layer; say nothing
warnings.filterwarnings("ignore", message=".*TBB threading layer.*")


@njit(cache=True, inline="always")
def _find(parent, x):
    while parent[x] != x:
        x = parent[x]
    return x


@njit(cache=True)
def _corner_code(roots, k):
    # restricted-growth labelling of corner roots, encoded base k
    code = 0
    scale = 1
    labels = np.empty(k, np.int64)
    nxt = 0
    for c in range(k):
        lab = -1
        for e in range(c):
            if roots[e] == roots[c]:
                lab = labels[e]
                break
        if lab == -1:
            lab = nxt
            nxt += 1
        labels[c] = lab
        code += lab * scale
        scale *= k
    return code


@njit(parallel=True, cache=True)
def assignment_tally(union_pairs, union_counts, shape_weight, mono_lookup,
                     corners, out_lookup, n_vertices, n_out, n_mono):
    """Tally every assignment of partitions to subs.

    Returns ``tally[out, mono]`` where ``out`` indexes the merged global
    partition (``n_out`` means dead) and ``mono`` the monomial of shapes.
    """
    S = union_counts.shape[0]
    P = union_counts.shape[1]
    k = corners.shape[0]
    partial = np.zeros((P, n_out + 1, n_mono), np.int64)
    for first in prange(P):
        # parents[s] holds the union-find after subs 0..s-1 are applied
        parents = np.empty((S + 1, n_vertices), np.int64)
        keys = np.zeros(S + 1, np.int64)
        digits = np.zeros(S, np.int64)
        digits[0] = first
        roots = np.empty(k, np.int64)
        for v in range(n_vertices):
            parents[0, v] = v
        level = 0  # first level whose state must be rebuilt
        while True:
            for s in range(level, S):
                p = digits[s]
                for v in range(n_vertices):
                    parents[s + 1, v] = parents[s, v]
                keys[s + 1] = keys[s] + shape_weight[p]
                par = parents[s + 1]
                for u in range(union_counts[s, p]):
                    a = _find(par, union_pairs[s, p, u, 0])
                    b = _find(par, union_pairs[s, p, u, 1])
                    if a < b:
                        par[b] = a
                    elif b < a:
                        par[a] = b
            par = parents[S]
            m = mono_lookup[keys[S]]
            for c in range(k):
                roots[c] = _find(par, corners[c])
            dead = False
            for v in range(n_vertices):
                r = _find(par, v)
                ok = False
                for c in range(k):
                    if roots[c] == r:
                        ok = True
                        break
                if not ok:
                    dead = True
                    break
            if dead:
                partial[first, n_out, m] += 1
            else:
                partial[first, out_lookup[_corner_code(roots, k)], m] += 1
            # odometer over digits 1..S-1
            s = S - 1
            while s >= 1 and digits[s] == P - 1:
                digits[s] = 0
                s -= 1
            if s < 1:
                break
            digits[s] += 1
            level = s
    out = np.zeros((n_out + 1, n_mono), np.int64)
    for i in range(P):
        out += partial[i]
    return out


@njit(parallel=True, cache=True)
def subset_tally(edges_u, edges_v, is_corner, corners, out_lookup, n_vertices,
                 n_out, prefix_bits):
    """Classify all 2^m edge subsets by induced corner partition.

    Uses union by size with rollback: within a chunk the subsets are visited
    as a binary counter over the low edges, and incrementing the counter
    undoes exactly the unions of the cleared low bits. Returns counts per
    global partition with the dead count in slot ``n_out``.
    """
    m = edges_u.shape[0]
    low = m - prefix_bits
    chunks = 1 << prefix_bits
    k = corners.shape[0]
    partial = np.zeros((chunks, n_out + 1), np.int64)
    for chunk in prange(chunks):
        parent = np.arange(n_vertices)
        size = np.ones(n_vertices, np.int64)
        flag = np.zeros(n_vertices, np.int64)
        for v in range(n_vertices):
            flag[v] = is_corner[v]
        comps = n_vertices
        corner_comps = k
        # stack of (edge bit, merged child root or -1, parent's old flag)
        st_bit = np.empty(m + 1, np.int64)
        st_child = np.empty(m + 1, np.int64)
        st_flag = np.empty(m + 1, np.int64)
        top = 0
        roots = np.empty(k, np.int64)
        # fixed high edges from the chunk index
        for j in range(prefix_bits):
            if (chunk >> j) & 1:
                e = low + j
                a = _find(parent, edges_u[e])
                b = _find(parent, edges_v[e])
                if a != b:
                    if size[a] < size[b]:
                        a, b = b, a
                    parent[b] = a
                    size[a] += size[b]
                    comps -= 1
                    if flag[a] == 1 and flag[b] == 1:
                        corner_comps -= 1
                    flag[a] = flag[a] | flag[b]
        total = 1 << low
        for mask in range(total):
            if mask > 0:
                # lowest set bit of mask becomes the newly added edge
                t = 0
                while not (mask >> t) & 1:
                    t += 1
                while top > 0 and st_bit[top - 1] < t:
                    top -= 1
                    b = st_child[top]
                    if b >= 0:
                        a = parent[b]
                        size[a] -= size[b]
                        parent[b] = b
                        comps += 1
                        if flag[b] == 1 and st_flag[top] == 1:
                            corner_comps += 1
                        flag[a] = st_flag[top]
                a = _find(parent, edges_u[t])
                b = _find(parent, edges_v[t])
                st_bit[top] = t
                if a != b:
                    if size[a] < size[b]:
                        a, b = b, a
                    st_child[top] = b
                    st_flag[top] = flag[a]
                    parent[b] = a
                    size[a] += size[b]
                    comps -= 1
                    if flag[a] == 1 and flag[b] == 1:
                        corner_comps -= 1
                    flag[a] = flag[a] | flag[b]
                else:
                    st_child[top] = -1
                    st_flag[top] = 0
                top += 1
            if comps == corner_comps:
                for c in range(k):
                    roots[c] = _find(parent, corners[c])
                partial[chunk, out_lookup[_corner_code(roots, k)]] += 1
            else:
                partial[chunk, n_out] += 1
    out = np.zeros(n_out + 1, np.int64)
    for i in range(chunks):
        out += partial[i]
    return out
