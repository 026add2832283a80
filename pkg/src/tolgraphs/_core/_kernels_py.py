"""Pure-Python kernels; reference implementation of the compiled module.

All inputs are plain lists of ints (coordinate ranks / scaled weights), so
both backends are exact and directly comparable.
"""

from collections import deque


def crossing_arcs(tops, bottoms):
    """Arcs (x, y) for every crossing pair, directed toward the larger
    bottom-minus-top displacement.

    For a crossing pair the rail orders disagree, so the direction is
    decided by the bottom rail alone: bottoms[x] < bottoms[y] implies the
    displacement of x is smaller.
    """
    n = len(tops)
    arcs = []
    for x in range(n):
        tx = tops[x]
        bx = bottoms[x]
        for y in range(x + 1, n):
            if (tx < tops[y]) != (bx < bottoms[y]):
                if bx < bottoms[y]:
                    arcs.append((x, y))
                else:
                    arcs.append((y, x))
    return arcs


def trapezoid_edges(a, b, c, d):
    """Edges (x, y), x < y, between trapezoids that are not separated.

    x and y are separated when one lies completely left of the other:
    b[x] < a[y] and d[x] < c[y], or symmetrically.
    """
    n = len(a)
    edges = []
    for x in range(n):
        for y in range(x + 1, n):
            if not (
                (b[x] < a[y] and d[x] < c[y]) or (b[y] < a[x] and d[y] < c[x])
            ):
                edges.append((x, y))
    return edges


def spfa_longest(n, arc_u, arc_v, arc_w):
    """Longest-path distances from a virtual zero source over arcs
    u -> v with weight w, or None if a positive cycle exists.

    Queue-based relaxation; a vertex requeued more than n times certifies
    a positive cycle.
    """
    heads = [[] for _ in range(n)]
    for u, v, w in zip(arc_u, arc_v, arc_w):
        heads[u].append((v, w))
    dist = [0] * n
    in_queue = [True] * n
    requeues = [0] * n
    queue = deque(range(n))
    while queue:
        u = queue.popleft()
        in_queue[u] = False
        du = dist[u]
        for v, w in heads[u]:
            nd = du + w
            if nd > dist[v]:
                dist[v] = nd
                if not in_queue[v]:
                    requeues[v] += 1
                    if requeues[v] > n:
                        return None
                    in_queue[v] = True
                    queue.append(v)
    return dist


def nae_smallest(n, clause_bits):
    """Smallest assignment (as an n-bit int, variable 1 = most significant
    bit) giving every clause both a set and an unset bit, or -1."""
    for a in range(1 << n):
        ok = True
        for p, q, r in clause_bits:
            s = ((a >> p) & 1) + ((a >> q) & 1) + ((a >> r) & 1)
            if s == 0 or s == 3:
                ok = False
                break
        if ok:
            return a
    return -1
