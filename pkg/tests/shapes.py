"""Small named graphs used across the tests."""

from vconn.graph import Graph


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n)


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], n)


def complete(n):
    return Graph.complete(range(n))


def bowtie():
    # triangles 0-1-2 and 2-3-4 sharing vertex 2
    return Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)], 5)


def star(leaves):
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def cliques_sharing(size, shared):
    """Two copies of K_size glued along ``shared`` common vertices."""
    a = list(range(size))
    b = list(range(size - shared, 2 * size - shared))
    edges = {(u, v) for grp in (a, b) for i, u in enumerate(grp) for v in grp[i + 1:]}
    return Graph.from_edges(sorted(edges), 2 * size - shared)
