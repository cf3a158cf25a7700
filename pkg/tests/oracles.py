"""Independent brute-force oracles shared by several test modules."""
import itertools

from pgarcs.geometry import PlaneParams, det3, point_from_index


def brute_complete_arc_sizes(q):
    """Sizes of all complete arcs of PG(2,q), from determinants alone.

    Arcs are enumerated as increasing index lists; an arc is complete when
    no other point can join it without forming a collinear triple.
    """
    plane = PlaneParams(q)
    n = plane.n_points
    pts = [point_from_index(plane, i) for i in range(n)]
    # on_pair[i][j]: bitmask of points collinear with i and j
    on_pair = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        m = 0
        for r in range(n):
            if det3(q, pts[i], pts[j], pts[r]) == 0:
                m |= 1 << r
        on_pair[i][j] = on_pair[j][i] = m
    full = (1 << n) - 1
    sizes = set()

    def dfs(arc, blocked, start):
        # blocked: arc points plus every point on a bisecant
        if blocked == full and len(arc) >= 1:
            sizes.add(len(arc))
        for c in range(start, n):
            if blocked >> c & 1:
                continue
            nb = blocked | (1 << c)
            for a in arc:
                nb |= on_pair[a][c]
            arc.append(c)
            dfs(arc, nb, c + 1)
            arc.pop()

    dfs([], 0, 0)
    return sizes
