"""Independent reference implementations used by the tests."""

import math


def dp_recursive(points, eps):
    """Textbook recursive Douglas-Peucker on plain tuples."""

    def seg_dist(p, a, b):
        abx, aby = b[0] - a[0], b[1] - a[1]
        den = abx * abx + aby * aby
        if den == 0.0:
            return math.hypot(p[0] - a[0], p[1] - a[1])
        t = ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / den
        t = min(1.0, max(0.0, t))
        return math.hypot(p[0] - (a[0] + t * abx), p[1] - (a[1] + t * aby))

    def rec(i, j):
        best, idx = -1.0, None
        for k in range(i + 1, j):
            d = seg_dist(points[k], points[i], points[j])
            if d > best:
                best, idx = d, k
        if idx is None or best <= eps:
            return [i, j]
        left = rec(i, idx)
        return left[:-1] + rec(idx, j)

    if len(points) <= 2:
        return list(range(len(points)))
    return rec(0, len(points) - 1)


def point_in_polygon(x, y, poly):
    """Even-odd ray casting; points on an edge count as inside."""
    n = len(poly)
    inside = False
    for k in range(n):
        (x1, y1), (x2, y2) = poly[k], poly[(k + 1) % n]
        cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
        if abs(cross) <= 1e-9 and min(x1, x2) - 1e-9 <= x <= max(x1, x2) + 1e-9 \
                and min(y1, y2) - 1e-9 <= y <= max(y1, y2) + 1e-9:
            return True
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xc:
                inside = not inside
    return inside


def exhaustive_turns(intersection, llanes):
    """All (+ lane, - lane) pairs of an intersection except those of the same road."""
    links = list(intersection.links)
    by_link = {}
    for lane in llanes:
        by_link.setdefault(lane.link_id, []).append(lane.id)
    pairs = set()
    for pos_in in range(0, len(links), 2):
        for pos_out in range(1, len(links), 2):
            if pos_out == pos_in + 1:
                continue  # the same arm: U-turn
            for a in by_link.get(links[pos_in], []):
                for b in by_link.get(links[pos_out], []):
                    pairs.add((a, b))
    return pairs


def union_find_components(points, pairs, l_dis):
    """Components of the graph (pairs + all point pairs closer than l_dis)."""
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = list(pairs)
    for a in range(n):
        for b in range(a + 1, n):
            if math.dist(points[a], points[b]) < l_dis:
                edges.append((a, b))
    for a, b in edges:
        parent[find(a)] = find(b)
    comps = {}
    for a in range(n):
        comps.setdefault(find(a), []).append(a)
    paired = {p for e in pairs for p in e}
    return sorted((sorted(c) for c in comps.values() if paired & set(c)), key=lambda c: c[0])
