#!/usr/bin/env python3
"""Independent brute-force oracles that produce the frozen fixture values.

Nothing here imports the C++ library: every value is recomputed from first
principles (enumeration, closed forms) so the unit tests compare the
implementation against an independent source.

Usage: python3 tools/oracles/derive_fixtures.py [out.json]
"""

import itertools
import json
import math
import sys
from pathlib import Path


# ---------------------------------------------------------------- metrics

def dist(a, b):
    if isinstance(a, (int, float)):
        return abs(a - b)
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def brute_kmedian(X, Y, k):
    best = math.inf
    for S in itertools.combinations(range(len(Y)), k):
        best = min(best, sum(min(dist(x, Y[f]) for f in S) for x in X))
    return best


def brute_fl(X, Y, ocost):
    best = 0.0 if not X else math.inf
    for r in range(1, len(Y) + 1):
        for S in itertools.combinations(range(len(Y)), r):
            c = sum(ocost[f] for f in S) + sum(min(dist(x, Y[f]) for f in S) for x in X)
            best = min(best, c)
    return best


def greedy_net(points, radius):
    centers = []
    for i, p in enumerate(points):
        if all(dist(p, points[c]) >= radius for c in centers):
            centers.append(i)
    return centers


# ---------------------------------------------------------------- curves

def traversals(z, l):
    """All monotone index walks from (0,0) to (z-1,l-1)."""
    out = []

    def rec(path):
        i, j = path[-1]
        if (i, j) == (z - 1, l - 1):
            out.append(list(path))
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            ni, nj = i + di, j + dj
            if ni < z and nj < l:
                path.append((ni, nj))
                rec(path)
                path.pop()

    rec([(0, 0)])
    return out


def frechet(a, b):
    return min(max(dist(a[i], b[j]) for i, j in t) for t in traversals(len(a), len(b)))


def profile_set(x, l):
    profs = set()
    for t in traversals(len(x), l):
        sectors = [[] for _ in range(l)]
        for i, j in t:
            sectors[j].append(x[i])
        profs.add(tuple((min(s), max(s)) for s in sectors))
    return profs


def shortest_equivalent(x, l):
    target = profile_set(x, l)
    values = sorted(set(x))
    for length in range(1, len(x) + 1):
        for cand in itertools.product(values, repeat=length):
            if profile_set(list(cand), l) == target:
                return list(cand)
    return list(x)


def min_error_1d(x, l, step):
    """Grid search over l-vertex 1-D curves (exact when the optimum lies on the grid)."""
    lo, hi = min(x), max(x)
    grid = [lo + step * i for i in range(int(round((hi - lo) / step)) + 1)]
    return min(frechet(x, list(c)) for c in itertools.product(grid, repeat=l))


def kl_grid_opt(series, k, l, spacing):
    lo = min(min(s) for s in series)
    hi = max(max(s) for s in series)
    grid = [round(lo + spacing * i, 10) for i in range(int(round((hi - lo) / spacing)) + 1)]
    centers = list(itertools.product(grid, repeat=l))
    d = [[frechet(s, list(c)) for c in centers] for s in series]
    best = math.inf
    for S in itertools.combinations(range(len(centers)), k):
        best = min(best, sum(min(row[c] for c in S) for row in d))
    return best


# ---------------------------------------------------------------- other

def set_cover(universe, sets, weights):
    best, arg = math.inf, None
    for r in range(len(sets) + 1):
        for sel in itertools.combinations(range(len(sets)), r):
            cov = set()
            for i in sel:
                cov |= set(sets[i])
            if cov >= set(universe):
                c = sum(weights[i] for i in sel)
                if c < best:
                    best, arg = c, list(sel)
    return best, arg


def allocate(tables, k):
    best, arg = math.inf, None
    for alloc in itertools.product(*[sorted(t) for t in tables]):
        if sum(alloc) <= k:
            c = sum(t[b] for t, b in zip(tables, alloc))
            if c < best:
                best, arg = c, list(alloc)
    return best, arg


def main():
    out = {}
    X, Y = [0, 1, 10], [0, 10]
    out["kmedian_small_k2"] = brute_kmedian(X, Y, 2)
    out["kmedian_small_k1"] = brute_kmedian(X, Y, 1)
    out["kmedian_small_all_open"] = sum(min(dist(x, y) for y in Y) for x in X)
    out["fl_two_facilities"] = brute_fl([0], [0, 1], [5, 1])
    out["frechet_0_2_vs_1"] = frechet([0, 2], [1])
    out["frechet_010_vs_00"] = frechet([0, 1, 0], [0, 0])
    out["net_line_radius_1_5"] = greedy_net([0, 1, 2, 3], 1.5)

    # proxy example: Y = {0..20}, S = {0}, x at 5, eps = 0.5
    Yline = list(range(21))
    r = 5.0
    ball = [y for y in Yline if dist(0, y) <= r / 0.5]
    out["proxy_line_net"] = [ball[i] for i in greedy_net(ball, 0.5 * r)]
    out["proxy_line_hat_y10"] = min(dist(5, u) + dist(u, 10) for u in out["proxy_line_net"])
    out["proxy_line_hat_y20"] = min(dist(5, u) + dist(u, 20) for u in out["proxy_line_net"])

    out["simplification_01_l1"] = min_error_1d([0, 1], 1, 0.5)
    out["simplification_0100_l2"] = min_error_1d([0, 10, 0], 2, 0.5)
    delta = min_error_1d([0, 1, 9], 2, 0.5)
    q = 0.3 * delta
    out["reduce_019_delta"] = delta
    out["reduce_019"] = [math.ceil(round(v / q, 9)) * q for v in [0, 1, 9]]

    def prof_in(x, p):
        return tuple(map(tuple, p)) in profile_set(x, len(p))

    out["decide_021"] = prof_in([0, 2, 1], [(0, 2), (1, 1)])
    out["decide_01_a"] = prof_in([0, 1], [(0, 0), (1, 1)])
    out["decide_01_b"] = prof_in([0, 1], [(1, 1), (0, 0)])
    out["profiles_010_l2"] = sorted([list(map(list, p)) for p in profile_set([0, 1, 0], 2)])
    out["profiles_alt_l1"] = sorted([list(map(list, p)) for p in profile_set([0, 1, 0, 1, 0, 1], 1)])
    out["shortest_alt_l1"] = shortest_equivalent([0, 1, 0, 1, 0, 1], 1)
    out["shortest_010_l2"] = shortest_equivalent([0, 1, 0], 2)

    cost, sel = set_cover([0, 1], [[0], [1], [0, 1]], [1, 1, 3])
    out["set_cover_example"] = {"cost": cost, "selection": sel}

    cost, alloc = allocate([{1: 5, 2: 3}, {1: 4, 2: 2}], 2)
    out["allocation_example"] = {"cost": cost, "budgets": alloc}

    out["kl_two_points_k1"] = kl_grid_opt([[0], [10]], 1, 1, 5.0)
    out["kl_alternating_k1_l1"] = kl_grid_opt([[0, 1, 0, 1, 0, 1]], 1, 1, 0.05)

    out["ann_line_query4"] = min([0, 10], key=lambda p: (dist(4, p), p))
    data = [(0, 0), (5, 5)]
    out["ann_plane_query"] = list(min(data, key=lambda p: (dist((0, 3), p), p)))

    grid = [-3.5 + 0.5 * i for i in range(15)]
    out["candidate_grid_point"] = grid
    text = json.dumps(out, indent=2, sort_keys=True)
    if len(sys.argv) > 1:
        Path(sys.argv[1]).write_text(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
