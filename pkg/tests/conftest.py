"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's cached indexes and graph
machinery: they recompute everything from the exact kernel predicates so the
fast paths always have something independent to be checked against.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from incidences import (Arrangement, Line, Point, concurrent, incident,
                        intersection, spanned_lines)
from incidences.cli import random_arrangement


def brute_incidences(arr: Arrangement) -> set[tuple[int, int]]:
    """Independent (point, line) incidence scan via the kernel predicate."""
    return {(i, j) for i, p in enumerate(arr.points)
            for j, l in enumerate(arr.lines) if incident(p, l)}


def pair_joined(arr: Arrangement, i: int, j: int) -> bool:
    """True iff some arrangement line passes through both points."""
    return any(incident(arr.points[i], l) and incident(arr.points[j], l)
               for l in arr.lines)


def brute_triangles(arr: Arrangement) -> int:
    """Triple scan: pairwise-joined, non-collinear point triples."""
    from incidences import collinear
    count = 0
    for i, j, k in combinations(range(arr.n_points), 3):
        if not (pair_joined(arr, i, j) and pair_joined(arr, i, k) and pair_joined(arr, j, k)):
            continue
        if collinear(arr.points[i], arr.points[j], arr.points[k]):
            continue
        count += 1
    return count


def brute_complete_line_tuples(arr: Arrangement, kept_points: set[int], k: int) -> list[tuple[int, ...]]:
    """All k-subsets of lines, pairwise crossing at kept points, general position."""
    kept_coords = {arr.points[i] for i in kept_points}
    result = []
    for combo in combinations(range(arr.n_lines), k):
        ok = True
        for a, b in combinations(combo, 2):
            q = intersection(arr.lines[a], arr.lines[b])
            if q is None or q not in kept_coords:
                ok = False
                break
        if not ok:
            continue
        if any(concurrent(arr.lines[a], arr.lines[b], arr.lines[c])
               for a, b, c in combinations(combo, 3)):
            continue
        result.append(combo)
    return result


def random_nonvertical_arrangement(seed: int, n_points: int, n_lines: int,
                                   bound: int = 60) -> Arrangement:
    """Random arrangement guaranteed shear-generic (no vertical lines)."""
    arr = random_arrangement(seed, n_points, max(n_lines * 3, n_lines + 8), bound)
    lines = [l for l in arr.lines if not l.is_vertical][:n_lines]
    if len(lines) < n_lines:
        return random_nonvertical_arrangement(seed + 1000, n_points, n_lines, bound)
    return Arrangement(arr.points, lines)


@pytest.fixture
def grid3x3():
    """3x3 integer grid with all 20 spanned lines."""
    return spanned_lines([Point(x, y) for x in range(3) for y in range(3)])


@pytest.fixture
def triangle_arrangement():
    """Three general-position lines and their three pairwise crossings."""
    l1 = Line.from_coefficients(0, 1, 0)    # y = 0
    l2 = Line.from_coefficients(1, 0, 0)    # x = 0
    l3 = Line.from_coefficients(1, 1, -2)   # x + y = 2
    pts = [intersection(l1, l2), intersection(l1, l3), intersection(l2, l3)]
    return Arrangement(pts, [l1, l2, l3])


@pytest.fixture
def concurrent_pencil():
    """Twenty concurrent lines through the origin, P = {center}."""
    lines = [Line.from_slope_intercept(m, 0) for m in range(1, 21)]
    return Arrangement([Point(0, 0)], lines)
