"""Clustering of accepted detections and patch contour generation.

Detections are grouped by single-linkage over their center points; each
cluster of at least 3 members gets a closed contour ordered by a
nearest-neighbor tour improved with 2-opt, smaller clusters fall back to
the bounding rectangle of their member boxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .search import Candidate

Point = tuple[float, float]

DEFAULT_LINK_FACTOR = 2.0


@dataclass(frozen=True)
class Cluster:
    members: tuple[Candidate, ...]
    centers: tuple[Point, ...]


@dataclass(frozen=True)
class PatchContour:
    """Closed polygon (first vertex implicitly repeated) plus tour length."""

    vertices: tuple[Point, ...]
    tour_length: float
    members: tuple[Candidate, ...]


def _center(c: Candidate, nx_ref: int, ny_ref: int) -> Point:
    return (c.x + nx_ref / 2, c.y + ny_ref / 2)


def cluster_candidates(
    cands: Sequence[Candidate],
    nx_ref: int,
    ny_ref: int,
    link_factor: float = DEFAULT_LINK_FACTOR,
) -> list[Cluster]:
    """Single-linkage clusters of candidate centers; two candidates link
    when their centers are within link_factor * max(ref dims)."""
    if link_factor <= 0:
        raise ValueError("link_factor must be positive")
    items = sorted(cands, key=Candidate.sort_key)
    if not items:
        return []
    d_link = link_factor * max(nx_ref, ny_ref)
    centers = [_center(c, nx_ref, ny_ref) for c in items]
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if math.dist(centers[i], centers[j]) <= d_link:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(len(items)):
        groups.setdefault(find(i), []).append(i)
    clusters = [
        Cluster(
            tuple(items[i] for i in idxs),
            tuple(centers[i] for i in idxs),
        )
        for idxs in groups.values()
    ]
    clusters.sort(key=lambda cl: cl.members[0].sort_key())
    return clusters


def _tour_length(points: Sequence[Point], order: Sequence[int]) -> float:
    n = len(order)
    return sum(
        math.dist(points[order[i]], points[order[(i + 1) % n]]) for i in range(n)
    )


def nearest_neighbor_tour(points: Sequence[Point]) -> list[int]:
    """Greedy tour starting from the lexicographically smallest point;
    ties broken by point order."""
    start = min(range(len(points)), key=lambda i: (points[i], i))
    unvisited = set(range(len(points)))
    unvisited.remove(start)
    tour = [start]
    while unvisited:
        cur = points[tour[-1]]
        nxt = min(unvisited, key=lambda i: (math.dist(cur, points[i]), i))
        unvisited.remove(nxt)
        tour.append(nxt)
    return tour


def two_opt(points: Sequence[Point], tour: list[int]) -> list[int]:
    """Reverse tour segments while any reversal strictly shortens the tour."""
    n = len(tour)
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # same edge pair
                a, b = points[tour[i]], points[tour[i + 1]]
                c, d = points[tour[j]], points[tour[(j + 1) % n]]
                delta = (
                    math.dist(a, c) + math.dist(b, d)
                    - math.dist(a, b) - math.dist(c, d)
                )
                if delta < -1e-12:
                    tour[i + 1 : j + 1] = reversed(tour[i + 1 : j + 1])
                    improved = True
    return tour


def tsp_contour(points: Sequence[Point], members: Sequence[Candidate] = ()) -> PatchContour:
    """Closed contour visiting every point once: nearest-neighbor
    construction improved to 2-opt local optimality."""
    pts = [tuple(map(float, p)) for p in points]
    if not pts:
        raise ValueError("at least one point required")
    if len(pts) == 1:
        return PatchContour((pts[0],), 0.0, tuple(members))
    if len(pts) == 2:
        return PatchContour(tuple(pts), 2 * math.dist(pts[0], pts[1]), tuple(members))
    order = two_opt(pts, nearest_neighbor_tour(pts))
    vertices = tuple(pts[i] for i in order)
    return PatchContour(vertices, _tour_length(pts, order), tuple(members))


def _bounding_rect_contour(cluster: Cluster, nx_ref: int, ny_ref: int) -> PatchContour:
    xs0 = min(c.x for c in cluster.members)
    ys0 = min(c.y for c in cluster.members)
    xs1 = max(c.x for c in cluster.members) + nx_ref
    ys1 = max(c.y for c in cluster.members) + ny_ref
    vertices = (
        (float(xs0), float(ys0)),
        (float(xs0), float(ys1)),
        (float(xs1), float(ys1)),
        (float(xs1), float(ys0)),
    )
    return PatchContour(vertices, _tour_length(vertices, range(4)), cluster.members)


def build_patches(
    cands: Sequence[Candidate],
    nx_ref: int,
    ny_ref: int,
    link_factor: float = DEFAULT_LINK_FACTOR,
) -> list[PatchContour]:
    """Cluster, then contour each cluster; clusters of fewer than 3 members
    yield the bounding rectangle of their boxes (a <3-point tour is not a
    polygon)."""
    patches = []
    for cluster in cluster_candidates(cands, nx_ref, ny_ref, link_factor):
        if len(cluster.members) < 3:
            patches.append(_bounding_rect_contour(cluster, nx_ref, ny_ref))
        else:
            patches.append(tsp_contour(cluster.centers, cluster.members))
    return patches
