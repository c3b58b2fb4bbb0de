"""Exhaustive balls in a Cayley graph of F2 x F2 and distance queries.

A :class:`BallIndex` stores every element of the closed ball of radius R in
order of (distance, canonical key), with an integer neighbour table.  Since
the order is by distance, the sub-ball of radius r <= R is an index prefix,
so restricted searches run on ``neighbors[:count(r)]``.
"""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .group import (
    IDENTITY,
    GenSet,
    GroupElement,
    WordError,
    canonical_key,
    genset_from_name,
    parse_key,
)

DEFAULT_MAX_ELEMENTS = 5_000_000
CACHE_MAGIC = "CAYLEYBALL"
CACHE_VERSION = "v1"


class BallOverflowError(RuntimeError):
    """A search needed more elements than its configured cap."""


class BallFormatError(ValueError):
    """A ball cache file is malformed or violates the ball invariants."""


@dataclass(frozen=True, eq=False)
class BallIndex:
    genset: GenSet
    radius: int
    elements: tuple[GroupElement, ...]
    distances: np.ndarray
    neighbors: np.ndarray  # (N, 8) int64, -1 where the neighbour lies outside the ball
    index: dict = field(repr=False)
    _adjacency: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: GroupElement) -> bool:
        return x in self.index

    def distance_of(self, x: GroupElement) -> Optional[int]:
        i = self.index.get(x)
        return None if i is None else int(self.distances[i])

    @cached_property
    def dist(self) -> dict[str, int]:
        """Canonical key -> distance from the identity."""
        return {canonical_key(x): int(d) for x, d in zip(self.elements, self.distances)}

    @cached_property
    def sphere_bounds(self) -> np.ndarray:
        # sphere r occupies elements[bounds[r]:bounds[r+1]]
        return np.searchsorted(self.distances, np.arange(self.radius + 2), side="left")

    def count(self, r: int) -> int:
        """Number of elements at distance <= r."""
        return int(self.sphere_bounds[min(r, self.radius) + 1])

    def sphere_indices(self, r: int) -> np.ndarray:
        b = self.sphere_bounds
        return np.arange(b[r], b[r + 1])

    def sphere(self, r: int) -> list[GroupElement]:
        b = self.sphere_bounds
        return list(self.elements[b[r]:b[r + 1]])

    @property
    def spheres(self) -> list[list[GroupElement]]:
        return [self.sphere(r) for r in range(self.radius + 1)]

    def sphere_sizes(self) -> list[int]:
        return np.diff(self.sphere_bounds[: self.radius + 2]).tolist()

    def geodesic_word(self, x: GroupElement) -> str:
        """A geodesic word for ``x``, stepping down the distance gradient.

        At each step the first directed edge (in generator order) that leads
        one step closer to the identity is taken.
        """
        i = self.index.get(x)
        if i is None:
            raise WordError(f"{canonical_key(x)} is outside the ball")
        labels = [lab for lab, _ in self.genset.directed_edges]
        out = []
        while self.distances[i] > 0:
            d = self.distances[i]
            for e, j in enumerate(self.neighbors[i]):
                if j >= 0 and self.distances[j] == d - 1:
                    # x = y * g^-1 where y = x * g is closer
                    out.append(labels[e].swapcase())
                    i = j
                    break
        return "".join(reversed(out))

    def adjacency(self, r: int) -> csr_matrix:
        """Sparse adjacency of the sub-ball of radius ``r``."""
        if r not in self._adjacency:
            n = self.count(r)
            nb = self.neighbors[:n]
            rows = np.repeat(np.arange(n), nb.shape[1])
            cols = nb.ravel()
            keep = (cols >= 0) & (cols < n)
            data = np.ones(int(keep.sum()), dtype=np.int8)
            self._adjacency[r] = csr_matrix((data, (rows[keep], cols[keep])), shape=(n, n))
        return self._adjacency[r]

    def restricted_distances(self, sources: np.ndarray, r: int) -> np.ndarray:
        """Distances from ``sources`` along paths inside the sub-ball of radius ``r``.

        Unreachable entries are ``inf``.
        """
        return shortest_path(self.adjacency(r), unweighted=True, directed=False, indices=sources)


def _finish(gs: GenSet, radius: int, dist: dict[GroupElement, int]) -> BallIndex:
    order = sorted(dist, key=lambda x: (dist[x], canonical_key(x)))
    index = {x: i for i, x in enumerate(order)}
    distances = np.fromiter((dist[x] for x in order), dtype=np.int64, count=len(order))
    gens = gs.edge_images
    nb = np.fromiter(
        (index.get(x * g, -1) for x in order for g in gens),
        dtype=np.int64,
        count=len(order) * len(gens),
    ).reshape(len(order), len(gens))
    return BallIndex(gs, radius, tuple(order), distances, nb, index)


def build_ball(gs: GenSet, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> BallIndex:
    """Enumerate the closed ball of radius ``radius`` by breadth-first search."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    dist = {IDENTITY: 0}
    frontier = [IDENTITY]
    gens = gs.edge_images
    for d in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in dist:
                    dist[y] = d
                    nxt.append(y)
            if len(dist) > max_elements:
                raise BallOverflowError(
                    f"ball of radius {radius} under {gs.name} exceeds {max_elements} elements"
                )
        frontier = nxt
    return _finish(gs, radius, dist)


# --- ball cache --------------------------------------------------------------


def format_ball(ball: BallIndex) -> str:
    lines = [f"{CACHE_MAGIC}\t{CACHE_VERSION}\t{ball.genset.name}\t{ball.radius}"]
    lines.extend(f"{canonical_key(x)}\t{int(d)}" for x, d in zip(ball.elements, ball.distances))
    return "\n".join(lines) + "\n"


def save_ball_cache(ball: BallIndex, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_ball(ball))


def parse_ball(text: str, max_elements: int = DEFAULT_MAX_ELEMENTS) -> BallIndex:
    """Parse and fully validate a ``CAYLEYBALL v1`` document."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise BallFormatError("empty ball file")
    head = lines[0].split("\t")
    if len(head) != 4 or head[0] != CACHE_MAGIC or head[1] != CACHE_VERSION:
        raise BallFormatError(f"bad header {lines[0]!r}")
    try:
        gs = genset_from_name(head[2])
        radius = int(head[3])
    except (WordError, ValueError) as exc:
        raise BallFormatError(f"bad header {lines[0]!r}: {exc}") from exc
    if len(lines) - 1 > max_elements:
        raise BallOverflowError(f"ball file holds more than {max_elements} elements")
    dist: dict[GroupElement, int] = {}
    prev = None
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        if len(parts) != 2:
            raise BallFormatError(f"line {lineno}: expected key<TAB>distance")
        try:
            x = parse_key(parts[0])
            d = int(parts[1])
        except (WordError, ValueError) as exc:
            raise BallFormatError(f"line {lineno}: {exc}") from exc
        if x in dist:
            raise BallFormatError(f"line {lineno}: duplicate element {parts[0]}")
        if prev is not None and (d, parts[0]) <= prev:
            raise BallFormatError(f"line {lineno}: records not sorted by (distance, key)")
        prev = (d, parts[0])
        dist[x] = d
    ball = _finish(gs, radius, dist)
    validate_ball(ball)
    return ball


def validate_ball(ball: BallIndex) -> None:
    """Check that the stored distances are exactly the BFS ball of the stated radius."""
    if ball.distance_of(IDENTITY) != 0:
        raise BallFormatError("identity missing or not at distance 0")
    d = ball.distances
    if len(d) and (d.min() < 0 or d.max() > ball.radius):
        raise BallFormatError("distance outside [0, radius]")
    if len(d) and int(d.max()) != ball.radius:
        raise BallFormatError(f"header radius {ball.radius} does not match records")
    nb = ball.neighbors
    inside = nb >= 0
    nd = np.where(inside, d[np.maximum(nb, 0)], -10)
    if np.any(inside & (np.abs(nd - d[:, None]) > 1)):
        raise BallFormatError("adjacent elements differ in distance by more than 1")
    if np.any((d < ball.radius)[:, None] & ~inside):
        raise BallFormatError("an interior element has a neighbour missing from the ball")
    has_parent = np.any(inside & (nd == d[:, None] - 1), axis=1)
    bad = np.nonzero((d > 0) & ~has_parent)[0]
    if len(bad):
        key = canonical_key(ball.elements[bad[0]])
        raise BallFormatError(f"element {key} at distance {d[bad[0]]} has no neighbour one step closer")


def load_ball_cache(path, max_elements: int = DEFAULT_MAX_ELEMENTS) -> BallIndex:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_ball(fh.read(), max_elements)


def cache_path(cache_dir, gs: GenSet, radius: int) -> str:
    if gs.name in ("s1", "s2"):
        stem = gs.name
    else:
        stem = "custom_" + hashlib.sha1(gs.name.encode()).hexdigest()[:12]
    return os.path.join(cache_dir, f"{stem}_r{radius}.tsv")


def get_ball(gs: GenSet, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS, cache_dir=None) -> BallIndex:
    """Build a ball, going through an on-disk cache when ``cache_dir`` is set.

    Cached files are re-validated on every load; invalid or mismatched files
    are rebuilt and overwritten.
    """
    if cache_dir is None:
        return build_ball(gs, radius, max_elements)
    path = cache_path(cache_dir, gs, radius)
    if os.path.exists(path):
        try:
            ball = load_ball_cache(path, max_elements)
            if ball.genset.name == gs.name and ball.radius == radius:
                return ball
        except BallFormatError:
            pass
    ball = build_ball(gs, radius, max_elements)
    os.makedirs(cache_dir, exist_ok=True)
    save_ball_cache(ball, path)
    return ball


# --- distances ---------------------------------------------------------------


def word_length(gs: GenSet, x: GroupElement, cap: int) -> Optional[int]:
    """|x| under ``gs`` if at most ``cap``, else None.

    Bidirectional breadth-first search between the identity and ``x``.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if x == IDENTITY:
        return 0
    gens = gs.edge_images
    seen = [{IDENTITY: 0}, {x: 0}]
    fronts = [[IDENTITY], [x]]
    depth = [0, 0]
    while depth[0] + depth[1] < cap and fronts[0] and fronts[1]:
        side = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        mine, other = seen[side], seen[1 - side]
        d = depth[side] + 1
        best = None
        nxt = []
        for y in fronts[side]:
            for g in gens:
                z = y * g
                if z in mine:
                    continue
                mine[z] = d
                nxt.append(z)
                o = other.get(z)
                if o is not None and (best is None or d + o < best):
                    best = d + o
        if best is not None:
            return best if best <= cap else None
        fronts[side] = nxt
        depth[side] = d
    return None


def distance(gs: GenSet, x: GroupElement, y: GroupElement, cap: int) -> Optional[int]:
    """Graph distance d(x, y) = |x^-1 y| if at most ``cap``, else None."""
    return word_length(gs, x.inverse() * y, cap)


def _member_index(ball: BallIndex, x: GroupElement, r: int) -> int:
    i = ball.index.get(x)
    if i is None or ball.distances[i] > r:
        raise WordError(f"{canonical_key(x)} is not in the ball of radius {r}")
    return i


def inside_distance(ball: BallIndex, u: GroupElement, v: GroupElement, radius: Optional[int] = None) -> Optional[int]:
    """Length of a shortest path from u to v with every vertex in the ball.

    ``radius`` restricts to the sub-ball of that radius (default: the whole
    ball).  Returns None when no such path exists.
    """
    r = ball.radius if radius is None else radius
    if r > ball.radius:
        raise ValueError(f"radius {r} exceeds ball radius {ball.radius}")
    i = _member_index(ball, u, r)
    j = _member_index(ball, v, r)
    if i == j:
        return 0
    nb = ball.neighbors
    n = ball.count(r)
    seen = np.zeros(n, dtype=bool)
    seen[i] = True
    frontier = np.array([i])
    d = 0
    while len(frontier):
        d += 1
        cand = nb[frontier].ravel()
        cand = cand[(cand >= 0) & (cand < n)]
        cand = np.unique(cand[~seen[cand]])
        if j in cand:
            return d
        seen[cand] = True
        frontier = cand
    return None


def sphere_pairs_index(ball: BallIndex, r: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index form of :func:`sphere_pairs_leq2`: arrays (i, j, graph distance) with i < j."""
    if ball.radius < r + 1:
        raise ValueError(f"sphere pairs at radius {r} need a ball of radius >= {r + 1}, got {ball.radius}")
    empty = np.zeros(0, dtype=np.int64)
    if r == 0:
        return empty, empty, empty
    src = ball.sphere_indices(r)
    nb = ball.neighbors
    n1 = nb[src]  # all present: ball radius >= r + 1
    n2 = nb[n1].reshape(len(src), -1)
    size = len(ball)
    codes1 = (src[:, None] * size + n1).ravel()
    codes2 = (src[:, None] * size + n2).ravel()
    out = []
    for codes, dd in ((codes1, 1), (codes2, 2)):
        i, j = np.divmod(codes, size)
        keep = (i < j) & (ball.distances[j] == r)
        out.append((codes[keep], dd))
    c1 = np.unique(out[0][0])
    c2 = np.setdiff1d(np.unique(out[1][0]), c1, assume_unique=True)
    codes = np.concatenate([c1, c2])
    dist = np.concatenate([np.ones(len(c1), dtype=np.int64), np.full(len(c2), 2, dtype=np.int64)])
    order = np.argsort(codes, kind="stable")
    i, j = np.divmod(codes[order], size)
    return i, j, dist[order]


def sphere_pairs_leq2(ball: BallIndex, r: int) -> Iterator[tuple[GroupElement, GroupElement]]:
    """Unordered pairs on the sphere of radius ``r`` at graph distance 1 or 2."""
    i, j, _ = sphere_pairs_index(ball, r)
    els = ball.elements
    for a, b in zip(i.tolist(), j.tolist()):
        yield els[a], els[b]


# --- DOT export --------------------------------------------------------------


def export_dot(ball: BallIndex, r: int, highlight: Sequence[GroupElement] = ()) -> str:
    """DOT text for the sub-ball of radius ``r``.

    Nodes are named by canonical key; each undirected edge appears once,
    labelled by the positive generator that traverses it.
    """
    if r > ball.radius:
        raise ValueError(f"radius {r} exceeds ball radius {ball.radius}")
    n = ball.count(r)
    bold = {canonical_key(x) for x in highlight}
    labels = [lab for lab, _ in ball.genset.directed_edges]
    lines = [f'graph "{ball.genset.name}_ball_{r}" {{']
    for x in ball.elements[:n]:
        key = canonical_key(x)
        attrs = f'label="{key}"'
        if key in bold:
            attrs += ", style=bold, penwidth=3"
        lines.append(f'  "{key}" [{attrs}];')
    for i in range(n):
        src = canonical_key(ball.elements[i])
        for e in range(0, len(labels), 2):
            j = ball.neighbors[i, e]
            if 0 <= j < n:
                dst = canonical_key(ball.elements[j])
                lines.append(f'  "{src}" -- "{dst}" [label="{labels[e]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
