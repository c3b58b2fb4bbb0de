"""Synchronous fellow travelling and corridor searches.

Both the loop shortening question and FFTP falsification ask for a shorter
edge path whose i-th vertex stays within a fixed radius of the i-th vertex of
a given path (the shorter path idles at its endpoint once it runs out).  The
candidate vertices at step j therefore live in the ball around v_j, and the
search is a layer-by-layer reachability computation through that corridor.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .ball import build_ball, word_length
from .group import (
    IDENTITY,
    GenSet,
    GenWord,
    GroupElement,
    WordError,
    canonical_key,
    check_word,
    eval_word,
    prefix_elements,
)


@dataclass(frozen=True)
class Loop:
    """A closed path in the Cayley graph, starting and ending at ``base``.

    The empty word is allowed (the trivial loop), since a shortening may
    collapse a loop to a point.
    """

    genset: GenSet
    base: GroupElement
    word: GenWord

    def __post_init__(self):
        check_word(self.genset, self.word)
        if eval_word(self.genset, self.word) != IDENTITY:
            raise WordError(f"word {self.word!r} does not evaluate to the identity")

    def __len__(self) -> int:
        return len(self.word)

    @property
    def vertices(self) -> list[GroupElement]:
        return prefix_elements(self.genset, self.word, self.base)


def corridor_radius(k: int, strict: bool) -> int:
    """Largest allowed distance under the bound ``< k`` (strict) or ``<= k``."""
    return k - 1 if strict else k


@lru_cache(maxsize=64)
def _offsets(gs: GenSet, radius: int) -> tuple[GroupElement, ...]:
    return build_ball(gs, radius).elements


def fellow_travel_check(
    gs: GenSet,
    p: GenWord,
    q: GenWord,
    k: int,
    strict: bool = False,
    start: GroupElement = IDENTITY,
) -> bool:
    """True iff the paths ``p`` and ``q`` from ``start`` synchronously k-fellow travel.

    The shorter path is padded with its final vertex.
    """
    r = corridor_radius(k, strict)
    if r < 0:
        return False
    pv = prefix_elements(gs, p, start)
    qv = prefix_elements(gs, q, start)
    n = max(len(pv), len(qv))
    pv += [pv[-1]] * (n - len(pv))
    qv += [qv[-1]] * (n - len(qv))
    return all(word_length(gs, x.inverse() * y, r) is not None for x, y in zip(pv, qv))


def _corridor_path(
    gs: GenSet,
    start: GroupElement,
    layers: Sequence[set],
    m: int,
) -> GenWord:
    """Word of a length-``m`` corridor path from ``start`` back to ``layers[m]``'s target.

    ``layers[m]`` must already be the singleton target set.  Successors are
    chosen by smallest canonical key among vertices that can still finish.
    """
    gens = gs.directed_edges
    back = [None] * (m + 1)
    back[m] = layers[m]
    for j in range(m, 0, -1):
        back[j - 1] = {x for x in layers[j - 1] if any(x * g in back[j] for _, g in gens)}
    word = []
    x = start
    for j in range(1, m + 1):
        options = [(canonical_key(x * g), lab, x * g) for lab, g in gens if x * g in back[j]]
        _, lab, x = min(options)
        word.append(lab)
    return "".join(word)


def corridor_search(
    gs: GenSet,
    path: Sequence[GroupElement],
    radius: int,
    starts: Iterable[GroupElement],
    closed: bool,
    max_length: Optional[int] = None,
) -> Optional[tuple[GroupElement, GenWord]]:
    """Shortest corridor path against ``path`` = (v_0, ..., v_n).

    Finds a start u_0 in ``starts`` and an edge path u_0, ..., u_m with
    m <= ``max_length`` (default n - 1) such that d(u_j, v_j) <= radius for
    j <= m and d(u_m, v_j) <= radius for m <= j <= n.  The endpoint u_m must
    equal u_0 when ``closed`` and v_n otherwise.

    Returns (u_0, word) for the smallest m, ties broken by the smallest start
    key, or None when no such path exists.  The search is exhaustive.
    """
    n = len(path) - 1
    if max_length is None:
        max_length = n - 1
    if radius < 0 or max_length < 0:
        return None
    offsets = _offsets(gs, radius)
    corridors = [frozenset(v * g for g in offsets) for v in path]
    gens = gs.edge_images
    best = None
    for u0 in sorted(set(starts), key=canonical_key):
        if u0 not in corridors[0]:
            continue
        end = u0 if closed else path[-1]
        # tail_ok[m]: the endpoint stays within radius of v_m, ..., v_n
        tail_ok = [False] * (n + 1)
        ok = True
        for j in range(n, -1, -1):
            ok = ok and end in corridors[j]
            tail_ok[j] = ok
        limit = max_length if best is None else min(max_length, best[0] - 1)
        layers = [{u0}]
        found = None
        for m in range(limit + 1):
            if m:
                prev = layers[-1]
                nxt = {x * g for x in prev for g in gens}
                nxt &= corridors[m]
                if not nxt:
                    break
                layers.append(nxt)
            if tail_ok[m] and end in layers[m]:
                found = m
                break
        if found is not None:
            layers[found] = {end}
            best = (found, u0, _corridor_path(gs, u0, layers, found))
            if found == 0:
                break
    if best is None:
        return None
    return best[1], best[2]


def loop_shorten_search(
    gs: GenSet,
    loop: Loop,
    k: int,
    strict: bool = True,
    basepoint_fixed: bool = False,
) -> Optional[Loop]:
    """A strictly shorter loop that k-fellow travels ``loop``, or None.

    With ``strict`` the per-vertex bound is d < k, otherwise d <= k.  With
    ``basepoint_fixed`` the shorter loop must start at the original base.
    None means no such loop of any length below ``len(loop)`` exists.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(loop) < 1:
        raise ValueError("loop must have length at least 1")
    path = loop.vertices
    r = corridor_radius(k, strict)
    if basepoint_fixed:
        starts = [loop.base]
    else:
        starts = [loop.base * g for g in _offsets(gs, r)]
    hit = corridor_search(gs, path, r, starts, closed=True)
    if hit is None:
        return None
    return Loop(gs, hit[0], hit[1])


def geodesic_check(gs: GenSet, w: GenWord) -> bool:
    """True iff ``w`` is a geodesic word under ``gs``."""
    return word_length(gs, eval_word(gs, w), len(w)) == len(w)


def fftp_falsify(gs: GenSet, w: GenWord, k: int, strict: bool = False) -> Optional[GenWord]:
    """A strictly shorter word equal to ``w`` whose path k-fellow travels it, or None.

    Raises :class:`WordError` if ``w`` is geodesic.
    """
    if geodesic_check(gs, w):
        raise WordError(f"word {w!r} is geodesic; nothing to falsify")
    hit = corridor_search(gs, prefix_elements(gs, w), corridor_radius(k, strict), [IDENTITY], closed=False)
    return None if hit is None else hit[1]
