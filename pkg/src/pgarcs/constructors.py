"""Arc builders: random completion, fixed-order greedy (FOP), exhaustive minimum."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import kernel
from .arc import ArcError, ArcState, verify_arc, verify_complete
from .geometry import GeometryError, PlaneParams, line_through, point_from_index, points_on_line

PRNG_ID = "numpy.PCG64"

# once fewer than n_points / 256 points remain uncovered, stop rejection
# sampling and draw directly from the explicit uncovered list
_SWITCH_DIVISOR = 256
_DRAW_BLOCK = 256

EXHAUSTIVE_MAX_Q = 11


class Algorithm(str, Enum):
    RANDOM = "RANDOM"
    FOP_LEX = "FOP_LEX"
    FOP_SINGER = "FOP_SINGER"
    EXHAUSTIVE_MIN = "EXHAUSTIVE_MIN"

    def __str__(self):
        return self.value


class OrderKind(str, Enum):
    LEXICOGRAPHIC = "LEXICOGRAPHIC"
    SINGER = "SINGER"


@dataclass(frozen=True)
class ArcResult:
    q: int
    algorithm: Algorithm
    points: tuple[int, ...]
    seed: Optional[int] = None
    elapsed: float = 0.0  # seconds

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class PointOrder:
    kind: OrderKind
    permutation: np.ndarray = field(repr=False)

    def __post_init__(self):
        perm = np.ascontiguousarray(self.permutation, dtype=np.int64)
        object.__setattr__(self, "permutation", perm)

    def is_bijection(self, n: Optional[int] = None) -> bool:
        perm = self.permutation
        n = len(perm) if n is None else n
        if len(perm) != n:
            return False
        seen = np.zeros(n, dtype=bool)
        if perm.size and (perm.min() < 0 or perm.max() >= n):
            return False
        seen[perm] = True
        return bool(seen.all())


def make_lex_order(plane: PlaneParams) -> PointOrder:
    return PointOrder(OrderKind.LEXICOGRAPHIC, np.arange(plane.n_points, dtype=np.int64))


def _check_result(plane: PlaneParams, pts) -> None:
    if not verify_arc(plane, pts):
        raise ArcError(f"q={plane.q}: constructed set is not an arc")
    if not verify_complete(plane, pts):
        raise ArcError(f"q={plane.q}: constructed arc is not complete")


def random_complete(
    plane: PlaneParams,
    seed: int,
    *,
    strategy: str = "rejection",
    verify: bool = True,
    backend=None,
) -> ArcResult:
    """Grow an arc from uniformly drawn uncovered points until it is complete.

    ``strategy="rejection"`` draws uniform points and redraws covered ones,
    switching to the explicit uncovered list near the end.  ``"uncovered"``
    always picks uniformly among the uncovered points; both induce the same
    distribution over arcs.
    """
    if strategy not in ("rejection", "uncovered"):
        raise ValueError(f"unknown strategy {strategy!r}")
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.PCG64(seed))
    state = ArcState(plane, backend)
    n = plane.n_points
    switch_at = n - n // _SWITCH_DIVISOR if strategy == "rejection" else 0

    while state.covered_count < switch_at:
        for i in rng.integers(0, n, size=_DRAW_BLOCK).tolist():
            if state.try_add(i) and state.covered_count >= switch_at:
                break

    if not state.is_complete():
        free = state.coverage.uncovered()
        while free.size:
            state.try_add(int(free[rng.integers(0, free.size)]))
            bits = state.coverage.bits
            free = free[(bits[free >> 3] & (1 << (free & 7)).astype(np.uint8)) == 0]

    pts = tuple(state.points)
    if verify:
        _check_result(plane, pts)
    return ArcResult(plane.q, Algorithm.RANDOM, pts, seed, time.perf_counter() - t0)


def fop_complete(plane: PlaneParams, order: PointOrder, *, verify: bool = True, backend=None) -> ArcResult:
    """One greedy pass over ``order``, keeping every point still uncovered at its turn."""
    perm = order.permutation
    if len(perm) != plane.n_points:
        raise GeometryError(f"order has {len(perm)} entries, plane has {plane.n_points} points")
    t0 = time.perf_counter()
    k = backend or kernel
    state = ArcState(plane, backend)
    pos = 0
    while not state.is_complete():
        pos = k.first_uncovered(state.coverage.bits, perm, pos)
        if pos < 0:
            break
        state.try_add(int(perm[pos]))
        pos += 1
    pts = tuple(state.points)
    if verify:
        _check_result(plane, pts)
    algo = Algorithm.FOP_SINGER if order.kind == OrderKind.SINGER else Algorithm.FOP_LEX
    return ArcResult(plane.q, algo, pts, None, time.perf_counter() - t0)


@dataclass(frozen=True)
class MinimalArc:
    size: Optional[int]  # None when nothing was found within the cap
    witness: tuple[int, ...]

    @property
    def found(self) -> bool:
        return self.size is not None


def exhaustive_min(plane: PlaneParams, size_cap: Optional[int] = None) -> MinimalArc:
    """Smallest complete arc by depth-first search over increasing point lists.

    Sizes are tried in increasing order; for each target size every arc
    listed in increasing index order is a candidate, pruned when even the
    best-case coverage of the remaining additions cannot reach the plane.
    """
    q = plane.q
    if q > EXHAUSTIVE_MAX_Q:
        raise GeometryError(f"exhaustive search is limited to q <= {EXHAUSTIVE_MAX_Q}, got {q}")
    if size_cap is None:
        size_cap = q + 2
    n = plane.n_points
    full = (1 << n) - 1

    # line masks for each pair of points
    pair_mask = [[0] * n for _ in range(n)]
    coords = [point_from_index(plane, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = 0
            for t in points_on_line(plane, line_through(plane, coords[i], coords[j])):
                m |= 1 << t
            pair_mask[i][j] = pair_mask[j][i] = m

    def gain_bound(k: int, r: int) -> int:
        # adding point number k+1 opens at most k new bisecants of q-1 fresh points
        return sum(1 + (k + j) * (q - 1) for j in range(r))

    def search(target: int):
        arc: list[int] = []

        def dfs(start: int, cover: int):
            k = len(arc)
            if k == target:
                return tuple(arc) if cover == full else None
            r = target - k
            if cover.bit_count() + gain_bound(k, r) < n:
                return None
            for c in range(start, n - r + 1):
                if cover >> c & 1:
                    continue
                new = cover | (1 << c)
                for a in arc:
                    new |= pair_mask[a][c]
                arc.append(c)
                hit = dfs(c + 1, new)
                arc.pop()
                if hit is not None:
                    return hit
            return None

        return dfs(0, 0)

    for target in range(1, size_cap + 1):
        hit = search(target)
        if hit is not None:
            return MinimalArc(target, hit)
    return MinimalArc(None, ())
