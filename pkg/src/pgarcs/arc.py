"""Incremental arc state with a bisecant-coverage bitmap, and slow oracles.

A point is *covered* when it is an arc point or lies on a line through two
distinct arc points.  An arc is complete exactly when every point of the
plane is covered.
"""
from __future__ import annotations

import re
from itertools import combinations
from pathlib import Path

import numpy as np

from . import kernel
from .field import inverse_table
from .geometry import (
    GeometryError,
    PlaneParams,
    coords_of,
    det3,
    line_through,
    point_from_index,
    points_on_line_array,
)


class ArcError(ValueError):
    pass


class CoverageBitmap:
    """Packed bit array over the plane's points with a running popcount."""

    def __init__(self, n: int):
        self.n = n
        self.bits = np.zeros((n + 7) // 8, dtype=np.uint8)
        self.covered_count = 0

    def __contains__(self, i: int) -> bool:
        return bool(self.bits[i >> 3] & (1 << (i & 7)))

    def __len__(self):
        return self.n

    @property
    def nbytes(self) -> int:
        return self.bits.nbytes

    def to_bool(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=self.n, bitorder="little").astype(bool)

    def uncovered(self) -> np.ndarray:
        return np.flatnonzero(~self.to_bool())


class ArcState:
    """Mutable arc under construction; owned by one caller at a time."""

    def __init__(self, plane: PlaneParams, backend=None):
        self.plane = plane
        self.coverage = CoverageBitmap(plane.n_points)
        self.points: list[int] = []
        self._kernel = backend or kernel
        self._inv = plane.inv
        # canonical coordinates of arc points, grown by doubling
        self._cap = 16
        self._xyz = np.zeros((3, self._cap), dtype=np.int64)

    def __len__(self):
        return len(self.points)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def covered_count(self) -> int:
        return self.coverage.covered_count

    def is_covered(self, i: int) -> bool:
        return i in self.coverage

    def try_add(self, i: int) -> bool:
        """Add point ``i`` if no bisecant covers it; report whether it was added."""
        if not 0 <= i < self.plane.n_points:
            raise GeometryError(f"point index {i} out of range for q={self.plane.q}")
        if i in self.coverage:
            return False
        k = len(self.points)
        x0, x1, x2 = point_from_index(self.plane, i)
        self.coverage.covered_count += self._kernel.add_point(
            self.coverage.bits, self.plane.q, self._inv,
            self._xyz[0], self._xyz[1], self._xyz[2], k, x0, x1, x2,
        )
        if k == self._cap:
            self._cap *= 2
            grown = np.zeros((3, self._cap), dtype=np.int64)
            grown[:, :k] = self._xyz
            self._xyz = grown
        self._xyz[:, k] = (x0, x1, x2)
        self.points.append(i)
        return True

    def is_complete(self) -> bool:
        return self.coverage.covered_count == self.plane.n_points


def arc_new(plane: PlaneParams) -> ArcState:
    return ArcState(plane)


def arc_try_add(state: ArcState, i: int) -> bool:
    return state.try_add(i)


def arc_is_complete(state: ArcState) -> bool:
    return state.is_complete()


# --- oracles -------------------------------------------------------------
#
# Both rebuild everything from plain geometry and never look at ArcState.


def verify_arc(plane: PlaneParams, pts) -> bool:
    """True iff the points are distinct and no three are collinear."""
    pts = [int(i) for i in pts]
    if len(set(pts)) != len(pts):
        return False
    for i in pts:
        if not 0 <= i < plane.n_points:
            return False
    n = len(pts)
    if n < 3:
        return True
    q = plane.q
    if n <= 24:
        coords = [point_from_index(plane, i) for i in pts]
        return all(det3(q, a, b, c) != 0 for a, b, c in combinations(coords, 3))
    # det[P;Q;R] = (P x Q) . R; for each P, one matrix product covers all Q < R
    xyz = coords_of(plane, pts)
    # 3 * (q-1)^2 must not overflow int64 in the product
    use_matmul = 3 * (q - 1) ** 2 < 2**63
    for a in range(n - 2):
        P = xyz[a]
        rest = xyz[a + 1 :]
        lines = np.stack(
            [
                (P[1] * rest[:, 2] - P[2] * rest[:, 1]) % q,
                (P[2] * rest[:, 0] - P[0] * rest[:, 2]) % q,
                (P[0] * rest[:, 1] - P[1] * rest[:, 0]) % q,
            ],
            axis=1,
        )
        if use_matmul:
            d = (lines @ rest.T) % q
            if (d[np.triu_indices(len(rest), 1)] == 0).any():
                return False
            continue
        for b in range(len(rest) - 1):
            L = lines[b]
            R = rest[b + 1 :]
            d = ((L[0] * R[:, 0]) % q + (L[1] * R[:, 1]) % q + (L[2] * R[:, 2]) % q) % q
            if not d.all():
                return False
    return True


def verify_complete(plane: PlaneParams, pts) -> bool:
    """True iff every plane point is an arc point or on a bisecant of ``pts``.

    Sweeps the affine rows ``(1, y, *)`` one at a time: a bisecant
    ``a0 + a1*y + a2*z = 0`` with ``a2 != 0`` meets row y in exactly
    ``z = c + d*y``, so each row is checked in a q-sized scratch buffer.
    """
    pts = [int(i) for i in pts]
    if not verify_arc(plane, pts):
        raise ArcError("verify_complete requires a valid arc")
    q = plane.q
    n = len(pts)
    if n < 2:
        return plane.n_points == n
    xyz = coords_of(plane, pts)
    ia, ib = np.triu_indices(n, 1)
    P, Q = xyz[ia], xyz[ib]
    a0 = (P[:, 1] * Q[:, 2] - P[:, 2] * Q[:, 1]) % q
    a1 = (P[:, 2] * Q[:, 0] - P[:, 0] * Q[:, 2]) % q
    a2 = (P[:, 0] * Q[:, 1] - P[:, 1] * Q[:, 0]) % q

    inv = np.asarray(inverse_table(q), dtype=np.int64)
    gen = a2 != 0
    s = inv[a2[gen]]
    c = (-(a0[gen] * s)) % q
    d = (-(a1[gen] * s)) % q
    vertical = (~gen) & (a1 != 0)
    full_rows = set(((-(a0[vertical] * inv[a1[vertical]])) % q).tolist())

    affine = xyz[xyz[:, 0] == 1]
    arc_rows: dict[int, list[int]] = {}
    for _, y, z in affine.tolist():
        arc_rows.setdefault(y, []).append(z)

    row = np.zeros(q, dtype=bool)
    # uint32 wraparound: min(z, z - q) is z mod q for z in [0, 2q)
    z = c.astype(np.uint32)
    du = d.astype(np.uint32)
    tmp = np.empty_like(z)
    qu = np.uint32(q)
    for y in range(q):
        if y not in full_rows:
            row[:] = False
            row[z] = True
            row[arc_rows.get(y, [])] = True
            if not row.all():
                return False
        np.add(z, du, out=z)
        np.subtract(z, qu, out=tmp)
        np.minimum(z, tmp, out=z)

    # line at infinity: (0, 1, t) and (0, 0, 1)
    inf = np.zeros(q + 1, dtype=bool)
    inf[d] = True
    inf[q] = bool((~gen).any())
    if ((~gen) & (a1 == 0)).any():
        inf[:] = True
    for x0, x1, x2 in xyz.tolist():
        if x0 == 0:
            inf[x2 if x1 else q] = True
    return bool(inf.all())


def coverage_recount(plane: PlaneParams, pts) -> np.ndarray:
    """Boolean coverage rebuilt from the definition (for soundness checks)."""
    covered = np.zeros(plane.n_points, dtype=bool)
    covered[list(pts)] = True
    triples = [point_from_index(plane, int(i)) for i in pts]
    for a, b in combinations(triples, 2):
        covered[points_on_line_array(plane, line_through(plane, a, b))] = True
    return covered


# --- serialisation -------------------------------------------------------

_ARC_LINE = re.compile(r"^q=(\d+)\s+n=(\d+)\s+pts=([\d,]*)$")


def format_arc(q: int, pts) -> str:
    pts = [int(i) for i in pts]
    return f"q={q} n={len(pts)} pts={','.join(map(str, pts))}"


def parse_arc(text: str) -> tuple[int, list[int]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise ArcError(f"expected exactly one arc line, found {len(lines)}")
    m = _ARC_LINE.match(lines[0])
    if not m:
        raise ArcError(f"malformed arc line: {lines[0]!r}")
    q, n = int(m.group(1)), int(m.group(2))
    pts = [int(x) for x in m.group(3).split(",") if x]
    if len(pts) != n:
        raise ArcError(f"header says n={n} but {len(pts)} points listed")
    return q, pts


def write_arc(path, q: int, pts) -> None:
    Path(path).write_text(format_arc(q, pts) + "\n")


def read_arc(path) -> tuple[int, list[int]]:
    return parse_arc(Path(path).read_text())
