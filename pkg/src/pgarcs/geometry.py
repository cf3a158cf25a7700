"""Points and lines of PG(2,q) for prime q.

Points are indexed densely::

    i in [0, q^2)      ->  (1, i // q, i % q)
    i = q^2 + j        ->  (0, 1, j)          for j in [0, q)
    i = q^2 + q        ->  (0, 0, 1)

Triples are canonical when their first nonzero coordinate is 1.  Lines use
the same normalisation on their dual coordinates ``(a0, a1, a2)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .field import FieldError, check_prime, inverse_table

Triple = tuple[int, int, int]

# products of two residues must fit in int64 for the vectorised helpers
MAX_Q = 2**31 - 1


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneParams:
    q: int
    n_points: int = field(init=False)
    n_lines: int = field(init=False)

    def __post_init__(self):
        try:
            check_prime(self.q)
        except FieldError as exc:
            raise GeometryError(str(exc)) from None
        if self.q > MAX_Q:
            raise GeometryError(f"q={self.q} exceeds supported maximum {MAX_Q}")
        n = self.q * self.q + self.q + 1
        object.__setattr__(self, "n_points", n)
        object.__setattr__(self, "n_lines", n)

    @cached_property
    def inv(self) -> np.ndarray:
        """Inverse table as int64 array, inv[0] = 0."""
        return np.asarray(inverse_table(self.q), dtype=np.int64)

    def __reduce__(self):
        return (PlaneParams, (self.q,))


def normalize(q: int, t) -> Triple:
    """Scale a nonzero triple so that its first nonzero coordinate is 1."""
    x0, x1, x2 = (int(c) % q for c in t)
    if x0:
        s = pow(x0, -1, q)
        return (1, x1 * s % q, x2 * s % q)
    if x1:
        s = pow(x1, -1, q)
        return (0, 1, x2 * s % q)
    if x2:
        return (0, 0, 1)
    raise GeometryError("the zero triple is not a projective point")


def point_from_index(plane: PlaneParams, i: int) -> Triple:
    q = plane.q
    if not 0 <= i < plane.n_points:
        raise GeometryError(f"point index {i} out of range for q={q}")
    qq = q * q
    if i < qq:
        return (1, i // q, i % q)
    if i < qq + q:
        return (0, 1, i - qq)
    return (0, 0, 1)


def index_from_point(plane: PlaneParams, t) -> int:
    q = plane.q
    x0, x1, x2 = normalize(q, t)
    if x0:
        return x1 * q + x2
    if x1:
        return q * q + x2
    return q * q + q


def cross(q: int, p: Triple, r: Triple) -> Triple:
    return (
        (p[1] * r[2] - p[2] * r[1]) % q,
        (p[2] * r[0] - p[0] * r[2]) % q,
        (p[0] * r[1] - p[1] * r[0]) % q,
    )


def line_through(plane: PlaneParams, P, Q) -> Triple:
    q = plane.q
    P = normalize(q, P)
    Q = normalize(q, Q)
    L = cross(q, P, Q)
    if L == (0, 0, 0):
        raise GeometryError(f"{P} and {Q} are the same projective point")
    return normalize(q, L)


def on_line(plane: PlaneParams, L, P) -> bool:
    return (L[0] * P[0] + L[1] * P[1] + L[2] * P[2]) % plane.q == 0


def points_on_line(plane: PlaneParams, L) -> list[int]:
    """Indices of the q+1 points of line L, solved directly from its equation."""
    q = plane.q
    a0, a1, a2 = (int(c) % q for c in L)
    qq = q * q
    if a2:
        s = pow(a2, -1, q)
        # (1, y, z) with z = -(a0 + a1 y) / a2, plus (0, 1, -a1/a2)
        c = (-a0 * s) % q
        d = (-a1 * s) % q
        pts = [y * q + (c + d * y) % q for y in range(q)]
        pts.append(qq + d)
    elif a1:
        y0 = (-a0 * pow(a1, -1, q)) % q
        pts = list(range(y0 * q, y0 * q + q))
        pts.append(qq + q)
    elif a0:
        pts = list(range(qq, qq + q + 1))
    else:
        raise GeometryError("the zero triple is not a line")
    return pts


def points_on_line_array(plane: PlaneParams, L) -> np.ndarray:
    """Vectorised twin of :func:`points_on_line` (same order, int64 array)."""
    q = plane.q
    a0, a1, a2 = (int(c) % q for c in L)
    qq = q * q
    out = np.empty(q + 1, dtype=np.int64)
    if a2:
        s = pow(a2, -1, q)
        c = (-a0 * s) % q
        d = (-a1 * s) % q
        y = np.arange(q, dtype=np.int64)
        out[:q] = y * q + (c + d * y) % q
        out[q] = qq + d
    elif a1:
        y0 = (-a0 * pow(a1, -1, q)) % q
        out[:q] = np.arange(y0 * q, y0 * q + q, dtype=np.int64)
        out[q] = qq + q
    elif a0:
        out[:] = np.arange(qq, qq + q + 1, dtype=np.int64)
    else:
        raise GeometryError("the zero triple is not a line")
    return out


def det3(q: int, P, Q, R) -> int:
    return (
        P[0] * (Q[1] * R[2] - Q[2] * R[1])
        - P[1] * (Q[0] * R[2] - Q[2] * R[0])
        + P[2] * (Q[0] * R[1] - Q[1] * R[0])
    ) % q


def collinear(plane: PlaneParams, P, Q, R) -> bool:
    for t in (P, Q, R):
        if all(int(c) % plane.q == 0 for c in t):
            raise GeometryError("the zero triple is not a projective point")
    return det3(plane.q, P, Q, R) == 0


def all_points(plane: PlaneParams) -> np.ndarray:
    """(n_points, 3) int64 array of canonical coordinates in index order."""
    q = plane.q
    out = np.zeros((plane.n_points, 3), dtype=np.int64)
    i = np.arange(q * q, dtype=np.int64)
    out[: q * q, 0] = 1
    out[: q * q, 1] = i // q
    out[: q * q, 2] = i % q
    out[q * q : q * q + q, 1] = 1
    out[q * q : q * q + q, 2] = np.arange(q)
    out[-1, 2] = 1
    return out


def coords_of(plane: PlaneParams, idx) -> np.ndarray:
    """Vectorised point_from_index for an array of indices."""
    q = plane.q
    idx = np.asarray(idx, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= plane.n_points):
        raise GeometryError("point index out of range")
    qq = q * q
    out = np.zeros(idx.shape + (3,), dtype=np.int64)
    affine = idx < qq
    out[..., 0] = affine
    out[..., 1] = np.where(affine, idx // q, (idx < qq + q).astype(np.int64))
    out[..., 2] = np.where(affine, idx % q, np.where(idx < qq + q, idx - qq, 1))
    return out
