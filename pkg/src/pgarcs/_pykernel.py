"""Numpy fallback for the coverage kernels (see ``_ckernel.pyx``).

Bitmaps are ``uint8`` arrays, bit ``i`` lives at ``bits[i >> 3]`` under
mask ``1 << (i & 7)`` (little-endian bit order).
"""
import numpy as np

BACKEND = "python"

# upper bound on the number of int64 temporaries built per chunk of lines
_CHUNK_ELEMS = 1 << 21


def _line_indices(q, inv, la0, la1, la2):
    """Point indices of many lines at once, shape (m, q + 1)."""
    m = la0.shape[0]
    qq = q * q
    out = np.empty((m, q + 1), dtype=np.int64)
    y = np.arange(q, dtype=np.int64)

    gen = la2 != 0
    if gen.any():
        s = inv[la2[gen]]
        c = (-(la0[gen] * s)) % q
        d = (-(la1[gen] * s)) % q
        block = (c[:, None] + (d[:, None] * y[None, :]) % q) % q
        block += y[None, :] * q
        out[gen, :q] = block
        out[gen, q] = qq + d

    flat = (~gen) & (la1 != 0)
    if flat.any():
        y0 = (-(la0[flat] * inv[la1[flat]])) % q
        out[flat, :q] = y0[:, None] * q + y[None, :]
        out[flat, q] = qq + q

    inf = (~gen) & (la1 == 0)
    if inf.any():
        out[inf] = np.arange(qq, qq + q + 1, dtype=np.int64)[None, :]
    return out


def add_point(bits, q, inv, ax, ay, az, k, px, py, pz):
    """Mark P and the k lines joining P to the arc points; return new coverage.

    Caller guarantees P is uncovered, so the k lines meet only at P and
    their remaining points are pairwise distinct.
    """
    p = _index(q, px, py, pz)
    newly = 0
    if not bits[p >> 3] & (1 << (p & 7)):
        bits[p >> 3] |= 1 << (p & 7)
        newly = 1
    if k == 0:
        return newly
    ax = np.asarray(ax[:k], dtype=np.int64)
    ay = np.asarray(ay[:k], dtype=np.int64)
    az = np.asarray(az[:k], dtype=np.int64)
    la0 = (py * az - pz * ay) % q
    la1 = (pz * ax - px * az) % q
    la2 = (px * ay - py * ax) % q
    step = max(1, _CHUNK_ELEMS // (q + 1))
    for lo in range(0, k, step):
        hi = min(k, lo + step)
        idx = _line_indices(q, inv, la0[lo:hi], la1[lo:hi], la2[lo:hi]).ravel()
        byte = idx >> 3
        mask = (np.int64(1) << (idx & 7)).astype(np.uint8)
        fresh = (bits[byte] & mask) == 0
        newly += int(np.count_nonzero(fresh))
        np.bitwise_or.at(bits, byte[fresh], mask[fresh])
    return newly


def _index(q, x0, x1, x2):
    if x0:
        return x1 * q + x2
    if x1:
        return q * q + x2
    return q * q + q


def first_uncovered(bits, order, start):
    """Position of the first entry of ``order[start:]`` whose bit is clear, or -1."""
    n = order.shape[0]
    step = 1 << 16
    pos = start
    while pos < n:
        chunk = order[pos : pos + step]
        clear = (bits[chunk >> 3] & (1 << (chunk & 7)).astype(np.uint8)) == 0
        hit = np.flatnonzero(clear)
        if hit.size:
            return pos + int(hit[0])
        pos += step
    return -1


def singer_sequence(q, c0, c1, c2, inv):
    """Point indices of x^0, x^1, ..., x^(q^2+q) in GF(q)[x]/(x^3+c2x^2+c1x+c0)."""
    n = q * q + q + 1
    out = np.empty(n, dtype=np.int64)
    inv = inv.tolist()
    a0, a1, a2 = 1, 0, 0
    qq = q * q
    for i in range(n):
        if a0:
            s = inv[a0]
            out[i] = (a1 * s % q) * q + a2 * s % q
        elif a1:
            out[i] = qq + a2 * inv[a1] % q
        else:
            out[i] = qq + q
        a0, a1, a2 = (-a2 * c0) % q, (a0 - a2 * c1) % q, (a1 - a2 * c2) % q
    return out
