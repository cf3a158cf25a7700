# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coverage kernels; same contract as ``_pykernel``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

BACKEND = "cython"


cdef inline int64_t _mod(int64_t a, int64_t q) nogil:
    a %= q
    return a + q if a < 0 else a


cdef inline int64_t _index(int64_t q, int64_t x0, int64_t x1, int64_t x2) nogil:
    if x0:
        return x1 * q + x2
    if x1:
        return q * q + x2
    return q * q + q


cdef inline int64_t _mark(uint8_t[::1] bits, int64_t i) nogil:
    cdef uint8_t m = <uint8_t>(1 << (i & 7))
    if bits[i >> 3] & m:
        return 0
    bits[i >> 3] |= m
    return 1


def add_point(uint8_t[::1] bits, int64_t q, const int64_t[::1] inv,
              const int64_t[::1] ax, const int64_t[::1] ay, const int64_t[::1] az,
              Py_ssize_t k, int64_t px, int64_t py, int64_t pz):
    cdef int64_t newly = 0
    cdef int64_t qq = q * q
    cdef int64_t a0, a1, a2, s, c, d, z, y, y0, base
    cdef Py_ssize_t j
    with nogil:
        newly += _mark(bits, _index(q, px, py, pz))
        for j in range(k):
            a0 = _mod(py * az[j] - pz * ay[j], q)
            a1 = _mod(pz * ax[j] - px * az[j], q)
            a2 = _mod(px * ay[j] - py * ax[j], q)
            if a2:
                s = inv[a2]
                c = _mod(-(a0 * s), q)
                d = _mod(-(a1 * s), q)
                # z(y) = c + d*y, advanced incrementally
                z = c
                base = 0
                for y in range(q):
                    newly += _mark(bits, base + z)
                    base += q
                    z += d
                    if z >= q:
                        z -= q
                newly += _mark(bits, qq + d)
            elif a1:
                y0 = _mod(-(a0 * inv[a1]), q)
                base = y0 * q
                for y in range(q):
                    newly += _mark(bits, base + y)
                newly += _mark(bits, qq + q)
            else:
                for y in range(q + 1):
                    newly += _mark(bits, qq + y)
    return newly


def first_uncovered(const uint8_t[::1] bits, const int64_t[::1] order, Py_ssize_t start):
    cdef Py_ssize_t n = order.shape[0]
    cdef Py_ssize_t pos, found = -1
    cdef int64_t i
    with nogil:
        for pos in range(start, n):
            i = order[pos]
            if not (bits[i >> 3] & (1 << (i & 7))):
                found = pos
                break
    return found


def singer_sequence(int64_t q, int64_t c0, int64_t c1, int64_t c2, const int64_t[::1] inv):
    cdef Py_ssize_t n = q * q + q + 1
    cdef cnp.ndarray[int64_t, ndim=1] out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int64_t a0 = 1, a1 = 0, a2 = 0, b0, b1, b2, s
    cdef int64_t qq = q * q
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            if a0:
                s = inv[a0]
                out[i] = (a1 * s % q) * q + a2 * s % q
            elif a1:
                out[i] = qq + a2 * inv[a1] % q
            else:
                out[i] = qq + q
            b0 = _mod(-(a2 * c0), q)
            b1 = _mod(a0 - a2 * c1, q)
            b2 = _mod(a1 - a2 * c2, q)
            a0 = b0
            a1 = b1
            a2 = b2
    return out_arr
