# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stabilization kernel: int64 fast path of _fire_py.stabilize_csr.

Semantics must match the pure kernel exactly. Overflow safety: converting
the chip list to int64 raises OverflowError for oversized entries, and the
odometer is guarded during the cascade; the caller falls back to the pure
kernel on OverflowError. The caller also pre-checks that the chip total
fits comfortably, which bounds every intermediate chip count.
"""

from cpython cimport array
import array

cdef long long GUARD = 4611686018427387904  # 2**62


def stabilize_csr(object deg_obj, object indptr_obj, object nbr_obj,
                  object mult_obj, object chips_obj):
    cdef array.array deg_a = deg_obj
    cdef array.array indptr_a = indptr_obj
    cdef array.array nbr_a = nbr_obj
    cdef array.array mult_a = mult_obj
    cdef array.array chips_a = array.array('q', chips_obj)
    cdef Py_ssize_t n = len(deg_a)
    cdef array.array odo_a = array.clone(chips_a, n, zero=True)
    cdef array.array queue_a = array.clone(chips_a, n + 1, zero=True)
    cdef array.array inq_a = array.clone(chips_a, n, zero=True)

    cdef long long[::1] deg = deg_a
    cdef long long[::1] indptr = indptr_a
    cdef long long[::1] nbr = nbr_a
    cdef long long[::1] mult = mult_a
    cdef long long[::1] c = chips_a
    cdef long long[::1] odo = odo_a
    cdef long long[::1] queue = queue_a
    cdef long long[::1] inq = inq_a

    cdef Py_ssize_t head = 0, tail = 0, cap = n + 1
    cdef Py_ssize_t i, k, x, y
    cdef long long d, t

    for i in range(n):
        if c[i] >= deg[i]:
            queue[tail] = i
            tail = (tail + 1) % cap
            inq[i] = 1
    while head != tail:
        x = queue[head]
        head = (head + 1) % cap
        inq[x] = 0
        d = deg[x]
        t = c[x] / d
        if t <= 0:
            continue
        odo[x] += t
        if odo[x] > GUARD:
            raise OverflowError("odometer exceeds int64 guard")
        c[x] -= t * d
        for k in range(indptr[x], indptr[x + 1]):
            y = nbr[k]
            c[y] += t * mult[k]
            if c[y] > GUARD:
                raise OverflowError("chip count exceeds int64 guard")
            if c[y] >= deg[y] and not inq[y]:
                inq[y] = 1
                queue[tail] = y
                tail = (tail + 1) % cap
    return chips_a.tolist(), odo_a.tolist()
