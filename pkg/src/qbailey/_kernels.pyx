# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense kernels with an int64 fast path.

Every multiply-accumulate is overflow checked; on overflow the kernel
restarts on Python integers, so results are always exact.
"""
from array import array
from libc.stdint cimport INT64_MIN

cdef extern from *:
    """
    static inline int qb_madd(long long *acc, long long a, long long b) {
        long long t;
        if (__builtin_mul_overflow(a, b, &t)) return 1;
        if (__builtin_add_overflow(*acc, t, acc)) return 1;
        return 0;
    }
    """
    int qb_madd(long long *acc, long long a, long long b) nogil


cdef list _mul_obj(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t i, j, stop, lb = len(b)
    cdef list out = [0] * n
    for i in range(min(len(a), n)):
        ai = a[i]
        if not ai:
            continue
        stop = min(lb, n - i)
        for j in range(stop):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def mul_trunc(list a, list b, Py_ssize_t n):
    """Coefficients 0..n-1 of the product of two dense coefficient lists."""
    if not a or not b or n <= 0:
        return []
    n = min(n, len(a) + len(b) - 1)
    if len(a) > len(b):
        a, b = b, a
    cdef long long[::1] av, bv, ov
    try:
        av = array('q', a)
        bv = array('q', b)
    except OverflowError:
        return _mul_obj(a, b, n)
    out = array('q', bytes(8 * n))
    ov = out
    cdef Py_ssize_t i, j, stop, la = av.shape[0], lb = bv.shape[0]
    cdef long long ai
    cdef int bad = 0
    with nogil:
        for i in range(min(la, n)):
            ai = av[i]
            if ai == 0:
                continue
            stop = lb if lb < n - i else n - i
            for j in range(stop):
                if qb_madd(&ov[i + j], ai, bv[j]):
                    bad = 1
                    break
            if bad:
                break
    if bad:
        return _mul_obj(a, b, n)
    return out.tolist()


cdef list _inv_obj(list a, Py_ssize_t n):
    cdef Py_ssize_t k, i, la = len(a)
    a0 = a[0]
    cdef list out = [0] * n
    if n == 0:
        return out
    out[0] = a0
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                acc += ai * out[k - i]
        out[k] = -a0 * acc
    return out


def inv_trunc(list a, Py_ssize_t n):
    """First n coefficients of 1/a, where a[0] is +1 or -1."""
    if a[0] not in (1, -1):
        raise ArithmeticError("leading coefficient must be a unit")
    cdef long long[::1] av, ov
    try:
        av = array('q', a)
    except OverflowError:
        return _inv_obj(a, n)
    if n == 0:
        return []
    out = array('q', bytes(8 * n))
    ov = out
    cdef Py_ssize_t k, i, la = av.shape[0], top
    cdef long long a0 = av[0], acc
    cdef int bad = 0
    ov[0] = a0
    with nogil:
        for k in range(1, n):
            acc = 0
            top = k if k < la - 1 else la - 1
            for i in range(1, top + 1):
                if av[i] != 0 and qb_madd(&acc, av[i], ov[k - i]):
                    bad = 1
                    break
            if bad or acc == INT64_MIN:
                bad = 1
                break
            ov[k] = -a0 * acc
    if bad:
        return _inv_obj(a, n)
    return out.tolist()
