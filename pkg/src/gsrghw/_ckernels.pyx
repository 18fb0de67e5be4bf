# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same contract as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memset

NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline bint _member(const unsigned char[:] membership, Py_ssize_t c, Py_ssize_t a) noexcept nogil:
    if a >= c:
        return True
    if a < 0:
        return False
    return membership[a] != 0


cdef class Prepared:
    cdef uint64_t* data
    cdef readonly Py_ssize_t nw
    cdef readonly Py_ssize_t nshift
    cdef readonly Py_ssize_t width

    def __cinit__(self):
        self.data = NULL

    def __dealloc__(self):
        if self.data != NULL:
            free(self.data)


def prepare(const unsigned char[:] membership, Py_ssize_t c, Py_ssize_t mu):
    cdef Py_ssize_t span = mu - 1
    cdef Py_ssize_t width = c + span
    cdef Py_ssize_t nw = (width + 63) // 64
    cdef Py_ssize_t j, i, d, a
    cdef Prepared p = Prepared()
    p.nw = nw if nw > 0 else 1
    p.nshift = span
    p.width = width
    p.data = <uint64_t*> calloc(max(span, 1) * p.nw, sizeof(uint64_t))
    if p.data == NULL:
        raise MemoryError()
    with nogil:
        for j in range(span):
            d = span - j
            for i in range(width):
                a = i - span
                if not _member(membership, c, a) and _member(membership, c, a + d):
                    p.data[j * p.nw + (i >> 6)] |= (<uint64_t> 1) << (i & 63)
    return p


def count_union(Prepared prep, indices):
    cdef Py_ssize_t w, cnt = 0
    cdef uint64_t v
    cdef list idx = list(indices)
    for w in range(prep.nw):
        v = 0
        for j in idx:
            v |= prep.data[<Py_ssize_t> j * prep.nw + w]
        cnt += __builtin_popcountll(v)
    return cnt


cdef Py_ssize_t _search(uint64_t* masks, Py_ssize_t nw, Py_ssize_t n, Py_ssize_t k,
                        Py_ssize_t first_lo, Py_ssize_t first_hi, Py_ssize_t start_best,
                        uint64_t* acc, Py_ssize_t* idx, Py_ssize_t* best_idx) noexcept nogil:
    cdef Py_ssize_t best = start_best
    cdef Py_ssize_t d = 0, lim, w, cnt, t
    cdef uint64_t v
    cdef uint64_t* src
    cdef uint64_t* dst
    cdef uint64_t* m
    memset(acc, 0, nw * sizeof(uint64_t))
    idx[0] = first_lo - 1
    while d >= 0:
        idx[d] += 1
        lim = n - (k - d)
        if d == 0 and first_hi - 1 < lim:
            lim = first_hi - 1
        if idx[d] > lim:
            d -= 1
            continue
        src = acc + d * nw
        dst = acc + (d + 1) * nw
        m = masks + idx[d] * nw
        cnt = 0
        for w in range(nw):
            v = src[w] | m[w]
            dst[w] = v
            cnt += __builtin_popcountll(v)
        if cnt >= best:
            continue
        if d == k - 1:
            best = cnt
            for t in range(k):
                best_idx[t] = idx[t]
            continue
        d += 1
        idx[d] = idx[d - 1]
    return best


def search(Prepared prep, Py_ssize_t k, Py_ssize_t first_lo, Py_ssize_t first_hi):
    cdef uint64_t* acc = <uint64_t*> calloc((k + 1) * prep.nw, sizeof(uint64_t))
    cdef Py_ssize_t* idx = <Py_ssize_t*> calloc(k, sizeof(Py_ssize_t))
    cdef Py_ssize_t* best_idx = <Py_ssize_t*> calloc(k, sizeof(Py_ssize_t))
    cdef Py_ssize_t start = prep.width + 1
    cdef Py_ssize_t best
    if acc == NULL or idx == NULL or best_idx == NULL:
        free(acc); free(idx); free(best_idx)
        raise MemoryError()
    try:
        with nogil:
            best = _search(prep.data, prep.nw, prep.nshift, k, first_lo, first_hi,
                           start, acc, idx, best_idx)
        if best == start:
            return -1, None
        return best, tuple(best_idx[t] for t in range(k))
    finally:
        free(acc); free(idx); free(best_idx)


def full_count(const unsigned char[:] membership, Py_ssize_t c, Py_ssize_t mu):
    cdef Py_ssize_t nxt = c, cnt = 0, a
    with nogil:
        a = c - 1
        while a > -mu:
            if a >= 0 and membership[a] != 0:
                nxt = a
            elif nxt - a <= mu - 1:
                cnt += 1
            a -= 1
    return cnt
