# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double description kernel (int64, overflow-checked).

Same algorithm and output as ``_ddpy.extreme_rays``.  Any intermediate that
does not fit in int64 raises OverflowError; the dispatcher in ``kernels``
then reruns the call in pure Python.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, realloc, free

from . import _ddpy

cdef extern from *:
    """
    #include <stdint.h>
    static inline int cb_mul(int64_t a, int64_t b, int64_t *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int cb_sub(int64_t a, int64_t b, int64_t *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int cb_add(int64_t a, int64_t b, int64_t *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int cb_popcount(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int cb_mul(int64_t a, int64_t b, int64_t *r) nogil
    int cb_sub(int64_t a, int64_t b, int64_t *r) nogil
    int cb_add(int64_t a, int64_t b, int64_t *r) nogil
    int cb_popcount(unsigned long long x) nogil


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef struct RaySet:
    int64_t *rays      # n * d
    uint64_t *zs       # n * w
    Py_ssize_t n
    Py_ssize_t cap


cdef int _grow(RaySet *s, Py_ssize_t need, int d, int w) except -1:
    cdef Py_ssize_t cap = s.cap
    if need <= cap:
        return 0
    while cap < need:
        cap = cap * 2 if cap else 16
    cdef int64_t *r = <int64_t *> realloc(s.rays, cap * d * sizeof(int64_t))
    if r == NULL:
        raise MemoryError()
    s.rays = r
    cdef uint64_t *z = <uint64_t *> realloc(s.zs, cap * w * sizeof(uint64_t))
    if z == NULL:
        raise MemoryError()
    s.zs = z
    s.cap = cap
    return 0


cdef void _release(RaySet *s) noexcept:
    free(s.rays)
    free(s.zs)
    s.rays = NULL
    s.zs = NULL
    s.n = s.cap = 0


def extreme_rays(rows, int d):
    """Extreme rays of ``{x : r . x >= 0}``; see ``_ddpy.extreme_rays``."""
    cdef list prows = [tuple(int(x) for x in r) for r in rows]
    cdef Py_ssize_t m = len(prows)
    basis = _ddpy._initial_basis(prows, d)
    if len(basis) < d:
        raise ValueError("cone is not pointed: constraint rank < dimension")
    cols = _ddpy._solve_unit_columns([prows[i] for i in basis], d)

    cdef int w = <int> ((m + 63) // 64)
    cdef int64_t *A = <int64_t *> malloc(max(m * d, 1) * sizeof(int64_t))
    cdef int64_t *vals = NULL
    cdef uint64_t *common = <uint64_t *> malloc(w * sizeof(uint64_t))
    cdef RaySet cur, nxt
    cur.rays = NULL; cur.zs = NULL; cur.n = 0; cur.cap = 0
    nxt.rays = NULL; nxt.zs = NULL; nxt.n = 0; nxt.cap = 0
    cdef Py_ssize_t i, j, k, p, q, t
    cdef int64_t acc, tmp, vp, vn, g, x
    cdef int bits, need, ok
    cdef uint64_t bit
    cdef Py_ssize_t word
    cdef char *in_basis = <char *> malloc(max(m, 1))
    try:
        if A == NULL or common == NULL or in_basis == NULL:
            raise MemoryError()
        for i in range(m):
            in_basis[i] = 0
            for j in range(d):
                A[i * d + j] = prows[i][j]
        for i in basis:
            in_basis[i] = 1
        _grow(&cur, d, d, w)
        for k in range(d):
            for j in range(d):
                cur.rays[k * d + j] = cols[k][j]
            for t in range(w):
                cur.zs[k * w + t] = 0
            for i in basis:
                if i != basis[k]:
                    cur.zs[k * w + i // 64] |= (<uint64_t> 1) << (i % 64)
        cur.n = d
        need = d - 2

        for i in range(m):
            if in_basis[i]:
                continue
            word = i // 64
            bit = (<uint64_t> 1) << (i % 64)
            free(vals)
            vals = <int64_t *> malloc(max(cur.n, 1) * sizeof(int64_t))
            if vals == NULL:
                raise MemoryError()
            has_neg = False
            for k in range(cur.n):
                acc = 0
                for j in range(d):
                    if cb_mul(A[i * d + j], cur.rays[k * d + j], &tmp) or cb_add(acc, tmp, &acc):
                        raise OverflowError("int64 overflow in scalar product")
                vals[k] = acc
                if acc < 0:
                    has_neg = True
            if not has_neg:
                for k in range(cur.n):
                    if vals[k] == 0:
                        cur.zs[k * w + word] |= bit
                continue

            nxt.n = 0
            # keep rays with val >= 0
            for k in range(cur.n):
                if vals[k] >= 0:
                    _grow(&nxt, nxt.n + 1, d, w)
                    for j in range(d):
                        nxt.rays[nxt.n * d + j] = cur.rays[k * d + j]
                    for t in range(w):
                        nxt.zs[nxt.n * w + t] = cur.zs[k * w + t]
                    if vals[k] == 0:
                        nxt.zs[nxt.n * w + word] |= bit
                    nxt.n += 1
            for p in range(cur.n):
                if vals[p] <= 0:
                    continue
                vp = vals[p]
                for q in range(cur.n):
                    if vals[q] >= 0:
                        continue
                    bits = 0
                    for t in range(w):
                        common[t] = cur.zs[p * w + t] & cur.zs[q * w + t]
                        bits += cb_popcount(common[t])
                    if bits < need:
                        continue
                    ok = 1
                    for k in range(cur.n):
                        if k == p or k == q:
                            continue
                        for t in range(w):
                            if (cur.zs[k * w + t] & common[t]) != common[t]:
                                break
                        else:
                            ok = 0
                            break
                    if not ok:
                        continue
                    vn = vals[q]
                    _grow(&nxt, nxt.n + 1, d, w)
                    g = 0
                    for j in range(d):
                        if cb_mul(vp, cur.rays[q * d + j], &acc) or \
                                cb_mul(vn, cur.rays[p * d + j], &tmp) or cb_sub(acc, tmp, &x):
                            raise OverflowError("int64 overflow in ray combination")
                        nxt.rays[nxt.n * d + j] = x
                        g = _gcd(g, x)
                    if g > 1:
                        for j in range(d):
                            nxt.rays[nxt.n * d + j] //= g
                    for t in range(w):
                        nxt.zs[nxt.n * w + t] = common[t]
                    nxt.zs[nxt.n * w + word] |= bit
                    nxt.n += 1
            cur, nxt = nxt, cur

        rays_out = []
        zs_out = []
        for k in range(cur.n):
            rays_out.append(tuple(cur.rays[k * d + j] for j in range(d)))
            z = 0
            for t in range(w):
                z |= (<object> cur.zs[k * w + t]) << (64 * t)
            zs_out.append(z)
        return rays_out, zs_out
    finally:
        free(A)
        free(vals)
        free(common)
        free(in_basis)
        _release(&cur)
        _release(&nxt)
