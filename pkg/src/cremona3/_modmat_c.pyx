# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for dense matrix kernels mod p.

Same pivoting and outputs as cremona3._modmat_py; requires p < 2**32 so
products fit in 64-bit unsigned arithmetic.
"""

from libc.stdlib cimport malloc, free


cdef unsigned long long inv_mod(unsigned long long a, unsigned long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long t = 0, newt = 1
    cdef long long r = <long long> p, newr = <long long> (a % p)
    cdef long long q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <long long> p
    return <unsigned long long> t


def det_mod(rows, p):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef unsigned long long up = <unsigned long long> p
    cdef unsigned long long *m = <unsigned long long *> malloc(n * n * sizeof(unsigned long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, piv
    cdef unsigned long long det = 1, pv, inv, f, t
    cdef bint neg = False
    try:
        for i in range(n):
            row = rows[i]
            for j in range(n):
                m[i * n + j] = <unsigned long long> (row[j] % p)
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if m[i * n + c] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = m[piv * n + j]
                    m[piv * n + j] = m[c * n + j]
                    m[c * n + j] = t
                neg = not neg
            pv = m[c * n + c]
            det = det * pv % up
            inv = inv_mod(pv, up)
            for i in range(c + 1, n):
                f = m[i * n + c]
                if f == 0:
                    continue
                f = f * inv % up
                for j in range(c, n):
                    t = f * m[c * n + j] % up
                    m[i * n + j] = (m[i * n + j] + up - t) % up
        if neg and det != 0:
            det = up - det
        return int(det)
    finally:
        free(m)


def rref_mod(rows, p):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return [], []
    cdef Py_ssize_t ncols = len(rows[0])
    cdef unsigned long long up = <unsigned long long> p
    cdef unsigned long long *m = <unsigned long long *> malloc(nrows * ncols * sizeof(unsigned long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r, piv
    cdef unsigned long long inv, f, t
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = <unsigned long long> (row[j] % p)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[piv * ncols + j]
                    m[piv * ncols + j] = m[r * ncols + j]
                    m[r * ncols + j] = t
            inv = inv_mod(m[r * ncols + c], up)
            for j in range(c, ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % up
            for i in range(nrows):
                if i == r:
                    continue
                f = m[i * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    t = f * m[r * ncols + j] % up
                    m[i * ncols + j] = (m[i * ncols + j] + up - t) % up
            pivots.append(c)
            r += 1
        out = [[int(m[i * ncols + j]) for j in range(ncols)] for i in range(nrows)]
        return out, pivots
    finally:
        free(m)
