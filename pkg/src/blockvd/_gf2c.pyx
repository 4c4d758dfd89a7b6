# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) row-reduction kernel on packed 64-bit words.

Semantics must match ``blockvd._gf2`` exactly: greedy elimination with
lowest-set-bit pivots, keeping the first independent row.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

BACKEND = "cython"


def gf2_independent_rows(rows, int nbits):
    """Indices of a greedy maximal linearly independent subset of rows."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return []
    cdef int nwords = (nbits + 63) >> 6
    if nwords == 0:
        nwords = 1
    cdef int npiv = nwords * 64
    cdef unsigned long long *work = <unsigned long long *> calloc(nwords, 8)
    cdef unsigned long long *basis = <unsigned long long *> calloc(
        <size_t> nrows * nwords, 8)
    # pivrow[bit] = basis-row index + 1, or 0 when the pivot is unused
    cdef Py_ssize_t *pivrow = <Py_ssize_t *> calloc(npiv, sizeof(Py_ssize_t))
    if work == NULL or basis == NULL or pivrow == NULL:
        free(work); free(basis); free(pivrow)
        raise MemoryError()

    out = []
    cdef Py_ssize_t idx, hit
    cdef Py_ssize_t nbasis = 0
    cdef int w, loww, lowb, piv
    cdef unsigned long long word
    cdef const unsigned char[::1] raw
    try:
        for idx in range(nrows):
            raw = rows[idx].to_bytes(nwords * 8, "little")
            memcpy(work, &raw[0], nwords * 8)
            while True:
                loww = -1
                for w in range(nwords):
                    if work[w] != 0:
                        loww = w
                        break
                if loww < 0:
                    break  # reduced to zero: dependent row
                word = work[loww]
                lowb = 0
                while not (word & 1):
                    word >>= 1
                    lowb += 1
                piv = loww * 64 + lowb
                hit = pivrow[piv]
                if hit == 0:
                    memcpy(basis + nbasis * nwords, work, nwords * 8)
                    pivrow[piv] = nbasis + 1
                    nbasis += 1
                    out.append(idx)
                    break
                for w in range(loww, nwords):
                    work[w] ^= basis[(hit - 1) * nwords + w]
        return out
    finally:
        free(work)
        free(basis)
        free(pivrow)
