# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled elimination kernel over F_p for dense int64 rows.

The basis is a preallocated 2-D array whose first ``nrows`` rows are monic,
fully reduced echelon rows with pivot columns recorded in ``pivs`` (sorted).
Entries of stored rows always lie in 0..p-1; the working row is only reduced
mod p where a pivot is read, and once at the end, so the inner loop is a
fused multiply-subtract.  Intermediate values stay below nrows * p^2, far
from the int64 limit for the primes used here.
"""

import numpy as np


def reduce_row(long[:, ::1] basis, long[::1] pivs, int nrows,
               long[::1] row, long p):
    """Reduce ``row`` in place against the basis; returns its pivot column
    (first nonzero index after the final reduction) or -1."""
    cdef int i, j, n = row.shape[0]
    cdef long c
    for i in range(nrows):
        c = row[pivs[i]] % p
        if c != 0:
            for j in range(n):
                row[j] -= c * basis[i, j]
    for j in range(n):
        row[j] %= p
        if row[j] < 0:
            row[j] += p
    for j in range(n):
        if row[j] != 0:
            return j
    return -1


def insert_row(long[:, ::1] basis, long[::1] pivs, int nrows,
               long[::1] row, long pivot, long p):
    """Append an already-reduced row: make it monic, back-eliminate its
    pivot column from existing rows and store it sorted by pivot column.
    Returns the new row count."""
    cdef int i, j, k, pos, n = row.shape[0]
    cdef long inv = 1, c, a = row[pivot] % p
    cdef long e = p - 2, b = a
    while e > 0:  # modular inverse by Fermat; p is prime and a != 0
        if e & 1:
            inv = (inv * b) % p
        b = (b * b) % p
        e >>= 1
    for j in range(n):
        row[j] = (row[j] * inv) % p
    for i in range(nrows):
        c = basis[i, pivot]
        if c != 0:
            for j in range(n):
                basis[i, j] -= c * row[j]
            for j in range(n):
                basis[i, j] %= p
                if basis[i, j] < 0:
                    basis[i, j] += p
    pos = nrows
    for i in range(nrows):
        if pivs[i] > pivot:
            pos = i
            break
    for k in range(nrows, pos, -1):
        for j in range(n):
            basis[k, j] = basis[k - 1, j]
        pivs[k] = pivs[k - 1]
    for j in range(n):
        basis[pos, j] = row[j]
    pivs[pos] = pivot
    return nrows + 1
