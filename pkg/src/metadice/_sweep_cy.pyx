# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: initializedcheck=False
# cython: cdivision=True
"""Compiled all-pairs duel sweep; hot-loop twin of ``_sweep_py``.

See the pure module for the contract. Faces arrive packed base 10 so one
digit-sequence comparison is a single machine-word comparison; packing
limits the compiled backend to 18-digit faces, which the dispatcher
enforces.
"""


def sweep(const long long[::1] faces, const signed char[::1] words,
          Py_ssize_t n, Py_ssize_t k):
    """Check every unordered pair; returns (pairs per level, failure records).

    ``faces`` is the n*3 packed face matrix flattened row-major, ``words``
    the n*k trit matrix likewise.
    """
    cdef Py_ssize_t i, j, p, fi, fj, wi, wj
    cdef long long a0, a1, a2, b0, b1, b2
    cdef int wins, ties, expected
    cdef long long counts[64]
    if k < 1 or k > 64:
        raise ValueError("word length outside supported range 1..64")
    for p in range(k):
        counts[p] = 0
    failures = []
    for i in range(n - 1):
        fi = 3 * i
        wi = k * i
        a0 = faces[fi]
        a1 = faces[fi + 1]
        a2 = faces[fi + 2]
        for j in range(i + 1, n):
            wj = k * j
            p = 0
            while words[wi + p] == words[wj + p]:
                p += 1
            counts[p] += 1
            fj = 3 * j
            b0 = faces[fj]
            b1 = faces[fj + 1]
            b2 = faces[fj + 2]
            wins = (
                (a0 > b0) + (a0 > b1) + (a0 > b2)
                + (a1 > b0) + (a1 > b1) + (a1 > b2)
                + (a2 > b0) + (a2 > b1) + (a2 > b2)
            )
            ties = (
                (a0 == b0) + (a0 == b1) + (a0 == b2)
                + (a1 == b0) + (a1 == b1) + (a1 == b2)
                + (a2 == b0) + (a2 == b1) + (a2 == b2)
            )
            expected = 5 if (words[wi + p] + 1) % 3 == words[wj + p] else 4
            if wins != expected or ties != 0:
                failures.append((i, j, wins, ties))
    return [counts[p] for p in range(k)], failures
