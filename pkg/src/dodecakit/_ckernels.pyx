# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; ``_kernels_py`` has the reference versions."""

from libc.stdlib cimport free, malloc


def canonical_code(f, n, starts, Py_ssize_t size):
    cdef Py_ssize_t N = len(f)
    cdef long *ff = <long *> malloc(N * sizeof(long))
    cdef long *nn = <long *> malloc(N * sizeof(long))
    cdef long *label = <long *> malloc(N * sizeof(long))
    cdef long *order = <long *> malloc((size + 1) * sizeof(long))
    cdef long *code = <long *> malloc(2 * (size + 1) * sizeof(long))
    cdef long *best = <long *> malloc(2 * (size + 1) * sizeof(long))
    cdef Py_ssize_t i, k, nxt, pos, j
    cdef long x, y, ly, s
    cdef int state, have_best = 0
    cdef long best_start = -1
    if not (ff and nn and label and order and code and best):
        free(ff); free(nn); free(label); free(order); free(code); free(best)
        raise MemoryError()
    try:
        for i in range(N):
            ff[i] = f[i]
            nn[i] = n[i]
            label[i] = -1
        for s in starts:
            label[s] = 0
            order[0] = s
            nxt = 1
            state = 0 if have_best else -1
            pos = 0
            k = 0
            while k < nxt:
                x = order[k]
                k += 1
                for j in range(2):
                    y = ff[x] if j == 0 else nn[x]
                    ly = label[y]
                    if ly < 0:
                        ly = nxt
                        label[y] = ly
                        order[nxt] = y
                        nxt += 1
                    if state == 0:
                        if ly > best[pos]:
                            state = 1
                            break
                        if ly < best[pos]:
                            state = -1
                    code[pos] = ly
                    pos += 1
                if state == 1:
                    break
            if state == -1:
                for i in range(pos):
                    best[i] = code[i]
                have_best = 1
                best_start = s
            for i in range(nxt):
                label[order[i]] = -1
        return [best[i] for i in range(2 * size)], best_start
    finally:
        free(ff); free(nn); free(label); free(order); free(code); free(best)
