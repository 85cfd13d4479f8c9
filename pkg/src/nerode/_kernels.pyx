# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels for partition refinement and machine simulation.

Machines are passed as C-contiguous ``intc`` tables indexed
``[state, input]``.  Results match :mod:`nerode._fallback` exactly.
"""

import numpy as np


cdef Py_ssize_t _split(const int[:, ::1] trans, const int[:, ::1] emit,
                       int[::1] old, Py_ssize_t old_count, int[::1] new,
                       int[::1] reps, int[::1] head, int[::1] link,
                       bint by_emission) noexcept nogil:
    # Each old block keeps a chain of the new blocks carved out of it;
    # a state joins the first chain member whose representative matches it.
    cdef Py_ssize_t n = trans.shape[0]
    cdef Py_ssize_t k = trans.shape[1]
    cdef Py_ssize_t s, a, r, count = 0
    cdef int j, last
    cdef bint same
    for j in range(old_count):
        head[j] = -1
    for s in range(n):
        j = head[old[s]]
        last = -1
        while j != -1:
            r = reps[j]
            same = True
            if by_emission:
                for a in range(k):
                    if emit[r, a] != emit[s, a]:
                        same = False
                        break
            else:
                for a in range(k):
                    if old[trans[r, a]] != old[trans[s, a]]:
                        same = False
                        break
            if same:
                break
            last = j
            j = link[j]
        if j == -1:
            j = <int>count
            count += 1
            reps[j] = <int>s
            link[j] = -1
            if last == -1:
                head[old[s]] = j
            else:
                link[last] = j
        new[s] = j
    return count


def refine(const int[:, ::1] trans, const int[:, ::1] emit):
    """Moore partition refinement; returns ``(block, count)``."""
    cdef Py_ssize_t n = trans.shape[0]
    a_buf = np.zeros(n, dtype=np.intc)
    b_buf = np.zeros(n, dtype=np.intc)
    cdef int[::1] old = a_buf
    cdef int[::1] new = b_buf
    cdef int[::1] reps = np.empty(max(n, 1), dtype=np.intc)
    cdef int[::1] head = np.empty(max(n, 1), dtype=np.intc)
    cdef int[::1] link = np.empty(max(n, 1), dtype=np.intc)
    cdef int[::1] tmp
    cdef Py_ssize_t count, new_count
    if n == 0:
        return a_buf, 0
    with nogil:
        count = _split(trans, emit, old, 1, new, reps, head, link, True)
        while True:
            tmp = old
            old = new
            new = tmp
            new_count = _split(trans, emit, old, count, new, reps, head, link, False)
            if new_count == count:
                break
            count = new_count
    return np.asarray(new).copy(), count


def run(const int[:, ::1] trans, const int[:, ::1] emit, int state,
        const int[::1] word):
    """Feed ``word`` from ``state``; return ``(outputs, final_state)``."""
    cdef Py_ssize_t i, n = word.shape[0]
    out_arr = np.empty(n, dtype=np.intc)
    cdef int[::1] out = out_arr
    cdef int a
    with nogil:
        for i in range(n):
            a = word[i]
            out[i] = emit[state, a]
            state = trans[state, a]
    return out_arr, state
