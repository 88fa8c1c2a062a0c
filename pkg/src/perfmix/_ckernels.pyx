# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Signatures mirror perfmix._pykernels exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t, int8_t

cnp.import_array()


def bfs_nearest(const int64_t[::1] sources, const int64_t[::1] orders):
    """Multi-source BFS over the Hamming graph of the mixed space.

    Returns (dist, label): dist[x] = distance from word index x to the code,
    label[x] = position (in ``sources``) of a nearest codeword.
    """
    cdef Py_ssize_t n = orders.shape[0]
    cdef Py_ssize_t i, head, tail, s
    cdef int64_t total = 1
    for i in range(n):
        total *= orders[i]
    strides_np = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] strides = strides_np
    cdef int64_t acc = 1
    for i in range(n - 1, -1, -1):
        strides[i] = acc
        acc *= orders[i]

    dist_np = np.full(total, -1, dtype=np.int8)
    label_np = np.full(total, -1, dtype=np.int32)
    queue_np = np.empty(total, dtype=np.int64)
    cdef int8_t[::1] dist = dist_np
    cdef int32_t[::1] label = label_np
    cdef int64_t[::1] queue = queue_np

    tail = 0
    for s in range(sources.shape[0]):
        if dist[sources[s]] < 0:
            dist[sources[s]] = 0
            label[sources[s]] = <int32_t>s
            queue[tail] = sources[s]
            tail += 1

    cdef int64_t x, base, y, digit, stride, q
    cdef int64_t a
    head = 0
    while head < tail:
        x = queue[head]
        head += 1
        for i in range(n):
            stride = strides[i]
            q = orders[i]
            digit = (x // stride) % q
            base = x - digit * stride
            for a in range(q):
                if a == digit:
                    continue
                y = base + a * stride
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    label[y] = label[x]
                    queue[tail] = y
                    tail += 1
    return dist_np, label_np


def min_label_edge(const int8_t[::1] dist, const int32_t[::1] label,
                   const int64_t[::1] orders):
    """min over Hamming-graph edges (x, y) with label[x] != label[y] of
    dist[x] + dist[y] + 1, or -1 if every edge is monochromatic."""
    cdef Py_ssize_t n = orders.shape[0]
    cdef Py_ssize_t i
    cdef int64_t total = dist.shape[0]
    strides_np = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] strides = strides_np
    cdef int64_t acc = 1
    for i in range(n - 1, -1, -1):
        strides[i] = acc
        acc *= orders[i]
    cdef int64_t x, y, digit, base, stride, q, a
    cdef int best = 1 << 30
    cdef int cand
    for x in range(total):
        for i in range(n):
            stride = strides[i]
            q = orders[i]
            digit = (x // stride) % q
            base = x - digit * stride
            for a in range(digit + 1, q):
                y = base + a * stride
                if label[y] != label[x]:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    if best == (1 << 30):
        return -1
    return best


def pair_distance_histogram(const uint8_t[:, ::1] words):
    """Counts of Hamming distances over unordered pairs of distinct rows."""
    cdef Py_ssize_t M = words.shape[0]
    cdef Py_ssize_t n = words.shape[1]
    hist_np = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] hist = hist_np
    cdef Py_ssize_t i, j, k
    cdef int d
    for i in range(M):
        for j in range(i + 1, M):
            d = 0
            for k in range(n):
                if words[i, k] != words[j, k]:
                    d += 1
            hist[d] += 1
    return hist_np


def cross_min_distance(const uint8_t[:, ::1] A, const uint8_t[:, ::1] B):
    """min Hamming distance between a row of A and a row of B."""
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t n = A.shape[1]
    cdef int best = n + 1
    cdef int d
    for i in range(A.shape[0]):
        for j in range(B.shape[0]):
            d = 0
            for k in range(n):
                if A[i, k] != B[j, k]:
                    d += 1
                    if d >= best:
                        break
            if d < best:
                best = d
    return best


def span_weight_histogram(const uint8_t[:, ::1] G, const uint8_t[:, ::1] add,
                          const uint8_t[:, ::1] mul):
    """Weight histogram of all q**k codewords spanned by the rows of G.

    Codewords are visited in base-q counter order over coefficient vectors;
    each step updates the running word by one row difference, so the cost is
    amortised O(n) per codeword.
    """
    cdef Py_ssize_t k = G.shape[0]
    cdef Py_ssize_t n = G.shape[1]
    cdef Py_ssize_t q = add.shape[0]
    hist_np = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] hist = hist_np
    if k == 0:
        hist[0] = 1
        return hist_np
    # step[j, c, :] = (c+1)*G[j] - c*G[j], and wrap[j] = -(q-1)*G[j]
    neg_np = np.empty(q, dtype=np.uint8)
    cdef uint8_t[::1] neg = neg_np
    cdef Py_ssize_t a, b, c, j, pos
    for a in range(q):
        for b in range(q):
            if add[a, b] == 0:
                neg[a] = <uint8_t>b
    step_np = np.zeros((k, q, n), dtype=np.uint8)
    cdef uint8_t[:, :, ::1] step = step_np
    cdef uint8_t cur, nxt
    for j in range(k):
        for c in range(q):
            cur = <uint8_t>c
            nxt = <uint8_t>((c + 1) % q)
            for pos in range(n):
                step[j, c, pos] = add[mul[nxt, G[j, pos]], neg[mul[cur, G[j, pos]]]]
    word_np = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] word = word_np
    coef_np = np.zeros(k, dtype=np.int64)
    cdef int64_t[::1] coef = coef_np
    cdef int w
    hist[0] += 1
    while True:
        j = k - 1
        while j >= 0 and coef[j] == q - 1:
            for pos in range(n):
                word[pos] = add[word[pos], step[j, q - 1, pos]]
            coef[j] = 0
            j -= 1
        if j < 0:
            break
        for pos in range(n):
            word[pos] = add[word[pos], step[j, coef[j], pos]]
        coef[j] += 1
        w = 0
        for pos in range(n):
            if word[pos] != 0:
                w += 1
        hist[w] += 1
    return hist_np
