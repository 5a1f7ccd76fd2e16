# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled convolution kernel for truncated integer q-series.

Mirrors qmod._pycore exactly: lists of Python ints in, lists out.
Coefficients stay PyObject ints (they overflow machine words quickly),
so the win over the pure version is loop and indexing overhead.
"""

BACKEND = "cython"


def convolve(list a, list b, Py_ssize_t prec):
    """Truncated Cauchy product of two int lists, length exactly `prec`."""
    cdef Py_ssize_t i, j, jmax, na, nb, nza, nzb
    nza = 0
    for i in range(len(a)):
        if a[i]:
            nza += 1
    nzb = 0
    for i in range(len(b)):
        if b[i]:
            nzb += 1
    if nzb < nza:
        a, b = b, a
    cdef list out = [0] * prec
    na = len(a)
    nb = len(b)
    if na > prec:
        na = prec
    cdef object ai, bj
    for i in range(na):
        ai = a[i]
        if not ai:
            continue
        jmax = nb
        if jmax > prec - i:
            jmax = prec - i
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def invert_unit(list a, Py_ssize_t prec):
    """Inverse of an int series with constant term +-1, truncated at `prec`."""
    cdef object a0 = a[0]
    if a0 != 1 and a0 != -1:
        raise ValueError("constant term must be a unit in Z")
    cdef list ks = []
    cdef list vs = []
    cdef Py_ssize_t k, n, m, t
    for k in range(1, min(len(a), prec)):
        if a[k]:
            ks.append(k)
            vs.append(a[k])
    cdef list g = [0] * prec
    g[0] = a0
    m = len(ks)
    cdef object s
    for n in range(1, prec):
        s = 0
        for t in range(m):
            k = ks[t]
            if k > n:
                break
            s = s + vs[t] * g[n - k]
        if s:
            g[n] = -a0 * s
    return g
