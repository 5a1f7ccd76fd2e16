"""Pure-Python convolution kernel; fallback twin of the compiled module.

Both kernels operate on plain lists of Python ints (arbitrary precision)
and skip zero entries, so sparse inputs (theta series, eta products) cost
O(nnz * prec) instead of O(prec^2).
"""

BACKEND = "python"


def convolve(a, b, prec):
    """Truncated Cauchy product of two int lists, length exactly `prec`."""
    if len([x for x in b if x]) < len([x for x in a if x]):
        a, b = b, a
    out = [0] * prec
    nb = len(b)
    for i in range(min(len(a), prec)):
        ai = a[i]
        if not ai:
            continue
        jmax = min(nb, prec - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def invert_unit(a, prec):
    """Inverse of an int series with constant term +-1, truncated at `prec`.

    The result is again an int list: with a[0] in {1, -1} the recursion
    g[n] = -a[0] * sum_{k>=1} a[k] g[n-k] never leaves the integers.
    """
    a0 = a[0]
    if a0 not in (1, -1):
        raise ValueError("constant term must be a unit in Z")
    nz = [(k, a[k]) for k in range(1, min(len(a), prec)) if a[k]]
    g = [0] * prec
    g[0] = a0
    for n in range(1, prec):
        s = 0
        for k, ak in nz:
            if k > n:
                break
            s += ak * g[n - k]
        if s:
            g[n] = -a0 * s
    return g
