"""Pure-Python dense kernels, used when the compiled extension is unavailable."""


def mul_trunc(a, b, n):
    """Coefficients 0..n-1 of the product of two dense coefficient lists."""
    if not a or not b or n <= 0:
        return []
    n = min(n, len(a) + len(b) - 1)
    if len(a) > len(b):
        a, b = b, a
    out = [0] * n
    lb = len(b)
    for i, ai in enumerate(a):
        if i >= n:
            break
        if not ai:
            continue
        stop = min(lb, n - i)
        for j in range(stop):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def inv_trunc(a, n):
    """First n coefficients of 1/a, where a[0] is +1 or -1."""
    a0 = a[0]
    if a0 not in (1, -1):
        raise ArithmeticError("leading coefficient must be a unit")
    out = [0] * n
    if n == 0:
        return out
    out[0] = a0
    la = len(a)
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                acc += ai * out[k - i]
        out[k] = -a0 * acc
    return out
