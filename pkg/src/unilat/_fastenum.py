"""Compiled Fincke-Pohst kernel (numba). Same tree and output as the
pure-Python kernel in ``enumeration``; imported only when numba is present."""

import numpy as np
from numba import njit


@njit(cache=True)
def _run(q, mu, radius, center, symmetric, budget, out):
    """Fill ``out`` with candidate coefficient rows.

    Returns ``(count, nodes)``; ``count == -1`` means the budget ran out and
    ``count == -2`` means ``out`` is too small.
    """
    n = q.shape[0]
    x = np.zeros(n, np.int64)
    y = np.zeros(n)
    c = np.zeros(n)
    hi = np.zeros(n, np.int64)
    rem = np.zeros(n + 1)
    top = np.zeros(n, np.bool_)
    rem[n] = radius
    top[n - 1] = symmetric
    count = 0
    nodes = 0
    i = n - 1
    descend = True
    while True:
        if descend:
            ci = center[i]
            for j in range(i + 1, n):
                ci -= mu[j, i] * y[j]
            c[i] = ci
            r = np.sqrt(rem[i + 1] / q[i]) if rem[i + 1] > 0 else 0.0
            lo = np.int64(np.ceil(ci - r))
            h = np.int64(np.floor(ci + r))
            if top[i] and lo < 0:
                lo = 0
            if i == 0:
                if top[i] and lo == 0:
                    lo = 1
                if h >= lo:
                    nodes += h - lo + 1
                    if count + h - lo + 1 > out.shape[0]:
                        return -2, nodes
                    for v in range(lo, h + 1):
                        out[count, 0] = v
                        for j in range(1, n):
                            out[count, j] = x[j]
                        count += 1
                if n == 1:
                    break
                i = 1
                descend = False
                continue
            hi[i] = h
            x[i] = lo - 1
            descend = False
        x[i] += 1
        if x[i] > hi[i]:
            x[i] = 0
            y[i] = 0.0
            i += 1
            if i == n:
                break
            continue
        nodes += 1
        if nodes > budget:
            return -1, nodes
        d = x[i] - c[i]
        rem[i] = rem[i + 1] - q[i] * d * d
        y[i] = x[i] - center[i]
        top[i - 1] = top[i] and x[i] == 0
        i -= 1
        descend = True
    return count, nodes


def kernel(q, cols, radius, center, symmetric, budget):
    n = len(q)
    mu = np.zeros((n, n))
    for i in range(n):
        for k, m in enumerate(cols[i]):
            mu[i + 1 + k, i] = m
    qa = np.asarray(q, dtype=np.float64)
    ca = np.asarray(center, dtype=np.float64)
    cap = 1 << 12
    while True:
        out = np.empty((cap, n), np.int64)
        count, nodes = _run(qa, mu, float(radius), ca, bool(symmetric), int(budget), out)
        if count == -2:
            cap *= 4
            continue
        if count == -1:
            return None, nodes
        return [tuple(r) for r in out[:count].tolist()], nodes
