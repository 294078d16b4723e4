"""Pure-Python factor kernels for the contraction engine.

A factor table maps a bit mask over its scope to a positive integer.
"""


def scatter(t, positions):
    """Move local bit ``i`` of every key to bit ``positions[i]``."""
    out = {}
    for m, v in t.items():
        s = 0
        i = 0
        while m:
            if m & 1:
                s |= 1 << positions[i]
            m >>= 1
            i += 1
        out[s] = v
    return out


def join(ta, tb, shared):
    """Pointwise product of two tables already scattered into one scope.

    ``shared`` masks the bits present in both scopes.
    """
    if len(ta) > len(tb):
        ta, tb = tb, ta
    buckets = {}
    for m, v in ta.items():
        k = m & shared
        lst = buckets.get(k)
        if lst is None:
            buckets[k] = [(m, v)]
        else:
            lst.append((m, v))
    res = {}
    for mb, vb in tb.items():
        lst = buckets.get(mb & shared)
        if lst is None:
            continue
        for ma, va in lst:
            key = ma | mb
            res[key] = res.get(key, 0) + va * vb
    return res


def marginalize(t, bit):
    """Sum out bit ``bit`` and close the gap it leaves."""
    low = (1 << bit) - 1
    res = {}
    for m, v in t.items():
        key = (m & low) | ((m >> (bit + 1)) << bit)
        res[key] = res.get(key, 0) + v
    return res
