# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled factor kernels; same contract as ``_kernel_py``.

Keys are bit masks that fit a C long long (scopes stay below 63 bits);
values are Python integers so products never overflow.
"""


def scatter(dict t, positions):
    cdef long long m, s
    cdef int i
    cdef list pos = list(positions)
    cdef int npos = len(pos)
    cdef long long[64] p
    for i in range(npos):
        p[i] = pos[i]
    out = {}
    for key, v in t.items():
        m = key
        s = 0
        i = 0
        while m:
            if m & 1:
                s |= (<long long>1) << p[i]
            m >>= 1
            i += 1
        out[s] = v
    return out


def join(dict ta, dict tb, long long shared):
    cdef long long m, k, mb
    cdef dict buckets = {}
    cdef dict res = {}
    cdef list lst
    cdef tuple item
    if len(ta) > len(tb):
        ta, tb = tb, ta
    for key, v in ta.items():
        m = key
        k = m & shared
        lst = buckets.get(k)
        if lst is None:
            buckets[k] = [(m, v)]
        else:
            lst.append((m, v))
    for key, vb in tb.items():
        mb = key
        lst = buckets.get(mb & shared)
        if lst is None:
            continue
        for item in lst:
            k = (<long long>item[0]) | mb
            prev = res.get(k)
            if prev is None:
                res[k] = item[1] * vb
            else:
                res[k] = prev + item[1] * vb
    return res


def marginalize(dict t, int bit):
    cdef long long low = ((<long long>1) << bit) - 1
    cdef long long m, k
    cdef dict res = {}
    for key, v in t.items():
        m = key
        k = (m & low) | ((m >> (bit + 1)) << bit)
        prev = res.get(k)
        if prev is None:
            res[k] = v
        else:
            res[k] = prev + v
    return res
