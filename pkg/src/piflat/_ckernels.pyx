# cython: language_level=3
"""Compiled twin of ``piflat._pykernels`` (same signatures, same results)."""


def add(dict a, dict b):
    cdef dict r
    cdef object m, c, v
    if len(a) < len(b):
        a, b = b, a
    r = a.copy()
    for m, c in b.items():
        v = r.get(m)
        if v is None:
            r[m] = c
        else:
            v = v + c
            if v:
                r[m] = v
            else:
                del r[m]
    return r


def sub(dict a, dict b):
    cdef dict r = a.copy()
    cdef object m, c, v
    for m, c in b.items():
        v = r.get(m)
        if v is None:
            r[m] = -c
        else:
            v = v - c
            if v:
                r[m] = v
            else:
                del r[m]
    return r


def neg(dict a):
    cdef dict r = {}
    cdef object m, c
    for m, c in a.items():
        r[m] = -c
    return r


def scale(dict a, object c):
    cdef dict r = {}
    cdef object m, v
    if not c:
        return r
    for m, v in a.items():
        r[m] = v * c
    return r


def mul_term(dict a, object mono, object c):
    cdef dict r = {}
    cdef object m, v
    if not c:
        return r
    for m, v in a.items():
        r[m + mono] = v * c
    return r


def mul(dict a, dict b):
    cdef dict r = {}
    cdef dict out = {}
    cdef list bl
    cdef object ma, ca, mb, cb, m, v
    if len(a) > len(b):
        a, b = b, a
    bl = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bl:
            m = ma + mb
            v = r.get(m)
            if v is None:
                r[m] = ca * cb
            else:
                r[m] = v + ca * cb
    for m, v in r.items():
        if v:
            out[m] = v
    return out


def divexact(dict a, dict b, object guard):
    cdef object lm = max(b)
    cdef object lc = b[lm]
    cdef list rest = [(m, c) for m, c in b.items() if m != lm]
    cdef dict rem = a.copy()
    cdef dict q = {}
    cdef object m, qm, qc, mb, cb, k, v
    while rem:
        m = max(rem)
        if ((m | guard) - lm) & guard != guard:
            return None
        qm = m - lm
        qc = rem.pop(m) / lc
        q[qm] = qc
        for mb, cb in rest:
            k = mb + qm
            v = rem.get(k)
            if v is None:
                rem[k] = -qc * cb
            else:
                v = v - qc * cb
                if v:
                    rem[k] = v
                else:
                    del rem[k]
    return q
